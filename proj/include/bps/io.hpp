#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bps/bnet.hpp"
#include "bps/control.hpp"
#include "bps/lba.hpp"
#include "bps/reach.hpp"
#include "bps/system.hpp"
#include "bps/translate.hpp"

namespace bps::io {

// All formats are line-based; '#' starts a comment, blank lines are ignored.

// .bps — alphabet, rules, optional evolution mode:
//   alphabet: a b
//   rule r1: {a,b} -> {a} | 1
//   quasimode: maxparallel
//   quasimode: { {r1,r2} {r2} }
//   quasimode: powerset(r3,r4) x singleton(r1,r2)
struct BpsFile {
  Bps system;
  std::optional<ModeSpec> mode;
};

BpsFile parse_bps(std::istream& in);
BpsFile parse_bps_file(const std::string& path);
std::string write_bps(const Bps& system, const std::optional<ModeSpec>& mode);

// .bn — vars plus one update function per variable:
//   vars: x y
//   fn x: !x & y
BoolNetwork parse_bn(std::istream& in);
BoolNetwork parse_bn_file(const std::string& path);
std::string write_bn(const BoolNetwork& f);

// .bcn — either explicit control inputs with formulas over vars ∪ controls,
// or an uncontrolled network plus a freeze line generating them:
//   vars: x y
//   controls: ux0 ux1 uy0 uy1
//   fn x: (!x & y) & ux0 | !ux1
// or
//   freeze: x y polarity=inactive
// `polarity_override` replaces the freeze line's polarity; it is an error
// for files declaring explicit controls.
Bcn parse_bcn(std::istream& in, std::optional<FreezePolarity> polarity_override = {});
Bcn parse_bcn_file(const std::string& path,
                   std::optional<FreezePolarity> polarity_override = {});
std::string write_bcn(const Bcn& b);

// Control-mode file — named relation or explicit pairs of control sets:
//   mode: any
// or
//   pairs:
//   {u1_1} -> {u1_1,u2_1}
ControlMode parse_control_mode(std::istream& in, const Bcn& b);
ControlMode parse_control_mode_file(const std::string& path, const Bcn& b);

// .lba — header lines then one transition per line:
//   states: q0 q1
//   tape: Zl B Zr a
//   input: a
//   output: a
//   markers: Zl B Zr
//   init: q0
//   final: q1
//   q0 a -> q0 B R
Lba parse_lba(std::istream& in);
Lba parse_lba_file(const std::string& path);

// .rs — species plus reactions (reactants / inhibitors -> products):
//   species: a b c
//   reaction r1: {a} / {b} -> {c}
//   reaction r2: {a} -> {c}
ReactionSystem parse_rs(std::istream& in);
ReactionSystem parse_rs_file(const std::string& path);

// Reachability problem sidecar (from/to as state specs, see below).
struct ProblemFile {
  std::string from, to;
};
ProblemFile parse_problem_file(const std::string& path);
std::string write_problem(const SymbolSet& from, const SymbolSet& to,
                          const Alphabet& alphabet);

// State specs: a bitstring in alphabet order, a brace set "{a,b}", or
// "formula:<expr>" (for target sets).
SymbolSet parse_state(std::string_view text, const Alphabet& alphabet);
std::vector<SymbolSet> parse_state_list(const std::vector<std::string>& specs,
                                        const Alphabet& alphabet);

// Witness JSON. States are bitstrings; controls are name arrays.
std::string reach_result_json(const ReachResult& r, const Bps& system);
std::string control_result_json(const ControlResult& r, const Bcn& b);

}  // namespace bps::io
