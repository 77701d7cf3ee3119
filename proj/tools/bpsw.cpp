// Command-line workbench: translate Boolean networks, controlled networks,
// reaction systems and bounded automata into guarded set-rewriting systems,
// decide reachability and sequential-controllability queries, and export
// witnesses and transition graphs.

#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bps/control.hpp"
#include "bps/error.hpp"
#include "bps/io.hpp"
#include "bps/lba.hpp"
#include "bps/reach.hpp"
#include "bps/translate.hpp"

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

struct StateArgs {
  std::vector<std::string> from;
  std::vector<std::string> to;
};

// Expands @file entries and splits top-level commas (commas inside braces
// belong to set literals).
std::vector<std::string> expand_specs(const std::vector<std::string>& specs) {
  std::vector<std::string> out;
  for (const auto& spec : specs) {
    if (!spec.empty() && spec[0] == '@') {
      std::ifstream in(spec.substr(1));
      if (!in) throw bps::Error("cannot open '" + spec.substr(1) + "'");
      std::string line;
      while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
          line.pop_back();
        std::size_t b = 0;
        while (b < line.size() && std::isspace(static_cast<unsigned char>(line[b]))) ++b;
        if (b < line.size()) out.push_back(line.substr(b));
      }
      continue;
    }
    int depth = 0;
    std::string current;
    for (char c : spec) {
      if (c == '{') ++depth;
      if (c == '}') --depth;
      if (c == ',' && depth == 0) {
        if (!current.empty()) out.push_back(current);
        current.clear();
      } else {
        current += c;
      }
    }
    if (!current.empty()) out.push_back(current);
  }
  return out;
}

std::vector<bps::SymbolSet> parse_states(const std::vector<std::string>& specs,
                                         const bps::Alphabet& alphabet) {
  return bps::io::parse_state_list(expand_specs(specs), alphabet);
}

// Target specs additionally accept formula:<expr>.
bps::TargetSpec parse_targets(const std::vector<std::string>& specs,
                              const bps::Alphabet& alphabet) {
  auto expanded = expand_specs(specs);
  std::vector<bps::Formula> formulas;
  std::vector<bps::SymbolSet> states;
  for (const auto& s : expanded) {
    if (s.rfind("formula:", 0) == 0)
      formulas.push_back(bps::parse_formula(s.substr(8), alphabet));
    else
      states.push_back(bps::io::parse_state(s, alphabet));
  }
  if (!formulas.empty()) {
    for (const auto& st : states)
      formulas.push_back(bps::exact_set_formula(st, bps::SymbolSet::full(alphabet.size())));
    return bps::TargetSpec::formula(bps::Formula::any_of(std::move(formulas)));
  }
  return bps::TargetSpec::states(std::move(states));
}

bps::BooleanMode parse_mode_flag(const std::string& mode, const bps::Alphabet& vars) {
  if (mode == "sync") return bps::BooleanMode::synchronous();
  if (mode == "async") return bps::BooleanMode::asynchronous();
  if (mode.rfind("explicit:", 0) == 0) {
    std::ifstream in(mode.substr(9));
    if (!in) throw bps::Error("cannot open '" + mode.substr(9) + "'");
    std::vector<bps::SymbolSet> blocks;
    std::string line;
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      bool blank = true;
      for (char c : line)
        if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
      if (blank) continue;
      blocks.push_back(bps::io::parse_state(line, vars));
    }
    return bps::BooleanMode::explicit_blocks(std::move(blocks));
  }
  throw bps::Error("mode must be sync, async or explicit:<file>");
}

bps::ControlMode parse_control_mode_flag(const std::string& spec, const bps::Bcn& bcn) {
  if (spec == "any") return bps::ControlMode::any();
  if (spec == "tcs") return bps::ControlMode::tcs();
  if (spec == "acs") return bps::ControlMode::acs();
  return bps::io::parse_control_mode_file(spec, bcn);
}

std::optional<bps::FreezePolarity> parse_polarity_flag(const CLI::Option* opt,
                                                       const std::string& value) {
  if (!opt->count()) return std::nullopt;
  if (value == "inactive") return bps::FreezePolarity::InactiveHigh;
  if (value == "active") return bps::FreezePolarity::ActiveHigh;
  throw bps::Error("polarity must be 'inactive' or 'active'");
}

bps::GuardStyle parse_guard_style_flag(const std::string& value) {
  if (value == "exact") return bps::GuardStyle::ExactGuard;
  if (value == "paper") return bps::GuardStyle::Literal;
  throw bps::Error("guard style must be 'exact' or 'paper'");
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw bps::Error("cannot write '" + path + "'");
  out << content;
}

std::string describe_reach(const bps::ReachResult& result, const bps::Bps& system) {
  std::string out;
  out += result.reachable ? "reachable: yes\n" : "reachable: no\n";
  for (const auto& w : result.witnesses) {
    out += "start " + w.start.to_bitstring() + ": ";
    switch (w.status) {
      case bps::WitnessStatus::Unreachable: out += "no target reachable\n"; break;
      case bps::WitnessStatus::Skipped: out += "skipped\n"; break;
      case bps::WitnessStatus::Reached:
        out += "reached " + w.final_state().to_bitstring() + " in " +
               std::to_string(w.steps.size()) + " step(s)\n";
        for (const auto& s : w.steps)
          out += "  " + system.format_rule_set(s.fired) + " -> " +
                 s.state.to_bitstring() + "\n";
        break;
    }
  }
  return out;
}

std::string describe_control(const bps::ControlResult& result, const bps::Bcn& bcn) {
  std::string out;
  out += result.controllable ? "controllable: yes\n" : "controllable: no\n";
  if (!result.diagnostic.empty()) out += "note: " + result.diagnostic + "\n";
  for (const auto& w : result.witnesses) {
    out += "start " + w.start.to_bitstring() + ": ";
    switch (w.status) {
      case bps::WitnessStatus::Unreachable: out += "no target reachable\n"; break;
      case bps::WitnessStatus::Skipped: out += "skipped\n"; break;
      case bps::WitnessStatus::Reached:
        out += "reached " + w.final_state().to_bitstring() + " in " +
               std::to_string(w.steps.size()) + " step(s)\n";
        for (const auto& s : w.steps)
          out += "  " + bcn.alphabet().format_set(s.control) + " -> " +
                 s.state.to_bitstring() + "\n";
        break;
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workbench for guarded set-rewriting systems: reachability and "
               "sequential controllability of Boolean (control) networks"};
  app.require_subcommand(1);

  std::string bps_path, bn_path, bcn_path, rs_path, lba_path;
  std::string out_path, problem_out, problem_in;
  std::string mode_flag = "sync", control_mode_flag = "any", format = "text";
  std::string polarity_flag = "inactive", guard_style_flag = "exact", witness_flag = "all";
  std::string input_word;
  StateArgs states;
  std::vector<std::string> roots;
  std::size_t limit_symbols = 22, limit_vars = 20, limit_controls = 12;
  unsigned seed = 0;
  bool crosscheck = false;
  bool allow_conflicting = false;

  app.add_option("--seed", seed,
                 "seed for randomized tooling (solver output is deterministic)");

  auto* reach = app.add_subcommand("reach", "decide reachability on a .bps system");
  reach->add_option("--bps", bps_path, "system file")->required();
  reach->add_option("--from", states.from, "start state(s)");
  reach->add_option("--to", states.to, "target state(s) or formula:<expr>");
  reach->add_option("--problem", problem_in, "problem file with from:/to: lines");
  reach->add_option("--limit-symbols", limit_symbols, "explicit-search alphabet limit");
  reach->add_option("--format", format, "text|json");
  reach->add_option("--witness", witness_flag, "all|first");
  reach->add_option("-o,--output", out_path, "output file (default stdout)");

  auto* cofase = app.add_subcommand("cofase", "decide control-sequence reachability");
  cofase->add_option("--bcn", bcn_path, "controlled network file")->required();
  cofase->add_option("--polarity", polarity_flag,
                     "freeze polarity override for freeze-form files: inactive|active");
  cofase->add_option("--from", states.from, "start state(s)")->required();
  cofase->add_option("--to", states.to, "target state(s)")->required();
  cofase->add_flag("--allow-conflicting", allow_conflicting,
                   "permit controls freezing a variable in both directions");
  cofase->add_option("--limit-vars", limit_vars, "variable limit");
  cofase->add_option("--limit-controls", limit_controls, "control input limit");
  cofase->add_option("--format", format, "text|json");
  cofase->add_option("--witness", witness_flag, "all|first");
  cofase->add_option("-o,--output", out_path, "output file (default stdout)");

  auto* seqcontrol =
      app.add_subcommand("seqcontrol", "decide sequential controllability");
  seqcontrol->add_option("--bcn", bcn_path, "controlled network file")->required();
  seqcontrol->add_option("--mode", mode_flag, "sync|async|explicit:<file>");
  seqcontrol->add_option("--control-mode", control_mode_flag, "any|tcs|acs|<file>");
  seqcontrol->add_option("--polarity", polarity_flag,
                         "freeze polarity override for freeze-form files: inactive|active");
  seqcontrol->add_option("--guard-style", guard_style_flag,
                         "crosscheck composite guards: exact|paper");
  seqcontrol->add_option("--from", states.from, "start state(s)")->required();
  seqcontrol->add_option("--to", states.to, "target state(s)")->required();
  seqcontrol->add_flag("--crosscheck", crosscheck,
                       "also solve via composite reachability and compare");
  seqcontrol->add_flag("--allow-conflicting", allow_conflicting,
                       "permit controls freezing a variable in both directions");
  seqcontrol->add_option("--limit-vars", limit_vars, "variable limit");
  seqcontrol->add_option("--limit-controls", limit_controls, "control input limit");
  seqcontrol->add_option("--format", format, "text|json");
  seqcontrol->add_option("--witness", witness_flag, "all|first");
  seqcontrol->add_option("-o,--output", out_path, "output file (default stdout)");

  auto* translate = app.add_subcommand("translate", "translate a model to .bps");
  translate->require_subcommand(1);
  auto* tr_bn = translate->add_subcommand("bn", "Boolean network");
  tr_bn->add_option("--bn", bn_path, "network file")->required();
  tr_bn->add_option("--mode", mode_flag, "sync|async|explicit:<file>");
  tr_bn->add_option("-o,--output", out_path, "output file (default stdout)");
  auto* tr_bcn = translate->add_subcommand("bcn", "controlled network with free controls");
  tr_bcn->add_option("--bcn", bcn_path, "controlled network file")->required();
  tr_bcn->add_option("--mode", mode_flag, "sync|async|explicit:<file>");
  tr_bcn->add_option("--polarity", polarity_flag,
                     "freeze polarity override for freeze-form files: inactive|active");
  tr_bcn->add_option("-o,--output", out_path, "output file (default stdout)");
  auto* tr_rs = translate->add_subcommand("rs", "reaction system");
  tr_rs->add_option("--rs", rs_path, "reaction system file")->required();
  tr_rs->add_option("-o,--output", out_path, "output file (default stdout)");
  auto* tr_lba = translate->add_subcommand("lba", "bounded automaton run");
  tr_lba->add_option("--lba", lba_path, "automaton file")->required();
  tr_lba->add_option("--input", input_word, "input word")->required();
  tr_lba->add_option("-o,--output", out_path, "output file (default stdout)");
  tr_lba->add_option("--problem", problem_out, "also write a from:/to: problem file");

  auto* graph = app.add_subcommand("graph", "export the reachable transition graph");
  graph->add_option("--bps", bps_path, "system file")->required();
  graph->add_option("--roots", roots, "root state(s), or 'all'")->required();
  graph->add_option("--limit-symbols", limit_symbols, "explicit-search alphabet limit");
  graph->add_option("--format", format, "dot");
  graph->add_option("-o,--output", out_path, "output file (default stdout)");

  auto* lba_cmd = app.add_subcommand("lba", "work with bounded automata");
  lba_cmd->require_subcommand(1);
  auto* lba_run = lba_cmd->add_subcommand("run", "simulate an automaton on a word");
  lba_run->add_option("--lba", lba_path, "automaton file")->required();
  lba_run->add_option("--input", input_word, "input word")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (reach->parsed()) {
      bps::io::BpsFile file = bps::io::parse_bps_file(bps_path);
      if (!file.mode)
        throw bps::Error("the system file declares no quasimode; add a quasimode line");
      if (!problem_in.empty()) {
        auto prob = bps::io::parse_problem_file(problem_in);
        if (states.from.empty()) states.from = {prob.from};
        if (states.to.empty()) states.to = {prob.to};
      }
      if (states.from.empty() || states.to.empty())
        throw bps::Error("reach needs --from and --to (or --problem)");
      bps::ReachProblem problem{file.system, *file.mode,
                                parse_states(states.from, file.system.alphabet()),
                                parse_targets(states.to, file.system.alphabet())};
      bps::ReachOptions options;
      options.max_symbols = limit_symbols;
      options.stop_on_first_failure = witness_flag == "first";
      auto result = bps::solve_reach(problem, options);
      write_output(out_path, format == "json"
                                 ? bps::io::reach_result_json(result, file.system)
                                 : describe_reach(result, file.system));
      return result.reachable ? kExitYes : kExitNo;
    }

    if (cofase->parsed()) {
      bps::Bcn bcn = bps::io::parse_bcn_file(
          bcn_path, parse_polarity_flag(cofase->get_option("--polarity"), polarity_flag));
      bps::Alphabet vars = bcn.var_alphabet();
      bps::CofaseProblem problem{bcn, parse_states(states.from, vars),
                                 parse_states(states.to, vars)};
      bps::ControlOptions options;
      options.max_vars = limit_vars;
      options.max_controls = limit_controls;
      options.stop_on_first_failure = witness_flag == "first";
      options.allow_conflicting_controls = allow_conflicting;
      auto result = bps::solve_cofase(problem, options);
      write_output(out_path, format == "json" ? bps::io::control_result_json(result, bcn)
                                              : describe_control(result, bcn));
      return result.controllable ? kExitYes : kExitNo;
    }

    if (seqcontrol->parsed()) {
      bps::Bcn bcn = bps::io::parse_bcn_file(
          bcn_path,
          parse_polarity_flag(seqcontrol->get_option("--polarity"), polarity_flag));
      bps::Alphabet vars = bcn.var_alphabet();
      bps::SeqControlProblem problem{bcn, parse_mode_flag(mode_flag, vars),
                                     parse_control_mode_flag(control_mode_flag, bcn),
                                     parse_states(states.from, vars),
                                     parse_states(states.to, vars)};
      bps::ControlOptions options;
      options.max_vars = limit_vars;
      options.max_controls = limit_controls;
      options.stop_on_first_failure = witness_flag == "first";
      options.allow_conflicting_controls = allow_conflicting;
      auto result = bps::solve_seqcontrol(problem, options);
      std::string text = format == "json" ? bps::io::control_result_json(result, bcn)
                                          : describe_control(result, bcn);
      if (crosscheck) {
        auto report = bps::crosscheck_via_composite(
            problem, options, parse_guard_style_flag(guard_style_flag));
        text += "crosscheck: direct=" + std::string(report.direct_answer ? "yes" : "no") +
                " composite=" + std::string(report.composite_answer ? "yes" : "no") +
                " agree=" + std::string(report.agree ? "yes" : "no") + "\n";
        if (!report.agree) {
          write_output(out_path, text);
          return kExitError;
        }
      }
      write_output(out_path, text);
      return result.controllable ? kExitYes : kExitNo;
    }

    if (tr_bn->parsed()) {
      bps::BoolNetwork f = bps::io::parse_bn_file(bn_path);
      bps::Bps system = bps::bn_to_bps(f);
      bps::ModeSpec mode = bps::ModeSpec::from_quasimode(
          bps::boolean_mode_to_quasimode(parse_mode_flag(mode_flag, f.vars), system));
      write_output(out_path, bps::io::write_bps(system, mode));
      return kExitYes;
    }

    if (tr_bcn->parsed()) {
      bps::Bcn bcn = bps::io::parse_bcn_file(
          bcn_path, parse_polarity_flag(tr_bcn->get_option("--polarity"), polarity_flag));
      auto composite =
          bps::bcn_to_composite(bcn, parse_mode_flag(mode_flag, bcn.var_alphabet()));
      write_output(out_path, bps::io::write_bps(composite.bps,
                                                bps::ModeSpec::from_quasimode(
                                                    composite.quasimode)));
      return kExitYes;
    }

    if (tr_rs->parsed()) {
      bps::ReactionSystem rs = bps::io::parse_rs_file(rs_path);
      write_output(out_path, bps::io::write_bps(bps::rs_to_bps(rs),
                                                bps::ModeSpec::max_parallel()));
      return kExitYes;
    }

    if (tr_lba->parsed()) {
      bps::Lba machine = bps::io::parse_lba_file(lba_path);
      auto problem = bps::lba_to_bps(machine, machine.parse_word(input_word));
      write_output(out_path, bps::io::write_bps(problem.bps, problem.mode));
      if (!problem_out.empty())
        write_output(problem_out,
                     bps::io::write_problem(problem.starts[0],
                                            problem.targets.target_states()[0],
                                            problem.bps.alphabet()));
      return kExitYes;
    }

    if (graph->parsed()) {
      bps::io::BpsFile file = bps::io::parse_bps_file(bps_path);
      if (!file.mode)
        throw bps::Error("the system file declares no quasimode; add a quasimode line");
      std::vector<bps::SymbolSet> root_states;
      if (roots.size() == 1 && roots[0] == "all") {
        std::size_t n = file.system.alphabet().size();
        if (n > limit_symbols)
          throw bps::Error("'all' roots would enumerate 2^" + std::to_string(n) +
                           " states; raise --limit-symbols or list roots");
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v)
          root_states.push_back(bps::SymbolSet::from_value(n, v));
      } else {
        root_states = parse_states(roots, file.system.alphabet());
      }
      bps::ReachOptions options;
      options.max_symbols = limit_symbols;
      auto g = bps::export_state_graph(file.system, *file.mode, root_states, options);
      write_output(out_path, bps::to_dot(g, file.system));
      return kExitYes;
    }

    if (lba_run->parsed()) {
      bps::Lba machine = bps::io::parse_lba_file(lba_path);
      bool accepted = bps::lba_accepts(machine, machine.parse_word(input_word));
      std::cout << (accepted ? "accepts\n" : "rejects\n");
      return accepted ? kExitYes : kExitNo;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
