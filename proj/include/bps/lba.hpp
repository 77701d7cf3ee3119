#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bps/alphabet.hpp"
#include "bps/reach.hpp"

namespace bps {

enum class HeadMove { Left, Right, Stay };

struct LbaTransition {
  std::size_t next_state;
  std::size_t write;
  HeadMove move;
};

// Deterministic linear bounded automaton. The transition function is total
// on states x tape symbols and may never overwrite a boundary marker or
// move past it.
class Lba {
 public:
  struct Entry {
    std::string state, read, next_state, write;
    HeadMove move;
  };

  Lba(Alphabet states, Alphabet tape, std::vector<std::string> input_symbols,
      std::vector<std::string> output_symbols, std::string left_marker, std::string blank,
      std::string right_marker, std::string initial, std::string final_state,
      const std::vector<Entry>& transitions);

  const Alphabet& states() const { return states_; }
  const Alphabet& tape() const { return tape_; }
  const SymbolSet& input_symbols() const { return input_; }
  const SymbolSet& output_symbols() const { return output_; }
  std::size_t left_marker() const { return left_marker_; }
  std::size_t blank() const { return blank_; }
  std::size_t right_marker() const { return right_marker_; }
  std::size_t initial() const { return initial_; }
  std::size_t final_state() const { return final_; }

  const LbaTransition& delta(std::size_t state, std::size_t symbol) const;

  // Word over the input alphabet. Concatenated single characters when every
  // input symbol is one character, whitespace-separated names otherwise.
  std::vector<std::size_t> parse_word(std::string_view text) const;

 private:
  Alphabet states_;
  Alphabet tape_;
  SymbolSet input_, output_;
  std::size_t left_marker_, blank_, right_marker_;
  std::size_t initial_, final_;
  std::vector<LbaTransition> delta_;  // state-major table
};

// Tape cell 0 is the left marker, cell n+1 the right marker.
struct LbaConfig {
  std::vector<std::size_t> tape;
  std::size_t head = 0;
  std::size_t state = 0;

  friend bool operator==(const LbaConfig& a, const LbaConfig& b) {
    return a.tape == b.tape && a.head == b.head && a.state == b.state;
  }
};

struct LbaConfigHash {
  std::size_t operator()(const LbaConfig& c) const;
};

LbaConfig lba_initial_config(const Lba& m, const std::vector<std::size_t>& word);
LbaConfig lba_step(const Lba& m, const LbaConfig& c);

// Accepting configuration: final state, head on the left marker, all
// interior cells blank.
bool lba_accepting(const Lba& m, const LbaConfig& c);

// Direct simulation; a revisited configuration means the deterministic run
// loops and the word is rejected.
bool lba_accepts(const Lba& m, const std::vector<std::size_t>& word);

// Reachability instance simulating the run of m on the word. Symbols
// A_<v>_<j> place tape symbol v in cell j, C_<q>_<j> place the head in
// state q on cell j; each instruction becomes one rule per feasible cell.
ReachProblem lba_to_bps(const Lba& m, const std::vector<std::size_t>& word);

}  // namespace bps
