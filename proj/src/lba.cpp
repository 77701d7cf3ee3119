#include "bps/lba.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "bps/error.hpp"

namespace bps {

Lba::Lba(Alphabet states, Alphabet tape, std::vector<std::string> input_symbols,
         std::vector<std::string> output_symbols, std::string left_marker, std::string blank,
         std::string right_marker, std::string initial, std::string final_state,
         const std::vector<Entry>& transitions)
    : states_(std::move(states)), tape_(std::move(tape)) {
  left_marker_ = tape_.index_of(left_marker);
  blank_ = tape_.index_of(blank);
  right_marker_ = tape_.index_of(right_marker);
  if (left_marker_ == right_marker_ || left_marker_ == blank_ || blank_ == right_marker_)
    throw ModelError("markers and blank must be three distinct tape symbols");
  initial_ = states_.index_of(initial);
  final_ = states_.index_of(final_state);

  input_ = SymbolSet(tape_.size());
  for (const auto& s : input_symbols) input_.set(tape_.index_of(s));
  output_ = SymbolSet(tape_.size());
  for (const auto& s : output_symbols) output_.set(tape_.index_of(s));
  for (std::size_t special : {left_marker_, blank_, right_marker_})
    if (input_.test(special) || output_.test(special))
      throw ModelError("input and output alphabets may not contain markers or the blank");

  delta_.assign(states_.size() * tape_.size(), LbaTransition{});
  std::vector<bool> defined(delta_.size(), false);
  for (const auto& e : transitions) {
    std::size_t q = states_.index_of(e.state);
    std::size_t v = tape_.index_of(e.read);
    std::size_t slot = q * tape_.size() + v;
    if (defined[slot])
      throw ModelError("duplicate transition for (" + e.state + ", " + e.read + ")");
    defined[slot] = true;
    delta_[slot] = {states_.index_of(e.next_state), tape_.index_of(e.write), e.move};
  }
  for (std::size_t q = 0; q < states_.size(); ++q)
    for (std::size_t v = 0; v < tape_.size(); ++v)
      if (!defined[q * tape_.size() + v])
        throw ModelError("transition function is not total: missing (" + states_.name(q) +
                         ", " + tape_.name(v) + ")");

  // Boundary discipline: markers are rewritten to themselves and the head
  // never moves beyond them.
  for (std::size_t q = 0; q < states_.size(); ++q) {
    const auto& at_left = delta(q, left_marker_);
    if (at_left.write != left_marker_ || at_left.move == HeadMove::Left)
      throw ModelError("state '" + states_.name(q) +
                       "' violates the left-marker discipline");
    const auto& at_right = delta(q, right_marker_);
    if (at_right.write != right_marker_ || at_right.move == HeadMove::Right)
      throw ModelError("state '" + states_.name(q) +
                       "' violates the right-marker discipline");
  }
}

const LbaTransition& Lba::delta(std::size_t state, std::size_t symbol) const {
  return delta_.at(state * tape_.size() + symbol);
}

std::vector<std::size_t> Lba::parse_word(std::string_view text) const {
  bool single_char = true;
  input_.for_each([&](std::size_t i) {
    if (tape_.name(i).size() != 1) single_char = false;
  });
  std::vector<std::size_t> word;
  if (single_char && text.find(' ') == std::string_view::npos) {
    for (char c : text) {
      auto i = tape_.find(std::string(1, c));
      if (!i || !input_.test(*i))
        throw ModelError("'" + std::string(1, c) + "' is not an input symbol");
      word.push_back(*i);
    }
  } else {
    std::size_t pos = 0;
    while (pos < text.size()) {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
      std::size_t start = pos;
      while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
      if (start == pos) break;
      std::string name(text.substr(start, pos - start));
      auto i = tape_.find(name);
      if (!i || !input_.test(*i))
        throw ModelError("'" + name + "' is not an input symbol");
      word.push_back(*i);
    }
  }
  return word;
}

std::size_t LbaConfigHash::operator()(const LbaConfig& c) const {
  std::size_t h = 0xcbf29ce484222325ull;
  auto mix = [&](std::size_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull;
    h *= 0x100000001b3ull;
  };
  mix(c.head);
  mix(c.state);
  for (auto v : c.tape) mix(v);
  return h;
}

LbaConfig lba_initial_config(const Lba& m, const std::vector<std::size_t>& word) {
  for (std::size_t v : word)
    if (!m.input_symbols().test(v))
      throw ModelError("word contains a symbol outside the input alphabet");
  LbaConfig c;
  c.tape.push_back(m.left_marker());
  c.tape.insert(c.tape.end(), word.begin(), word.end());
  c.tape.push_back(m.right_marker());
  c.head = 1;
  c.state = m.initial();
  return c;
}

LbaConfig lba_step(const Lba& m, const LbaConfig& c) {
  if (c.head >= c.tape.size()) throw ModelError("malformed configuration");
  const LbaTransition& t = m.delta(c.state, c.tape[c.head]);
  LbaConfig next = c;
  next.tape[c.head] = t.write;
  next.state = t.next_state;
  switch (t.move) {
    case HeadMove::Left: next.head = c.head - 1; break;
    case HeadMove::Right: next.head = c.head + 1; break;
    case HeadMove::Stay: break;
  }
  return next;
}

bool lba_accepting(const Lba& m, const LbaConfig& c) {
  if (c.state != m.final_state() || c.head != 0) return false;
  for (std::size_t j = 1; j + 1 < c.tape.size(); ++j)
    if (c.tape[j] != m.blank()) return false;
  return true;
}

bool lba_accepts(const Lba& m, const std::vector<std::size_t>& word) {
  LbaConfig c = lba_initial_config(m, word);
  std::unordered_set<LbaConfig, LbaConfigHash> visited;
  for (;;) {
    if (lba_accepting(m, c)) return true;
    if (!visited.insert(c).second) return false;  // deterministic loop
    c = lba_step(m, c);
  }
}

ReachProblem lba_to_bps(const Lba& m, const std::vector<std::size_t>& word) {
  LbaConfig initial = lba_initial_config(m, word);
  std::size_t n = word.size();
  std::size_t cells = n + 2;

  std::vector<std::string> names;
  names.reserve(cells * (m.tape().size() + m.states().size()));
  for (std::size_t v = 0; v < m.tape().size(); ++v)
    for (std::size_t j = 0; j < cells; ++j)
      names.push_back("A_" + m.tape().name(v) + "_" + std::to_string(j));
  for (std::size_t q = 0; q < m.states().size(); ++q)
    for (std::size_t j = 0; j < cells; ++j)
      names.push_back("C_" + m.states().name(q) + "_" + std::to_string(j));
  Alphabet alphabet(std::move(names));
  std::size_t total = alphabet.size();

  auto cell = [&](std::size_t v, std::size_t j) { return v * cells + j; };
  auto head = [&](std::size_t q, std::size_t j) {
    return m.tape().size() * cells + q * cells + j;
  };

  std::vector<Rule> rules;
  for (std::size_t q = 0; q < m.states().size(); ++q) {
    for (std::size_t v = 0; v < m.tape().size(); ++v) {
      const LbaTransition& t = m.delta(q, v);
      std::size_t j_lo = t.move == HeadMove::Left ? 1 : 0;
      std::size_t j_hi = t.move == HeadMove::Right ? cells - 2 : cells - 1;
      if (cells < 2 || j_lo > j_hi) continue;
      for (std::size_t j = j_lo; j <= j_hi; ++j) {
        std::size_t j_next = t.move == HeadMove::Left    ? j - 1
                             : t.move == HeadMove::Right ? j + 1
                                                         : j;
        Rule r;
        r.id = "t_" + m.states().name(q) + "_" + m.tape().name(v) + "_" + std::to_string(j);
        r.lhs = SymbolSet::of(total, {cell(v, j), head(q, j)});
        r.rhs = SymbolSet::of(total, {cell(t.write, j), head(t.next_state, j_next)});
        r.guard = Formula::constant(true);
        rules.push_back(std::move(r));
      }
    }
  }
  Bps bps(std::move(alphabet), std::move(rules));

  SymbolSet start(total);
  for (std::size_t j = 0; j < cells; ++j) start.set(cell(initial.tape[j], j));
  start.set(head(m.initial(), 1));

  SymbolSet target(total);
  target.set(cell(m.left_marker(), 0));
  target.set(cell(m.right_marker(), cells - 1));
  for (std::size_t j = 1; j + 1 < cells; ++j) target.set(cell(m.blank(), j));
  target.set(head(m.final_state(), 0));

  QuasiMode quasimode = QuasiMode::singleton(bps.all_rules());
  return ReachProblem{std::move(bps), ModeSpec::from_quasimode(std::move(quasimode)),
                      {start}, TargetSpec::states({target})};
}

}  // namespace bps
