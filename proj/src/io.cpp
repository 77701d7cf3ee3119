#include "bps/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bps/error.hpp"

namespace bps::io {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

// Meaningful lines of a stream, with their 1-based numbers.
std::vector<std::pair<std::size_t, std::string>> read_lines(std::istream& in) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (!t.empty()) out.emplace_back(no, std::move(t));
  }
  return out;
}

// "key: rest" split; returns false when the line has no key prefix.
bool key_line(const std::string& line, const std::string& key, std::string& rest) {
  if (line.size() < key.size() + 1) return false;
  if (line.compare(0, key.size(), key) != 0 || line[key.size()] != ':') return false;
  rest = trim(line.substr(key.size() + 1));
  return true;
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw ParseError(msg, line);
}

// "{a,b}" or "{}" -> names.
std::vector<std::string> parse_brace_list(std::string_view text, std::size_t line) {
  std::string t = trim(text);
  if (t.size() < 2 || t.front() != '{' || t.back() != '}')
    fail(line, "expected a set like {a,b}, got '" + t + "'");
  std::string inner = trim(std::string_view(t).substr(1, t.size() - 2));
  std::vector<std::string> names;
  std::size_t pos = 0;
  while (pos < inner.size()) {
    std::size_t comma = inner.find(',', pos);
    std::string name = trim(inner.substr(pos, comma == std::string::npos ? std::string::npos
                                                                         : comma - pos));
    if (name.empty()) fail(line, "empty name in set");
    names.push_back(std::move(name));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return names;
}

SymbolSet parse_symbol_set(std::string_view text, const Alphabet& alphabet,
                           std::size_t line) {
  SymbolSet s(alphabet.size());
  for (const auto& n : parse_brace_list(text, line)) {
    auto i = alphabet.find(n);
    if (!i) fail(line, "unknown symbol '" + n + "'");
    s.set(*i);
  }
  return s;
}

Formula parse_guard(std::string_view text, const Alphabet& alphabet, std::size_t line) {
  try {
    return parse_formula(text, alphabet);
  } catch (const ParseError& e) {
    throw ParseError(std::string(e.what()), line, e.col);
  }
}

// Splits a quasimode expression into product terms at top-level "x".
std::vector<std::string> split_product_terms(const std::string& text, std::size_t line) {
  std::vector<std::string> terms;
  int depth = 0;
  std::string current;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '{' || c == '(') ++depth;
    if (c == '}' || c == ')') --depth;
    bool boundary_before = i == 0 || std::isspace(static_cast<unsigned char>(text[i - 1]));
    bool boundary_after =
        i + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[i + 1]));
    if (depth == 0 && c == 'x' && boundary_before && boundary_after) {
      terms.push_back(trim(current));
      current.clear();
    } else {
      current += c;
    }
  }
  terms.push_back(trim(current));
  for (const auto& t : terms)
    if (t.empty()) fail(line, "empty term in quasimode expression");
  return terms;
}

RuleSet parse_rule_name_set(std::string_view text, const Bps& system, std::size_t line) {
  RuleSet rs(system.num_rules());
  for (const auto& n : parse_brace_list(text, line)) {
    auto i = system.find_rule(n);
    if (!i) fail(line, "unknown rule '" + n + "'");
    rs.set(*i);
  }
  return rs;
}

RuleSet parse_rule_arg_list(std::string_view args, const Bps& system, std::size_t line) {
  RuleSet rs(system.num_rules());
  std::string inner = trim(args);
  std::size_t pos = 0;
  while (pos < inner.size()) {
    std::size_t comma = inner.find(',', pos);
    std::string name = trim(inner.substr(pos, comma == std::string::npos ? std::string::npos
                                                                         : comma - pos));
    if (name.empty()) fail(line, "empty rule name");
    auto i = system.find_rule(name);
    if (!i) fail(line, "unknown rule '" + name + "'");
    rs.set(*i);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return rs;
}

QuasiMode parse_quasimode_term(const std::string& term, const Bps& system,
                               std::size_t line) {
  if (term.front() == '{') {
    // "{ {r1,r2} {r2} {} }" — explicit family
    std::string inner = trim(std::string_view(term).substr(1, term.size() - 2));
    if (term.back() != '}') fail(line, "unbalanced braces in quasimode");
    std::vector<RuleSet> elements;
    std::size_t pos = 0;
    while (pos < inner.size()) {
      while (pos < inner.size() && std::isspace(static_cast<unsigned char>(inner[pos])))
        ++pos;
      if (pos >= inner.size()) break;
      if (inner[pos] != '{') fail(line, "expected a rule set like {r1,r2}");
      std::size_t close = inner.find('}', pos);
      if (close == std::string::npos) fail(line, "unbalanced braces in quasimode");
      elements.push_back(
          parse_rule_name_set(inner.substr(pos, close - pos + 1), system, line));
      pos = close + 1;
    }
    return QuasiMode::explicit_family(system.num_rules(), std::move(elements));
  }
  auto paren = term.find('(');
  if (paren == std::string::npos || term.back() != ')')
    fail(line, "expected powerset(...), singleton(...) or { ... } in quasimode");
  std::string head = trim(term.substr(0, paren));
  std::string args = term.substr(paren + 1, term.size() - paren - 2);
  if (head == "powerset") return QuasiMode::powerset_of(parse_rule_arg_list(args, system, line));
  if (head == "singleton") return QuasiMode::singleton(parse_rule_arg_list(args, system, line));
  fail(line, "unknown quasimode family '" + head + "'");
}

ModeSpec parse_quasimode_line(const std::string& text, const Bps& system,
                              std::size_t line) {
  if (trim(text) == "maxparallel") return ModeSpec::max_parallel();
  auto terms = split_product_terms(text, line);
  QuasiMode q = parse_quasimode_term(terms[0], system, line);
  for (std::size_t i = 1; i < terms.size(); ++i)
    q = QuasiMode::dotted_product(std::move(q), parse_quasimode_term(terms[i], system, line));
  return ModeSpec::from_quasimode(std::move(q));
}

std::string write_quasimode(const QuasiMode& q, const Bps& system) {
  switch (q.kind()) {
    case QuasiMode::Kind::Explicit: {
      std::string out = "{";
      for (const auto& e : q.elements()) out += " " + system.format_rule_set(e);
      return out + " }";
    }
    case QuasiMode::Kind::Singleton:
    case QuasiMode::Kind::Powerset: {
      std::string out =
          q.kind() == QuasiMode::Kind::Singleton ? "singleton(" : "powerset(";
      bool first = true;
      for (const auto& id : system.rule_ids(q.rules())) {
        if (!first) out += ",";
        out += id;
        first = false;
      }
      return out + ")";
    }
    case QuasiMode::Kind::Product:
      return write_quasimode(q.left(), system) + " x " + write_quasimode(q.right(), system);
    case QuasiMode::Kind::Union: {
      // No concrete syntax for unions; expand.
      std::string out = "{";
      for (const auto& e : q.enumerate()) out += " " + system.format_rule_set(e);
      return out + " }";
    }
  }
  throw ModelError("unreachable quasimode kind");
}

std::ifstream open_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return in;
}

}  // namespace

BpsFile parse_bps(std::istream& in) {
  auto lines = read_lines(in);
  std::optional<Alphabet> alphabet;
  std::vector<Rule> rules;
  std::optional<std::pair<std::size_t, std::string>> quasimode_line;

  for (const auto& [no, line] : lines) {
    std::string rest;
    if (key_line(line, "alphabet", rest)) {
      if (alphabet) fail(no, "duplicate alphabet line");
      alphabet = Alphabet(split_words(rest));
      continue;
    }
    if (key_line(line, "quasimode", rest)) {
      if (quasimode_line) fail(no, "duplicate quasimode line");
      quasimode_line = {no, rest};
      continue;
    }
    if (line.rfind("rule ", 0) == 0) {
      if (!alphabet) fail(no, "rule before the alphabet line");
      // rule <id>: <lhs> -> <rhs> | <guard>
      std::string body = line.substr(5);
      auto colon = body.find(':');
      if (colon == std::string::npos) fail(no, "expected 'rule <id>: ...'");
      std::string id = trim(body.substr(0, colon));
      std::string def = body.substr(colon + 1);
      auto arrow = def.find("->");
      if (arrow == std::string::npos) fail(no, "expected '->' in rule");
      auto bar = def.find('|', arrow + 2);
      if (bar == std::string::npos) fail(no, "expected '| <guard>' in rule");
      Rule r;
      r.id = id;
      r.lhs = parse_symbol_set(def.substr(0, arrow), *alphabet, no);
      r.rhs = parse_symbol_set(def.substr(arrow + 2, bar - arrow - 2), *alphabet, no);
      r.guard = parse_guard(trim(def.substr(bar + 1)), *alphabet, no);
      rules.push_back(std::move(r));
      continue;
    }
    fail(no, "unrecognized line '" + line + "'");
  }
  if (!alphabet) throw ParseError("missing alphabet line");

  BpsFile out;
  try {
    out.system = Bps(*alphabet, std::move(rules));
  } catch (const ModelError& e) {
    throw ParseError(e.what());
  }
  if (quasimode_line)
    out.mode = parse_quasimode_line(quasimode_line->second, out.system, quasimode_line->first);
  return out;
}

BpsFile parse_bps_file(const std::string& path) {
  auto in = open_file(path);
  return parse_bps(in);
}

std::string write_bps(const Bps& system, const std::optional<ModeSpec>& mode) {
  std::string out = "alphabet:";
  for (const auto& n : system.alphabet().names()) out += " " + n;
  out += "\n";
  for (const auto& r : system.rules())
    out += "rule " + r.id + ": " + system.alphabet().format_set(r.lhs) + " -> " +
           system.alphabet().format_set(r.rhs) + " | " +
           r.guard.to_string(system.alphabet()) + "\n";
  if (mode) {
    out += "quasimode: ";
    out += mode->is_max_parallel() ? "maxparallel"
                                   : write_quasimode(mode->quasimode(), system);
    out += "\n";
  }
  return out;
}

namespace {

struct NetworkLines {
  std::vector<std::string> vars;
  std::vector<std::string> controls;
  std::vector<std::pair<std::string, std::pair<std::size_t, std::string>>> fns;
  std::optional<std::pair<std::size_t, std::string>> freeze;
};

NetworkLines read_network_lines(std::istream& in, bool allow_controls) {
  auto lines = read_lines(in);
  NetworkLines out;
  bool have_vars = false, have_controls = false;
  for (const auto& [no, line] : lines) {
    std::string rest;
    if (key_line(line, "vars", rest)) {
      if (have_vars) fail(no, "duplicate vars line");
      out.vars = split_words(rest);
      have_vars = true;
      continue;
    }
    if (allow_controls && key_line(line, "controls", rest)) {
      if (have_controls) fail(no, "duplicate controls line");
      out.controls = split_words(rest);
      have_controls = true;
      continue;
    }
    if (allow_controls && key_line(line, "freeze", rest)) {
      if (out.freeze) fail(no, "duplicate freeze line");
      out.freeze = {no, rest};
      continue;
    }
    if (line.rfind("fn ", 0) == 0) {
      std::string body = line.substr(3);
      auto colon = body.find(':');
      if (colon == std::string::npos) fail(no, "expected 'fn <var>: <formula>'");
      out.fns.emplace_back(trim(body.substr(0, colon)),
                           std::make_pair(no, trim(body.substr(colon + 1))));
      continue;
    }
    fail(no, "unrecognized line '" + line + "'");
  }
  if (!have_vars) throw ParseError("missing vars line");
  return out;
}

std::vector<Formula> parse_updates(const NetworkLines& nl, const Alphabet& full) {
  std::vector<std::optional<Formula>> by_var(nl.vars.size());
  Alphabet var_names((std::vector<std::string>(nl.vars)));
  for (const auto& [name, entry] : nl.fns) {
    auto i = var_names.find(name);
    if (!i) fail(entry.first, "'" + name + "' is not a declared variable");
    if (by_var[*i]) fail(entry.first, "duplicate update function for '" + name + "'");
    by_var[*i] = parse_guard(entry.second, full, entry.first);
  }
  std::vector<Formula> update;
  for (std::size_t i = 0; i < by_var.size(); ++i) {
    if (!by_var[i]) throw ParseError("missing update function for '" + nl.vars[i] + "'");
    update.push_back(*by_var[i]);
  }
  return update;
}

}  // namespace

BoolNetwork parse_bn(std::istream& in) {
  NetworkLines nl = read_network_lines(in, false);
  Alphabet vars(nl.vars);
  return BoolNetwork(vars, parse_updates(nl, vars));
}

BoolNetwork parse_bn_file(const std::string& path) {
  auto in = open_file(path);
  return parse_bn(in);
}

std::string write_bn(const BoolNetwork& f) {
  std::string out = "vars:";
  for (const auto& n : f.vars.names()) out += " " + n;
  out += "\n";
  for (std::size_t i = 0; i < f.vars.size(); ++i)
    out += "fn " + f.vars.name(i) + ": " + f.update[i].to_string(f.vars) + "\n";
  return out;
}

Bcn parse_bcn(std::istream& in, std::optional<FreezePolarity> polarity_override) {
  NetworkLines nl = read_network_lines(in, true);
  if (nl.freeze && !nl.controls.empty())
    throw ParseError("a .bcn file declares either controls or a freeze line, not both");
  if (polarity_override && !nl.freeze)
    throw ParseError("a polarity override needs a freeze-form .bcn file");

  if (nl.freeze) {
    Alphabet vars(nl.vars);
    BoolNetwork base(vars, parse_updates(nl, vars));
    auto words = split_words(nl.freeze->second);
    FreezePolarity polarity = FreezePolarity::InactiveHigh;
    SymbolSet controllable(vars.size());
    for (const auto& w : words) {
      std::string rest;
      if (w.rfind("polarity=", 0) == 0) {
        std::string p = w.substr(9);
        if (p == "inactive") polarity = FreezePolarity::InactiveHigh;
        else if (p == "active") polarity = FreezePolarity::ActiveHigh;
        else fail(nl.freeze->first, "polarity must be 'inactive' or 'active'");
        continue;
      }
      auto i = vars.find(w);
      if (!i) fail(nl.freeze->first, "'" + w + "' is not a declared variable");
      controllable.set(*i);
    }
    return make_freeze_bcn(base, controllable,
                           polarity_override ? *polarity_override : polarity);
  }

  std::vector<std::string> names = nl.vars;
  names.insert(names.end(), nl.controls.begin(), nl.controls.end());
  Alphabet full(std::move(names));
  // Control inputs that pair up by name (u<tag>0/u<tag>1 or u<tag>_0/_1)
  // give the file a freeze structure usable by TCS/ACS.
  std::vector<FreezePair> pairs;
  std::size_t matched = 0;
  for (std::size_t i = 0; i < nl.vars.size(); ++i) {
    const std::string& var = nl.vars[i];
    bool index_shaped =
        var.size() > 1 && var[0] == 'x' &&
        std::all_of(var.begin() + 1, var.end(),
                    [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    for (const auto& zero : {std::string("u") + var + "0", std::string("u") + var + "_0",
                             index_shaped ? "u" + var.substr(1) + "_0" : std::string()}) {
      if (zero.empty()) continue;
      std::string one = zero;
      one.back() = '1';
      auto u0 = full.find(zero);
      auto u1 = full.find(one);
      if (u0 && u1) {
        pairs.push_back({i, *u0, *u1});
        matched += 2;
        break;
      }
    }
  }
  bool structured = matched == nl.controls.size() && !nl.controls.empty();
  return Bcn(full, nl.vars.size(), parse_updates(nl, full),
             structured ? pairs : std::vector<FreezePair>{}, std::nullopt);
}

Bcn parse_bcn_file(const std::string& path,
                   std::optional<FreezePolarity> polarity_override) {
  auto in = open_file(path);
  return parse_bcn(in, polarity_override);
}

std::string write_bcn(const Bcn& b) {
  std::string out = "vars:";
  for (std::size_t i = 0; i < b.num_vars(); ++i) out += " " + b.alphabet().name(i);
  out += "\n";
  if (b.num_controls() > 0) {
    out += "controls:";
    for (std::size_t i = b.num_vars(); i < b.alphabet().size(); ++i)
      out += " " + b.alphabet().name(i);
    out += "\n";
  }
  for (std::size_t i = 0; i < b.num_vars(); ++i)
    out += "fn " + b.alphabet().name(i) + ": " + b.update()[i].to_string(b.alphabet()) + "\n";
  return out;
}

ControlMode parse_control_mode(std::istream& in, const Bcn& b) {
  auto lines = read_lines(in);
  if (lines.empty()) throw ParseError("empty control-mode file");
  std::string rest;
  if (key_line(lines[0].second, "mode", rest)) {
    if (lines.size() > 1) fail(lines[1].first, "unexpected line after mode");
    if (rest == "any") return ControlMode::any();
    if (rest == "tcs") return ControlMode::tcs();
    if (rest == "acs") return ControlMode::acs();
    fail(lines[0].first, "mode must be any, tcs or acs");
  }
  if (trim(lines[0].second) != "pairs:")
    fail(lines[0].first, "expected 'mode: ...' or 'pairs:'");
  std::vector<std::pair<SymbolSet, SymbolSet>> pairs;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [no, line] = lines[i];
    auto arrow = line.find("->");
    if (arrow == std::string::npos) fail(no, "expected '{...} -> {...}'");
    SymbolSet mu = parse_symbol_set(line.substr(0, arrow), b.alphabet(), no);
    SymbolSet nu = parse_symbol_set(line.substr(arrow + 2), b.alphabet(), no);
    try {
      b.validate_control(mu);
      b.validate_control(nu);
    } catch (const ModelError& e) {
      fail(no, e.what());
    }
    pairs.emplace_back(std::move(mu), std::move(nu));
  }
  return ControlMode::explicit_pairs(std::move(pairs));
}

ControlMode parse_control_mode_file(const std::string& path, const Bcn& b) {
  auto in = open_file(path);
  return parse_control_mode(in, b);
}

Lba parse_lba(std::istream& in) {
  auto lines = read_lines(in);
  std::vector<std::string> states, tape, input, output, markers;
  std::string init, final_state;
  std::vector<Lba::Entry> transitions;
  for (const auto& [no, line] : lines) {
    std::string rest;
    if (key_line(line, "states", rest)) { states = split_words(rest); continue; }
    if (key_line(line, "tape", rest)) { tape = split_words(rest); continue; }
    if (key_line(line, "input", rest)) { input = split_words(rest); continue; }
    if (key_line(line, "output", rest)) { output = split_words(rest); continue; }
    if (key_line(line, "markers", rest)) {
      markers = split_words(rest);
      if (markers.size() != 3) fail(no, "markers line needs exactly: left blank right");
      continue;
    }
    if (key_line(line, "init", rest)) { init = rest; continue; }
    if (key_line(line, "final", rest)) { final_state = rest; continue; }
    auto arrow = line.find("->");
    if (arrow == std::string::npos) fail(no, "unrecognized line '" + line + "'");
    auto left = split_words(line.substr(0, arrow));
    auto right = split_words(line.substr(arrow + 2));
    if (left.size() != 2 || right.size() != 3)
      fail(no, "expected '<state> <symbol> -> <state> <symbol> <L|R|S>'");
    HeadMove move;
    if (right[2] == "L") move = HeadMove::Left;
    else if (right[2] == "R") move = HeadMove::Right;
    else if (right[2] == "S") move = HeadMove::Stay;
    else fail(no, "head move must be L, R or S");
    transitions.push_back({left[0], left[1], right[0], right[1], move});
  }
  if (states.empty()) throw ParseError("missing states line");
  if (tape.empty()) throw ParseError("missing tape line");
  if (markers.empty()) throw ParseError("missing markers line");
  if (init.empty()) throw ParseError("missing init line");
  if (final_state.empty()) throw ParseError("missing final line");
  try {
    return Lba(Alphabet(states), Alphabet(tape), input, output, markers[0], markers[1],
               markers[2], init, final_state, transitions);
  } catch (const ModelError& e) {
    throw ParseError(e.what());
  }
}

Lba parse_lba_file(const std::string& path) {
  auto in = open_file(path);
  return parse_lba(in);
}

ReactionSystem parse_rs(std::istream& in) {
  auto lines = read_lines(in);
  std::optional<Alphabet> species;
  std::vector<Reaction> reactions;
  for (const auto& [no, line] : lines) {
    std::string rest;
    if (key_line(line, "species", rest)) {
      if (species) fail(no, "duplicate species line");
      species = Alphabet(split_words(rest));
      continue;
    }
    if (line.rfind("reaction ", 0) == 0) {
      if (!species) fail(no, "reaction before the species line");
      std::string body = line.substr(9);
      auto colon = body.find(':');
      if (colon == std::string::npos) fail(no, "expected 'reaction <id>: ...'");
      Reaction r;
      r.id = trim(body.substr(0, colon));
      std::string def = body.substr(colon + 1);
      auto arrow = def.find("->");
      if (arrow == std::string::npos) fail(no, "expected '->' in reaction");
      std::string left = def.substr(0, arrow);
      auto slash = left.find('/');
      if (slash == std::string::npos) {
        r.reactants = parse_symbol_set(left, *species, no);
        r.inhibitors = SymbolSet(species->size());
      } else {
        r.reactants = parse_symbol_set(left.substr(0, slash), *species, no);
        r.inhibitors = parse_symbol_set(left.substr(slash + 1), *species, no);
      }
      r.products = parse_symbol_set(def.substr(arrow + 2), *species, no);
      reactions.push_back(std::move(r));
      continue;
    }
    fail(no, "unrecognized line '" + line + "'");
  }
  if (!species) throw ParseError("missing species line");
  try {
    return ReactionSystem(*species, std::move(reactions));
  } catch (const ModelError& e) {
    throw ParseError(e.what());
  }
}

ReactionSystem parse_rs_file(const std::string& path) {
  auto in = open_file(path);
  return parse_rs(in);
}

ProblemFile parse_problem_file(const std::string& path) {
  auto in = open_file(path);
  auto lines = read_lines(in);
  ProblemFile out;
  for (const auto& [no, line] : lines) {
    std::string rest;
    if (key_line(line, "from", rest)) { out.from = rest; continue; }
    if (key_line(line, "to", rest)) { out.to = rest; continue; }
    fail(no, "unrecognized line '" + line + "'");
  }
  if (out.from.empty() || out.to.empty())
    throw ParseError("problem file needs both from: and to: lines");
  return out;
}

std::string write_problem(const SymbolSet& from, const SymbolSet& to,
                          const Alphabet& alphabet) {
  return "from: " + alphabet.format_set(from) + "\nto: " + alphabet.format_set(to) + "\n";
}

SymbolSet parse_state(std::string_view text, const Alphabet& alphabet) {
  std::string t = trim(text);
  if (!t.empty() && t.front() == '{') return parse_symbol_set(t, alphabet, 0);
  if (t.size() != alphabet.size())
    throw ParseError("state bitstring '" + t + "' has length " +
                     std::to_string(t.size()) + ", expected " +
                     std::to_string(alphabet.size()));
  return SymbolSet::parse_bitstring(t);
}

std::vector<SymbolSet> parse_state_list(const std::vector<std::string>& specs,
                                        const Alphabet& alphabet) {
  std::vector<SymbolSet> out;
  for (const auto& s : specs) out.push_back(parse_state(s, alphabet));
  return out;
}

namespace {

const char* status_name(WitnessStatus s) {
  switch (s) {
    case WitnessStatus::Reached: return "reached";
    case WitnessStatus::Unreachable: return "unreachable";
    case WitnessStatus::Skipped: return "skipped";
  }
  return "?";
}

}  // namespace

std::string reach_result_json(const ReachResult& r, const Bps& system) {
  nlohmann::json out;
  out["answer"] = r.reachable;
  out["states_explored"] = r.stats.states_explored;
  out["witnesses"] = nlohmann::json::array();
  for (const auto& w : r.witnesses) {
    nlohmann::json jw;
    jw["start"] = w.start.to_bitstring();
    jw["status"] = status_name(w.status);
    jw["steps"] = nlohmann::json::array();
    for (const auto& s : w.steps) {
      nlohmann::json js;
      js["rules"] = system.rule_ids(s.fired);
      js["state"] = s.state.to_bitstring();
      jw["steps"].push_back(std::move(js));
    }
    jw["reached"] = w.status == WitnessStatus::Reached
                        ? nlohmann::json(w.final_state().to_bitstring())
                        : nlohmann::json();
    out["witnesses"].push_back(std::move(jw));
  }
  return out.dump(2) + "\n";
}

std::string control_result_json(const ControlResult& r, const Bcn& b) {
  nlohmann::json out;
  out["answer"] = r.controllable;
  out["states_explored"] = r.stats.states_explored;
  if (!r.diagnostic.empty()) out["diagnostic"] = r.diagnostic;
  out["witnesses"] = nlohmann::json::array();
  for (const auto& w : r.witnesses) {
    nlohmann::json jw;
    jw["start"] = w.start.to_bitstring();
    jw["status"] = status_name(w.status);
    jw["steps"] = nlohmann::json::array();
    for (const auto& s : w.steps) {
      nlohmann::json js;
      std::vector<std::string> control_names;
      s.control.for_each(
          [&](std::size_t i) { control_names.push_back(b.alphabet().name(i)); });
      js["control"] = control_names;
      js["state"] = s.state.to_bitstring();
      jw["steps"].push_back(std::move(js));
    }
    jw["reached"] = w.status == WitnessStatus::Reached
                        ? nlohmann::json(w.final_state().to_bitstring())
                        : nlohmann::json();
    out["witnesses"].push_back(std::move(jw));
  }
  return out.dump(2) + "\n";
}

}  // namespace bps::io
