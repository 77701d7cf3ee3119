#include "bps/system.hpp"

#include <algorithm>

#include "bps/error.hpp"

namespace bps {

Bps::Bps(Alphabet alphabet, std::vector<Rule> rules)
    : alphabet_(std::move(alphabet)), rules_(std::move(rules)) {
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const Rule& r = rules_[i];
    if (!Alphabet::valid_identifier(r.id))
      throw ModelError("invalid rule id '" + r.id + "'");
    if (!by_id_.emplace(r.id, i).second)
      throw ModelError("duplicate rule id '" + r.id + "'");
    if (r.lhs.universe() != alphabet_.size() || r.rhs.universe() != alphabet_.size())
      throw ModelError("rule '" + r.id + "' is not over the system alphabet");
    if (!r.guard.vars_within(alphabet_.size()))
      throw ModelError("guard of rule '" + r.id + "' uses symbols outside the alphabet");
  }
}

const Rule& Bps::rule(std::size_t i) const {
  if (i >= rules_.size())
    throw std::out_of_range("rule index " + std::to_string(i) + " out of range");
  return rules_[i];
}

std::optional<std::size_t> Bps::find_rule(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

std::size_t Bps::rule_index(std::string_view id) const {
  auto i = find_rule(id);
  if (!i) throw ModelError("unknown rule '" + std::string(id) + "'");
  return *i;
}

RuleSet Bps::rule_set_of(const std::vector<std::string>& ids) const {
  RuleSet rs(rules_.size());
  for (const auto& id : ids) rs.set(rule_index(id));
  return rs;
}

std::vector<std::string> Bps::rule_ids(const RuleSet& rs) const {
  if (rs.universe() != rules_.size())
    throw std::invalid_argument("rule set universe does not match rule count");
  std::vector<std::string> out;
  rs.for_each([&](std::size_t i) { out.push_back(rules_[i].id); });
  return out;
}

std::string Bps::format_rule_set(const RuleSet& rs) const {
  std::string out = "{";
  bool first = true;
  for (const auto& id : rule_ids(rs)) {
    if (!first) out += ",";
    out += id;
    first = false;
  }
  return out + "}";
}

struct QuasiMode::Repr {
  Kind kind;
  std::size_t universe = 0;
  std::vector<RuleSet> elements;       // Explicit
  RuleSet rules;                       // Singleton / Powerset
  std::vector<QuasiMode> parts;        // Union / Product (two entries)
};

QuasiMode QuasiMode::none(std::size_t rule_universe) {
  return explicit_family(rule_universe, {});
}

QuasiMode QuasiMode::explicit_family(std::size_t rule_universe, std::vector<RuleSet> elements) {
  auto r = std::make_shared<Repr>();
  r->kind = Kind::Explicit;
  r->universe = rule_universe;
  for (const auto& e : elements)
    if (e.universe() != rule_universe)
      throw ModelError("quasimode element over wrong rule universe");
  r->elements = std::move(elements);
  return QuasiMode(std::move(r));
}

QuasiMode QuasiMode::singleton(RuleSet rules) {
  auto r = std::make_shared<Repr>();
  r->kind = Kind::Singleton;
  r->universe = rules.universe();
  r->rules = std::move(rules);
  return QuasiMode(std::move(r));
}

QuasiMode QuasiMode::powerset_of(RuleSet rules) {
  auto r = std::make_shared<Repr>();
  r->kind = Kind::Powerset;
  r->universe = rules.universe();
  r->rules = std::move(rules);
  return QuasiMode(std::move(r));
}

QuasiMode QuasiMode::dotted_product(QuasiMode a, QuasiMode b) {
  if (a.rule_universe() != b.rule_universe())
    throw ModelError("dotted product of quasimodes over different rule universes");
  auto r = std::make_shared<Repr>();
  r->kind = Kind::Product;
  r->universe = a.rule_universe();
  r->parts = {std::move(a), std::move(b)};
  return QuasiMode(std::move(r));
}

QuasiMode QuasiMode::union_of(std::vector<QuasiMode> parts) {
  if (parts.empty()) throw ModelError("union of no quasimode families");
  auto r = std::make_shared<Repr>();
  r->kind = Kind::Union;
  r->universe = parts[0].rule_universe();
  for (const auto& p : parts)
    if (p.rule_universe() != r->universe)
      throw ModelError("union of quasimodes over different rule universes");
  r->parts = std::move(parts);
  return QuasiMode(std::move(r));
}

QuasiMode::Kind QuasiMode::kind() const { return repr_->kind; }
std::size_t QuasiMode::rule_universe() const { return repr_->universe; }

const std::vector<RuleSet>& QuasiMode::elements() const {
  if (repr_->kind != Kind::Explicit) throw ModelError("not an explicit quasimode");
  return repr_->elements;
}

const RuleSet& QuasiMode::rules() const {
  if (repr_->kind != Kind::Singleton && repr_->kind != Kind::Powerset)
    throw ModelError("not a singleton or powerset quasimode");
  return repr_->rules;
}

const QuasiMode& QuasiMode::left() const {
  if (repr_->kind != Kind::Product) throw ModelError("not a product quasimode");
  return repr_->parts[0];
}

const QuasiMode& QuasiMode::right() const {
  if (repr_->kind != Kind::Product) throw ModelError("not a product quasimode");
  return repr_->parts[1];
}

const std::vector<QuasiMode>& QuasiMode::parts() const {
  if (repr_->kind != Kind::Union) throw ModelError("not a union quasimode");
  return repr_->parts;
}

namespace {

void sort_unique(std::vector<RuleSet>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

[[noreturn]] void enumeration_overflow(std::size_t limit) {
  throw ModelError("quasimode enumeration exceeds the limit of " + std::to_string(limit) +
                   " elements");
}

}  // namespace

std::vector<RuleSet> QuasiMode::enumerate(std::size_t limit) const {
  std::vector<RuleSet> out;
  switch (repr_->kind) {
    case Kind::Explicit:
      out = repr_->elements;
      break;
    case Kind::Singleton:
      out = {repr_->rules};
      break;
    case Kind::Powerset: {
      auto members = repr_->rules.members();
      if (members.size() >= 63 || (std::size_t{1} << members.size()) > limit)
        enumeration_overflow(limit);
      std::size_t n = std::size_t{1} << members.size();
      out.reserve(n);
      for (std::size_t mask = 0; mask < n; ++mask) {
        RuleSet rs(repr_->universe);
        for (std::size_t j = 0; j < members.size(); ++j)
          if ((mask >> j) & 1) rs.set(members[j]);
        out.push_back(std::move(rs));
      }
      break;
    }
    case Kind::Product: {
      auto a = repr_->parts[0].enumerate(limit);
      auto b = repr_->parts[1].enumerate(limit);
      if (!a.empty() && !b.empty() && a.size() > limit / b.size())
        enumeration_overflow(limit);
      out.reserve(a.size() * b.size());
      for (const auto& x : a)
        for (const auto& y : b) out.push_back(x | y);
      break;
    }
    case Kind::Union: {
      for (const auto& p : repr_->parts) {
        auto e = p.enumerate(limit);
        out.insert(out.end(), e.begin(), e.end());
        if (out.size() > limit) enumeration_overflow(limit);
      }
      break;
    }
  }
  sort_unique(out);
  if (out.size() > limit) enumeration_overflow(limit);
  return out;
}

QuasiMode dotted_product(const QuasiMode& a, const QuasiMode& b) {
  return QuasiMode::dotted_product(a, b);
}

QuasiMode remap_rules(const QuasiMode& q, const std::vector<std::size_t>& new_ids,
                      std::size_t new_universe) {
  auto remap_set = [&](const RuleSet& rs) {
    RuleSet out(new_universe);
    rs.for_each([&](std::size_t i) { out.set(new_ids.at(i)); });
    return out;
  };
  switch (q.kind()) {
    case QuasiMode::Kind::Explicit: {
      std::vector<RuleSet> elements;
      elements.reserve(q.elements().size());
      for (const auto& e : q.elements()) elements.push_back(remap_set(e));
      return QuasiMode::explicit_family(new_universe, std::move(elements));
    }
    case QuasiMode::Kind::Singleton:
      return QuasiMode::singleton(remap_set(q.rules()));
    case QuasiMode::Kind::Powerset:
      return QuasiMode::powerset_of(remap_set(q.rules()));
    case QuasiMode::Kind::Product:
      return QuasiMode::dotted_product(remap_rules(q.left(), new_ids, new_universe),
                                       remap_rules(q.right(), new_ids, new_universe));
    case QuasiMode::Kind::Union: {
      std::vector<QuasiMode> parts;
      for (const auto& p : q.parts()) parts.push_back(remap_rules(p, new_ids, new_universe));
      return QuasiMode::union_of(std::move(parts));
    }
  }
  throw ModelError("unreachable quasimode kind");
}

ModeSpec ModeSpec::max_parallel() { return ModeSpec(); }

ModeSpec ModeSpec::from_quasimode(QuasiMode q) {
  ModeSpec m;
  m.quasimode_ = std::move(q);
  return m;
}

const QuasiMode& ModeSpec::quasimode() const {
  if (!quasimode_) throw ModelError("maximal-parallel mode has no quasimode");
  return *quasimode_;
}

bool is_applicable(const Rule& r, const SymbolSet& w) {
  return r.lhs.subset_of(w) && r.guard.eval(w);
}

RuleSet applicable_rules(const Bps& p, const SymbolSet& w) {
  RuleSet rs(p.num_rules());
  for (std::size_t i = 0; i < p.num_rules(); ++i)
    if (is_applicable(p.rule(i), w)) rs.set(i);
  return rs;
}

namespace {

SymbolSet apply_unchecked(const Bps& p, const SymbolSet& w, const RuleSet& rs) {
  SymbolSet removed(w.universe());
  SymbolSet added(w.universe());
  rs.for_each([&](std::size_t i) {
    removed |= p.rule(i).lhs;
    added |= p.rule(i).rhs;
  });
  return (w - removed) | added;
}

}  // namespace

SymbolSet apply_rule_set(const Bps& p, const SymbolSet& w, const RuleSet& rs) {
  std::optional<std::size_t> offending;
  rs.for_each([&](std::size_t i) {
    if (!offending && !is_applicable(p.rule(i), w)) offending = i;
  });
  if (offending)
    throw ModelError("rule '" + p.rule(*offending).id + "' is not applicable to " +
                     p.alphabet().format_set(w));
  return apply_unchecked(p, w, rs);
}

std::vector<RuleSet> derive_mode(const QuasiMode& q, const Bps& p, const SymbolSet& w) {
  if (q.rule_universe() != p.num_rules())
    throw ModelError("quasimode is not over this system's rules");
  RuleSet app = applicable_rules(p, w);
  std::vector<RuleSet> out;
  for (const auto& m : q.enumerate())
    if (m.subset_of(app)) out.push_back(m);
  return out;
}

Stepper::Stepper(const Bps& p, const ModeSpec& mode)
    : system_(&p), max_parallel_(mode.is_max_parallel()) {
  if (!max_parallel_) {
    if (mode.quasimode().rule_universe() != p.num_rules())
      throw ModelError("quasimode is not over this system's rules");
    advised_ = mode.quasimode().enumerate();
  }
}

std::vector<Step> Stepper::successors(const SymbolSet& w) const {
  const Bps& p = *system_;
  RuleSet app = applicable_rules(p, w);
  std::vector<Step> out;
  if (max_parallel_) {
    if (app.empty()) return out;  // halting
    out.push_back({app, apply_unchecked(p, w, app)});
    return out;
  }
  out.reserve(advised_.size());
  for (const auto& m : advised_) {
    RuleSet fired = m & app;
    out.push_back({fired, apply_unchecked(p, w, fired)});
  }
  std::sort(out.begin(), out.end(), [&](const Step& a, const Step& b) {
    if (a.fired != b.fired) return rule_set_id_less(p, a.fired, b.fired);
    return a.successor < b.successor;
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Step& a, const Step& b) {
                          return a.fired == b.fired && a.successor == b.successor;
                        }),
            out.end());
  return out;
}

std::vector<Step> step(const Bps& p, const ModeSpec& mode, const SymbolSet& w) {
  return Stepper(p, mode).successors(w);
}

BpsUnion union_bps(const Bps& p1, const Bps& p2) {
  std::vector<std::string> names = p1.alphabet().names();
  for (const auto& n : p2.alphabet().names())
    if (!p1.alphabet().contains(n)) names.push_back(n);
  Alphabet alphabet(std::move(names));

  BpsUnion u;
  u.symbol_map1.resize(p1.alphabet().size());
  for (std::size_t i = 0; i < p1.alphabet().size(); ++i)
    u.symbol_map1[i] = alphabet.index_of(p1.alphabet().name(i));
  u.symbol_map2.resize(p2.alphabet().size());
  for (std::size_t i = 0; i < p2.alphabet().size(); ++i)
    u.symbol_map2[i] = alphabet.index_of(p2.alphabet().name(i));

  auto lift_set = [&](const SymbolSet& s, const std::vector<std::size_t>& map) {
    SymbolSet out(alphabet.size());
    s.for_each([&](std::size_t i) { out.set(map[i]); });
    return out;
  };
  auto lift_rule = [&](const Rule& r, const std::vector<std::size_t>& map) {
    return Rule{r.id, lift_set(r.lhs, map), lift_set(r.rhs, map), r.guard.remap(map)};
  };

  std::vector<Rule> rules;
  std::unordered_map<std::string, std::size_t> seen;
  u.rule_map1.resize(p1.rules().size());
  for (std::size_t i = 0; i < p1.rules().size(); ++i) {
    rules.push_back(lift_rule(p1.rule(i), u.symbol_map1));
    seen.emplace(rules.back().id, i);
    u.rule_map1[i] = i;
  }
  u.rule_map2.resize(p2.rules().size());
  for (std::size_t i = 0; i < p2.rules().size(); ++i) {
    Rule lifted = lift_rule(p2.rule(i), u.symbol_map2);
    auto it = seen.find(lifted.id);
    if (it != seen.end()) {
      const Rule& prev = rules[it->second];
      if (prev.lhs != lifted.lhs || prev.rhs != lifted.rhs || !(prev.guard == lifted.guard))
        throw ModelError("conflicting rules share the id '" + lifted.id + "'");
      u.rule_map2[i] = it->second;
    } else {
      u.rule_map2[i] = rules.size();
      seen.emplace(lifted.id, rules.size());
      rules.push_back(std::move(lifted));
    }
  }
  u.system = Bps(std::move(alphabet), std::move(rules));
  return u;
}

bool rule_set_id_less(const Bps& p, const RuleSet& a, const RuleSet& b) {
  auto ia = p.rule_ids(a);
  auto ib = p.rule_ids(b);
  std::sort(ia.begin(), ia.end());
  std::sort(ib.begin(), ib.end());
  return std::lexicographical_compare(ia.begin(), ia.end(), ib.begin(), ib.end());
}

}  // namespace bps
