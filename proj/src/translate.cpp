#include "bps/translate.hpp"

#include <algorithm>

#include "bps/error.hpp"

namespace bps {

Bps bn_to_bps(const BoolNetwork& f) {
  std::vector<Rule> rules;
  rules.reserve(2 * f.vars.size());
  for (std::size_t x = 0; x < f.vars.size(); ++x) {
    SymbolSet none(f.vars.size());
    SymbolSet just_x = SymbolSet::of(f.vars.size(), {x});
    rules.push_back({"set_" + f.vars.name(x), none, just_x, f.update[x]});
    rules.push_back({"clr_" + f.vars.name(x), just_x, none,
                     Formula::negation(f.update[x])});
  }
  return Bps(f.vars, std::move(rules));
}

QuasiMode boolean_mode_to_quasimode(const BooleanMode& m, const Bps& translation) {
  std::size_t num_vars = translation.alphabet().size();
  if (translation.num_rules() != 2 * num_vars)
    throw ModelError("quasimode translation expects a network translation");
  std::vector<RuleSet> elements;
  for (const auto& block : m.blocks(num_vars)) {
    RuleSet rs(translation.num_rules());
    block.for_each([&](std::size_t x) {
      rs.set(translation.rule_index("set_" + translation.alphabet().name(x)));
      rs.set(translation.rule_index("clr_" + translation.alphabet().name(x)));
    });
    elements.push_back(std::move(rs));
  }
  return QuasiMode::explicit_family(translation.num_rules(), std::move(elements));
}

namespace {

// Network rules of a controlled system: guards range over the whole X ∪ U
// alphabet, but only variables are rewritten.
Bps controlled_network_rules(const Bcn& b) {
  std::vector<Rule> rules;
  rules.reserve(2 * b.num_vars());
  std::size_t n = b.alphabet().size();
  for (std::size_t x = 0; x < b.num_vars(); ++x) {
    SymbolSet none(n);
    SymbolSet just_x = SymbolSet::of(n, {x});
    rules.push_back({"set_" + b.alphabet().name(x), none, just_x, b.update()[x]});
    rules.push_back({"clr_" + b.alphabet().name(x), just_x, none,
                     Formula::negation(b.update()[x])});
  }
  return Bps(b.alphabet(), std::move(rules));
}

QuasiMode network_quasimode(const Bcn& b, const BooleanMode& m, const Bps& network) {
  std::vector<RuleSet> elements;
  for (const auto& block : m.blocks(b.num_vars())) {
    RuleSet rs(network.num_rules());
    block.for_each([&](std::size_t x) {
      rs.set(network.rule_index("set_" + b.alphabet().name(x)));
      rs.set(network.rule_index("clr_" + b.alphabet().name(x)));
    });
    elements.push_back(std::move(rs));
  }
  return QuasiMode::explicit_family(network.num_rules(), std::move(elements));
}

Alphabet control_alphabet(const Bcn& b) {
  std::vector<std::string> names(b.alphabet().names().begin() + b.num_vars(),
                                 b.alphabet().names().end());
  return Alphabet(std::move(names));
}

}  // namespace

CompositeBps bcn_to_composite(const Bcn& b, const BooleanMode& m) {
  Bps network = controlled_network_rules(b);
  QuasiMode mq = network_quasimode(b, m, network);

  Alphabet u_names = control_alphabet(b);
  std::size_t nu = u_names.size();
  std::vector<Rule> u_rules;
  for (std::size_t u = 0; u < nu; ++u)
    u_rules.push_back({"u_del_" + u_names.name(u), SymbolSet::of(nu, {u}), SymbolSet(nu),
                       Formula::constant(true)});
  for (std::size_t u = 0; u < nu; ++u)
    u_rules.push_back({"u_add_" + u_names.name(u), SymbolSet(nu), SymbolSet::of(nu, {u}),
                       Formula::constant(true)});
  Bps pu(u_names, std::move(u_rules));

  BpsUnion un = union_bps(network, pu);
  QuasiMode mq_lifted = remap_rules(mq, un.rule_map1, un.system.num_rules());

  RuleSet deletions(un.system.num_rules());
  RuleSet additions(un.system.num_rules());
  for (std::size_t i = 0; i < nu; ++i) {
    deletions.set(un.rule_map2[i]);
    additions.set(un.rule_map2[nu + i]);
  }
  QuasiMode mu_q = QuasiMode::dotted_product(QuasiMode::singleton(deletions),
                                             QuasiMode::powerset_of(additions));

  CompositeBps out{un.system, QuasiMode::dotted_product(mq_lifted, mu_q),
                   SymbolSet(un.system.alphabet().size()),
                   SymbolSet(un.system.alphabet().size())};
  for (std::size_t i = 0; i < b.num_vars(); ++i) out.x_symbols.set(un.symbol_map1[i]);
  for (std::size_t i = b.num_vars(); i < b.alphabet().size(); ++i)
    out.u_symbols.set(un.symbol_map1[i]);
  return out;
}

ControlModeTranslation control_mode_to_pu(
    const Bcn& b, const std::vector<std::pair<SymbolSet, SymbolSet>>& pairs,
    GuardStyle style) {
  Alphabet u_names = control_alphabet(b);
  std::size_t nu = u_names.size();

  auto to_local = [&](const SymbolSet& mu) {
    b.validate_control(mu);
    SymbolSet local(nu);
    mu.for_each([&](std::size_t i) { local.set(i - b.num_vars()); });
    return local;
  };

  std::vector<std::pair<SymbolSet, SymbolSet>> local;
  local.reserve(pairs.size());
  for (const auto& [mu, nu_ctl] : pairs) local.emplace_back(to_local(mu), to_local(nu_ctl));
  std::sort(local.begin(), local.end());
  local.erase(std::unique(local.begin(), local.end()), local.end());

  SymbolSet u_all = SymbolSet::full(nu);
  std::vector<Rule> rules;
  rules.reserve(local.size());
  for (std::size_t k = 0; k < local.size(); ++k) {
    Formula guard = style == GuardStyle::ExactGuard
                        ? exact_set_formula(local[k].first, u_all)
                        : Formula::constant(true);
    rules.push_back({"cm_" + std::to_string(k), local[k].first, local[k].second,
                     std::move(guard)});
  }
  Bps pu(u_names, std::move(rules));

  std::vector<RuleSet> singletons;
  singletons.reserve(local.size());
  for (std::size_t k = 0; k < local.size(); ++k)
    singletons.push_back(RuleSet::of(local.size(), {k}));
  QuasiMode q = QuasiMode::explicit_family(local.size(), std::move(singletons));
  return {std::move(pu), std::move(q), std::move(local)};
}

CompositeBps seqcontrol_composite(const Bcn& b, const BooleanMode& m,
                                  const std::vector<std::pair<SymbolSet, SymbolSet>>& pairs,
                                  GuardStyle style) {
  Bps network = controlled_network_rules(b);
  QuasiMode mq = network_quasimode(b, m, network);
  ControlModeTranslation cm = control_mode_to_pu(b, pairs, style);

  BpsUnion un = union_bps(network, cm.pu);
  QuasiMode mq_lifted = remap_rules(mq, un.rule_map1, un.system.num_rules());
  QuasiMode cm_lifted = remap_rules(cm.quasimode, un.rule_map2, un.system.num_rules());

  CompositeBps out{un.system, QuasiMode::dotted_product(mq_lifted, cm_lifted),
                   SymbolSet(un.system.alphabet().size()),
                   SymbolSet(un.system.alphabet().size())};
  for (std::size_t i = 0; i < b.num_vars(); ++i) out.x_symbols.set(un.symbol_map1[i]);
  for (std::size_t i = b.num_vars(); i < b.alphabet().size(); ++i)
    out.u_symbols.set(un.symbol_map1[i]);
  return out;
}

ReactionSystem::ReactionSystem(Alphabet species_in, std::vector<Reaction> reactions_in)
    : species(std::move(species_in)), reactions(std::move(reactions_in)) {
  std::vector<std::string> seen;
  for (const auto& a : reactions) {
    if (!Alphabet::valid_identifier(a.id))
      throw ModelError("invalid reaction id '" + a.id + "'");
    if (std::find(seen.begin(), seen.end(), a.id) != seen.end())
      throw ModelError("duplicate reaction id '" + a.id + "'");
    seen.push_back(a.id);
    if (a.reactants.universe() != species.size() ||
        a.inhibitors.universe() != species.size() ||
        a.products.universe() != species.size())
      throw ModelError("reaction '" + a.id + "' is not over the species");
    if (a.reactants.intersects(a.inhibitors))
      throw ModelError("reaction '" + a.id + "' has overlapping reactants and inhibitors");
  }
}

bool ReactionSystem::enabled(const Reaction& a, const SymbolSet& w) const {
  return a.reactants.subset_of(w) && !a.inhibitors.intersects(w);
}

SymbolSet ReactionSystem::result(const SymbolSet& w) const {
  SymbolSet out(species.size());
  for (const auto& a : reactions)
    if (enabled(a, w)) out |= a.products;
  return out;
}

Bps rs_to_bps(const ReactionSystem& rs) {
  std::size_t n = rs.species.size();
  std::vector<Rule> rules;
  rules.reserve(rs.reactions.size() + n);
  for (const auto& a : rs.reactions) {
    std::vector<Formula> parts;
    a.reactants.for_each([&](std::size_t i) { parts.push_back(Formula::variable(i)); });
    a.inhibitors.for_each([&](std::size_t i) {
      parts.push_back(Formula::negation(Formula::variable(i)));
    });
    rules.push_back({a.id, SymbolSet(n), a.products, Formula::all_of(std::move(parts))});
  }
  for (std::size_t x = 0; x < n; ++x)
    rules.push_back({"deg_" + rs.species.name(x), SymbolSet::of(n, {x}), SymbolSet(n),
                     Formula::constant(true)});
  return Bps(rs.species, std::move(rules));
}

}  // namespace bps
