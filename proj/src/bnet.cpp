#include "bps/bnet.hpp"

#include <algorithm>
#include <cctype>

#include "bps/error.hpp"

namespace bps {

BoolNetwork::BoolNetwork(Alphabet vars_in, std::vector<Formula> update_in)
    : vars(std::move(vars_in)), update(std::move(update_in)) {
  if (update.size() != vars.size())
    throw ModelError("network needs exactly one update function per variable");
  for (std::size_t i = 0; i < update.size(); ++i)
    if (!update[i].vars_within(vars.size()))
      throw ModelError("update function of '" + vars.name(i) +
                       "' uses symbols outside the variables");
}

BooleanMode BooleanMode::explicit_blocks(std::vector<SymbolSet> blocks) {
  return BooleanMode(Kind::Explicit, std::move(blocks));
}

std::vector<SymbolSet> BooleanMode::blocks(std::size_t num_vars) const {
  switch (kind_) {
    case Kind::Synchronous:
      return {SymbolSet::full(num_vars)};
    case Kind::Asynchronous: {
      std::vector<SymbolSet> out;
      out.reserve(num_vars);
      for (std::size_t i = 0; i < num_vars; ++i)
        out.push_back(SymbolSet::of(num_vars, {i}));
      return out;
    }
    case Kind::Explicit:
      for (const auto& b : blocks_)
        if (b.universe() != num_vars)
          throw ModelError("explicit mode block over wrong variable count");
      return blocks_;
  }
  return {};
}

std::vector<SymbolSet> bn_step(const BoolNetwork& f, const BooleanMode& m,
                               const SymbolSet& s) {
  if (s.universe() != f.vars.size())
    throw ModelError("state is not over the network variables");
  std::vector<SymbolSet> out;
  for (const auto& block : m.blocks(f.vars.size())) {
    SymbolSet next = s;
    block.for_each([&](std::size_t x) { next.assign(x, f.update[x].eval(s)); });
    out.push_back(std::move(next));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Bcn::Bcn(Alphabet alphabet, std::size_t num_vars, std::vector<Formula> update,
         std::vector<FreezePair> freeze_pairs, std::optional<FreezePolarity> polarity)
    : alphabet_(std::move(alphabet)),
      num_vars_(num_vars),
      update_(std::move(update)),
      freeze_pairs_(std::move(freeze_pairs)),
      polarity_(polarity) {
  if (num_vars_ > alphabet_.size())
    throw ModelError("variable count exceeds alphabet size");
  if (update_.size() != num_vars_)
    throw ModelError("network needs exactly one update function per variable");
  for (std::size_t i = 0; i < update_.size(); ++i)
    if (!update_[i].vars_within(alphabet_.size()))
      throw ModelError("update function of '" + alphabet_.name(i) +
                       "' uses symbols outside the alphabet");
  for (const auto& p : freeze_pairs_) {
    if (p.var >= num_vars_ || p.u0 < num_vars_ || p.u1 < num_vars_ ||
        p.u0 >= alphabet_.size() || p.u1 >= alphabet_.size() || p.u0 == p.u1)
      throw ModelError("malformed freeze pair");
  }
}

Alphabet Bcn::var_alphabet() const {
  std::vector<std::string> names(alphabet_.names().begin(),
                                 alphabet_.names().begin() + num_vars_);
  return Alphabet(std::move(names));
}

SymbolSet Bcn::x_mask() const {
  SymbolSet m(alphabet_.size());
  for (std::size_t i = 0; i < num_vars_; ++i) m.set(i);
  return m;
}

SymbolSet Bcn::u_mask() const {
  SymbolSet m(alphabet_.size());
  for (std::size_t i = num_vars_; i < alphabet_.size(); ++i) m.set(i);
  return m;
}

bool Bcn::freeze_structured() const {
  if (num_controls() == 0) return false;
  SymbolSet covered(alphabet_.size());
  for (const auto& p : freeze_pairs_) {
    covered.set(p.u0);
    covered.set(p.u1);
  }
  return covered == u_mask();
}

std::vector<SymbolSet> Bcn::all_controls(std::size_t max_controls) const {
  if (num_controls() > max_controls)
    throw ModelError("control alphabet has " + std::to_string(num_controls()) +
                     " inputs, too many to enumerate (limit " +
                     std::to_string(max_controls) + ")");
  std::vector<SymbolSet> out;
  std::size_t n = std::size_t{1} << num_controls();
  out.reserve(n);
  for (std::size_t mask = 0; mask < n; ++mask) {
    SymbolSet mu(alphabet_.size());
    for (std::size_t j = 0; j < num_controls(); ++j)
      if ((mask >> j) & 1) mu.set(num_vars_ + j);
    out.push_back(std::move(mu));
  }
  return out;
}

void Bcn::validate_control(const SymbolSet& mu) const {
  if (mu.universe() != alphabet_.size() || !mu.subset_of(u_mask()))
    throw ModelError("control must be a set of control inputs");
}

bool Bcn::control_conflicts(const SymbolSet& mu) const {
  if (!polarity_) return false;
  for (const auto& p : freeze_pairs_) {
    bool has0 = mu.test(p.u0), has1 = mu.test(p.u1);
    if (*polarity_ == FreezePolarity::ActiveHigh ? (has0 && has1) : (!has0 && !has1))
      return true;
  }
  return false;
}

SymbolSet Bcn::lift_state(const SymbolSet& s) const {
  if (s.universe() != num_vars_)
    throw ModelError("state is not over the network variables");
  SymbolSet w(alphabet_.size());
  s.for_each([&](std::size_t i) { w.set(i); });
  return w;
}

SymbolSet Bcn::project_state(const SymbolSet& w) const {
  if (w.universe() != alphabet_.size())
    throw ModelError("configuration is not over the full alphabet");
  SymbolSet s(num_vars_);
  w.for_each([&](std::size_t i) {
    if (i < num_vars_) s.set(i);
  });
  return s;
}

BoolNetwork bcn_apply(const Bcn& b, const SymbolSet& mu) {
  b.validate_control(mu);
  std::vector<std::optional<bool>> binding(b.alphabet().size());
  for (std::size_t u = b.num_vars(); u < b.alphabet().size(); ++u)
    binding[u] = mu.test(u);
  std::vector<Formula> update;
  update.reserve(b.num_vars());
  for (const auto& f : b.update()) update.push_back(f.substitute(binding));
  return BoolNetwork(b.var_alphabet(), std::move(update));
}

namespace {

// x -> "ux0"/"ux1"; x1 -> "u1_0"/"u1_1". An index-shaped name keeps just
// its index; a separator is inserted whenever the tag ends with a digit.
std::string freeze_input_name(const std::string& var, bool to_one) {
  std::string tag = var;
  if (var.size() > 1 && (var[0] == 'x' || var[0] == 'X')) {
    bool digits = true;
    for (std::size_t i = 1; i < var.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(var[i]))) digits = false;
    if (digits) tag = var.substr(1);
  }
  std::string sep = std::isdigit(static_cast<unsigned char>(tag.back())) ? "_" : "";
  return "u" + tag + sep + (to_one ? "1" : "0");
}

}  // namespace

Bcn make_freeze_bcn(const BoolNetwork& f, const SymbolSet& controllable,
                    FreezePolarity polarity) {
  if (controllable.universe() != f.vars.size())
    throw ModelError("controllable set is not over the network variables");
  std::vector<std::string> names = f.vars.names();
  std::vector<FreezePair> pairs;
  controllable.for_each([&](std::size_t x) {
    FreezePair p;
    p.var = x;
    p.u0 = names.size();
    names.push_back(freeze_input_name(f.vars.name(x), false));
    p.u1 = names.size();
    names.push_back(freeze_input_name(f.vars.name(x), true));
    pairs.push_back(p);
  });
  Alphabet alphabet(std::move(names));  // rejects collisions with variable names

  std::vector<Formula> update = f.update;
  for (const auto& p : pairs) {
    Formula base = update[p.var];
    if (polarity == FreezePolarity::InactiveHigh) {
      update[p.var] = Formula::disjunction(
          {Formula::conjunction({base, Formula::variable(p.u0)}),
           Formula::negation(Formula::variable(p.u1))});
    } else {
      update[p.var] = Formula::conjunction(
          {Formula::disjunction({base, Formula::variable(p.u1)}),
           Formula::negation(Formula::variable(p.u0))});
    }
  }
  return Bcn(std::move(alphabet), f.vars.size(), std::move(update), std::move(pairs),
             polarity);
}

Bcn bcn_expand(const Alphabet& combined, std::size_t num_vars,
               const std::vector<std::pair<SymbolSet, BoolNetwork>>& table) {
  std::size_t num_controls = combined.size() - num_vars;
  if (num_controls > 20) throw ModelError("too many control inputs to expand");
  std::size_t expected = std::size_t{1} << num_controls;
  if (table.size() != expected)
    throw ModelError("control table must cover every control exactly once (" +
                     std::to_string(expected) + " entries, got " +
                     std::to_string(table.size()) + ")");

  auto sorted = table;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
    if (sorted[i].first == sorted[i + 1].first)
      throw ModelError("control table lists a control twice");

  SymbolSet u_mask(combined.size());
  for (std::size_t i = num_vars; i < combined.size(); ++i) u_mask.set(i);

  std::vector<Formula> update;
  if (num_controls == 0) {
    update = sorted[0].second.update;
  } else {
    for (std::size_t x = 0; x < num_vars; ++x) {
      std::vector<Formula> disjuncts;
      for (const auto& [mu, net] : sorted) {
        if (!mu.subset_of(u_mask))
          throw ModelError("control table key is not a set of control inputs");
        if (net.vars.size() != num_vars)
          throw ModelError("control table network over wrong variables");
        disjuncts.push_back(
            Formula::all_of({exact_set_formula(mu, u_mask), net.update[x]}));
      }
      update.push_back(Formula::any_of(std::move(disjuncts)));
    }
  }
  return Bcn(combined, num_vars, std::move(update));
}

ControlMode ControlMode::explicit_pairs(std::vector<std::pair<SymbolSet, SymbolSet>> pairs) {
  ControlMode cm(Kind::Explicit);
  cm.pairs_ = std::move(pairs);
  return cm;
}

const std::vector<std::pair<SymbolSet, SymbolSet>>& ControlMode::pairs() const {
  if (kind_ != Kind::Explicit) throw ModelError("not an explicit control mode");
  return pairs_;
}

SymbolSet control_idx(const Bcn& b, const SymbolSet& mu) {
  b.validate_control(mu);
  SymbolSet idx(b.freeze_pairs().size());
  for (std::size_t i = 0; i < b.freeze_pairs().size(); ++i)
    if (mu.test(b.freeze_pairs()[i].u0) || mu.test(b.freeze_pairs()[i].u1)) idx.set(i);
  return idx;
}

namespace {

void sort_unique_pairs(std::vector<std::pair<SymbolSet, SymbolSet>>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::vector<std::pair<SymbolSet, SymbolSet>> control_mode_pairs(const ControlMode& cm,
                                                                const Bcn& b,
                                                                bool allow_conflicting,
                                                                std::size_t max_pairs_log2)
{
  std::vector<std::pair<SymbolSet, SymbolSet>> out;
  switch (cm.kind()) {
    case ControlMode::Kind::Explicit:
      out = cm.pairs();
      for (const auto& [mu, nu] : out) {
        b.validate_control(mu);
        b.validate_control(nu);
        for (const auto& c : {mu, nu})
          if (!allow_conflicting && b.control_conflicts(c))
            throw ModelError("control " + b.alphabet().format_set(c) +
                             " freezes a variable in both directions; enable the"
                             " conflicting-controls override to allow it");
      }
      break;
    case ControlMode::Kind::Any: {
      if (2 * b.num_controls() > max_pairs_log2)
        throw ModelError("control alphabet too large to enumerate the full relation");
      auto controls = b.all_controls();
      for (const auto& mu : controls) {
        if (!allow_conflicting && b.control_conflicts(mu)) continue;
        for (const auto& nu : controls) {
          if (!allow_conflicting && b.control_conflicts(nu)) continue;
          out.emplace_back(mu, nu);
        }
      }
      break;
    }
    case ControlMode::Kind::Tcs:
    case ControlMode::Kind::Acs: {
      if (!b.freeze_structured())
        throw ModelError("TCS/ACS control modes require freeze-structured control inputs");
      if (2 * b.num_controls() > max_pairs_log2)
        throw ModelError("control alphabet too large to enumerate the full relation");
      const auto& pairs = b.freeze_pairs();
      std::vector<SymbolSet> admissible;
      for (const auto& mu : b.all_controls()) {
        bool ok = true;
        for (const auto& p : pairs) {
          bool has0 = mu.test(p.u0), has1 = mu.test(p.u1);
          if (has0 && has1) ok = false;  // conflict-free in both modes
          if (cm.kind() == ControlMode::Kind::Tcs && !has0 && !has1) ok = false;
        }
        if (ok) admissible.push_back(mu);
      }
      for (const auto& mu : admissible)
        for (const auto& nu : admissible) {
          if (cm.kind() == ControlMode::Kind::Acs &&
              !control_idx(b, mu).subset_of(control_idx(b, nu)))
            continue;
          out.emplace_back(mu, nu);
        }
      break;
    }
  }
  sort_unique_pairs(out);
  return out;
}

std::vector<SymbolSet> bcn_trajectory_step(const Bcn& b, const BooleanMode& m,
                                           const SymbolSet& s, const SymbolSet& mu) {
  b.validate_control(mu);
  SymbolSet w = b.lift_state(s) | mu;
  std::vector<SymbolSet> out;
  for (const auto& block : m.blocks(b.num_vars())) {
    SymbolSet next = s;
    block.for_each([&](std::size_t x) { next.assign(x, b.update()[x].eval(w)); });
    out.push_back(std::move(next));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace bps
