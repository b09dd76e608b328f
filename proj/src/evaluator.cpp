#include "tsw/evaluator.hpp"

#include <algorithm>
#include <bit>

#include "tsw/error.hpp"

namespace tsw {

namespace {

std::vector<TeamMask> masks_by_size(std::size_t members) {
  std::vector<TeamMask> out(std::size_t{1} << members);
  for (std::size_t m = 0; m < out.size(); ++m) out[m] = m;
  std::stable_sort(out.begin(), out.end(),
                   [](TeamMask a, TeamMask b) { return std::popcount(a) < std::popcount(b); });
  return out;
}

std::string describe(const Team& t) {
  std::string vars;
  for (const auto& v : t.vars()) vars += v;
  return "team over [" + vars + "] " + to_string(t);
}

}  // namespace

EvalSession::EvalSession(const Formula& formula, const Team& universe, EvalOptions options)
    : universe_(universe), members_(universe.members()), options_(options) {
  if (members_.size() > kMaxUniverseMembers)
    throw CapExceeded("evaluation teams are limited to " + std::to_string(kMaxUniverseMembers) +
                      " valuations");
  full_ = members_.size() == 64 ? ~TeamMask{0} : (TeamMask{1} << members_.size()) - 1;
  nodes_.reserve(formula.size());
  compile(formula, members_);
  memo_.resize(nodes_.size());
}

TeamMask EvalSession::to_mask(const Team& subteam) const {
  if (!(subteam.vars() == universe_.vars()))
    throw ValidationError("subteam is over a different variable set");
  TeamMask m = 0;
  for (std::size_t i = 0; i < members_.size(); ++i)
    if (subteam.contains(members_[i])) m |= TeamMask{1} << i;
  if (subteam.size() != static_cast<std::size_t>(std::popcount(m)))
    throw ValidationError("team is not a subteam of the session universe");
  return m;
}

Team EvalSession::to_team(TeamMask mask) const {
  Team t(universe_.vars());
  for (std::size_t i = 0; i < members_.size(); ++i)
    if (mask >> i & 1u) t.insert(members_[i]);
  return t;
}

std::size_t EvalSession::compile(const Formula& f, const std::vector<Valuation>& members) {
  const std::size_t id = nodes_.size();
  nodes_.push_back(Node{f.kind(), 0, 0, 0, {}});
  auto index = [&](const std::string& name) {
    auto i = universe_.vars().index_of(name);
    if (!i) throw ValidationError("variable '" + name + "' is not among the team variables");
    return *i;
  };
  switch (f.kind()) {
    case Kind::Var:
    case Kind::NegVar: {
      const std::size_t v = index(f.name());
      const bool wanted = f.kind() == Kind::Var;
      TeamMask bad = 0;
      for (std::size_t i = 0; i < members.size(); ++i)
        if (members[i][v] != wanted) bad |= TeamMask{1} << i;
      nodes_[id].violators = bad;
      break;
    }
    case Kind::Dep: {
      std::vector<std::size_t> args;
      for (const auto& a : f.dep_args()) args.push_back(index(a));
      const std::size_t target = index(f.name());
      std::vector<TeamMask> conflicts(members.size(), 0);
      for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = 0; j < members.size(); ++j) {
          const bool agree = std::all_of(args.begin(), args.end(), [&](std::size_t a) {
            return members[i][a] == members[j][a];
          });
          if (agree && members[i][target] != members[j][target]) conflicts[i] |= TeamMask{1} << j;
        }
      }
      nodes_[id].conflicts = std::move(conflicts);
      break;
    }
    case Kind::Placeholder:
      throw ValidationError("cannot evaluate a context; substitute its placeholders first");
    case Kind::Bottom:
    case Kind::Top:
      break;
    default: {
      const std::size_t l = compile(f.lhs(), members);
      const std::size_t r = compile(f.rhs(), members);
      nodes_[id].lhs = l;
      nodes_[id].rhs = r;
    }
  }
  return id;
}

bool EvalSession::sat(std::size_t node, TeamMask mask) {
  ++stats_.teams_visited;
  const Node& n = nodes_[node];
  if (is_atom_kind(n.kind) || !options_.memoize) return compute(node, mask);
  auto& table = memo_[node];
  if (auto it = table.find(mask); it != table.end()) {
    ++stats_.cache_hits;
    return it->second;
  }
  const bool result = compute(node, mask);
  table.emplace(mask, result);
  return result;
}

bool EvalSession::compute(std::size_t node, TeamMask mask) {
  const Node& n = nodes_[node];
  switch (n.kind) {
    case Kind::Var:
    case Kind::NegVar:
      return (mask & n.violators) == 0;
    case Kind::Bottom:
      return mask == 0;
    case Kind::Top:
      return true;
    case Kind::Dep:
      for (TeamMask rest = mask; rest; rest &= rest - 1) {
        const auto i = static_cast<std::size_t>(std::countr_zero(rest));
        if (n.conflicts[i] & mask) return false;
      }
      return true;
    case Kind::And:
      return sat(n.lhs, mask) && sat(n.rhs, mask);
    case Kind::IDisj:
      return sat(n.lhs, mask) || sat(n.rhs, mask);
    case Kind::Tensor: {
      // By downward closure it suffices to pair each Y ⊆ X with X∖Y, and
      // members whose singleton fails a side can never go to that side.
      TeamMask left = 0, right = 0;
      for (TeamMask rest = mask; rest; rest &= rest - 1) {
        const TeamMask one = rest & (~rest + 1);
        if (sat(n.lhs, one)) left |= one;
        if (sat(n.rhs, one)) right |= one;
      }
      const TeamMask forced = mask & ~right;
      if ((forced & ~left) != 0) return false;
      const TeamMask free = mask & left & right;
      TeamMask s = free;
      while (true) {
        const TeamMask y = forced | s;
        if (sat(n.lhs, y) && sat(n.rhs, mask & ~y)) return true;
        if (s == 0) return false;
        s = (s - 1) & free;
      }
    }
    case Kind::Impl: {
      if (options_.memoize) {
        // Every subteam is reached by dropping one member at a time, and the
        // memo makes each (node, mask) pair cost O(|mask|).
        if (sat(n.lhs, mask) && !sat(n.rhs, mask)) return false;
        for (TeamMask rest = mask; rest; rest &= rest - 1)
          if (!sat(node, mask & ~(rest & (~rest + 1)))) return false;
        return true;
      }
      TeamMask y = mask;
      while (true) {
        if (sat(n.lhs, y) && !sat(n.rhs, y)) return false;
        if (y == 0) return true;
        y = (y - 1) & mask;
      }
    }
    case Kind::Placeholder:
      break;
  }
  throw InvariantViolation("unreachable node kind in evaluation");
}

bool evaluate(const Formula& formula, const Team& team, EvalOptions options) {
  if (team.size() > kMaxUniverseMembers) {
    // Locality: only the formula's own variables matter.
    const VariableSet own = formula_vars(formula);
    if (!own.is_subset_of(team.vars()))
      throw ValidationError("formula has variables outside the team");
    Team restricted = restrict(team, own);
    EvalSession session(formula, restricted, options);
    return session.holds_mask(session.universe_mask());
  }
  EvalSession session(formula, team, options);
  return session.holds_mask(session.universe_mask());
}

void check_cap(const VariableSet& vars, const Limits& limits, const char* operation) {
  const std::size_t cap = limits.force ? kHardMaxVars : std::min(limits.max_vars, kHardMaxVars);
  if (vars.size() > cap)
    throw CapExceeded(std::string(operation) + " over " + std::to_string(vars.size()) +
                      " variables exceeds the cap of " + std::to_string(cap) +
                      (limits.force ? "" : " (use force to raise it)"));
}

VariableSet formula_vars(const Formula& f) { return VariableSet(variable_names(f)); }

TeamFamily truth_set(const Formula& formula, const VariableSet& vars, const Limits& limits) {
  check_cap(vars, limits, "truth set");
  if (!formula_vars(formula).is_subset_of(vars))
    throw ValidationError("formula has variables outside the given variable set");
  EvalSession session(formula, full_team(vars));
  TeamFamily out(vars);
  for (TeamMask m = 0;; ++m) {
    if (session.holds_mask(m)) out.insert(session.to_team(m));
    if (m == session.universe_mask()) break;
  }
  return out;
}

bool valid(const Formula& formula) {
  const VariableSet vars = formula_vars(formula);
  if (vars.size() > 6) throw CapExceeded("validity checks are limited to 6 variables");
  return evaluate(formula, full_team(vars));
}

std::optional<Team> entailment_counterexample(const Formula& phi, const Formula& psi,
                                              const Limits& limits) {
  const VariableSet vars = formula_vars(phi).unite(formula_vars(psi));
  check_cap(vars, limits, "entailment");
  const Team universe = full_team(vars);
  EvalSession lhs(phi, universe), rhs(psi, universe);
  for (TeamMask m : masks_by_size(universe.size()))
    if (lhs.holds_mask(m) && !rhs.holds_mask(m)) return lhs.to_team(m);
  return std::nullopt;
}

bool entails(const Formula& phi, const Formula& psi, const Limits& limits) {
  return !entailment_counterexample(phi, psi, limits).has_value();
}

std::optional<Team> equivalence_counterexample(const Formula& phi, const Formula& psi,
                                               const Limits& limits) {
  const VariableSet vars = formula_vars(phi).unite(formula_vars(psi));
  check_cap(vars, limits, "equivalence");
  const Team universe = full_team(vars);
  EvalSession lhs(phi, universe), rhs(psi, universe);
  for (TeamMask m : masks_by_size(universe.size()))
    if (lhs.holds_mask(m) != rhs.holds_mask(m)) return lhs.to_team(m);
  return std::nullopt;
}

bool equivalent(const Formula& phi, const Formula& psi, const Limits& limits) {
  return !equivalence_counterexample(phi, psi, limits).has_value();
}

PropertyReport check_basic_properties(const Formula& formula, const VariableSet& vars,
                                      const Limits& limits) {
  check_cap(vars, limits, "property check");
  if (!formula_vars(formula).is_subset_of(vars))
    throw ValidationError("formula has variables outside the given variable set");
  PropertyReport report;
  auto violate = [&](bool& flag, const char* property, std::string witness) {
    flag = false;
    report.violations.push_back({property, std::move(witness)});
  };

  const Team universe = full_team(vars);
  EvalSession session(formula, universe);
  const TeamMask full = session.universe_mask();

  if (!session.holds_mask(0)) violate(report.empty_team, "empty team", "the empty team");

  for (TeamMask m = 0;; ++m) {
    if (session.holds_mask(m)) {
      for (TeamMask rest = m; rest; rest &= rest - 1) {
        const TeamMask smaller = m & ~(rest & (~rest + 1));
        if (!session.holds_mask(smaller)) {
          violate(report.downward_closure, "downward closure",
                  describe(session.to_team(m)) + " satisfies it but its subteam " +
                      describe(session.to_team(smaller)) + " does not");
          break;
        }
      }
    }
    if (m == full) break;
  }

  // Locality: extend with a fresh variable in several ways and compare.
  const VariableSet wide = vars.with(fresh_variable(vars));
  const Team wide_universe = full_team(wide);
  EvalSession wide_session(formula, wide_universe);
  const std::uint32_t fresh_bit = 1u << vars.size();
  const auto members = universe.members();
  for (TeamMask m = 0;; ++m) {
    const bool expected = session.holds_mask(m);
    Team zeros(wide), ones(wide), both(wide), mixed(wide);
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (!(m >> i & 1u)) continue;
      const std::uint32_t r = members[i].bits;
      zeros.insert(Valuation{r});
      ones.insert(Valuation{r | fresh_bit});
      both.insert(Valuation{r});
      both.insert(Valuation{r | fresh_bit});
      mixed.insert(Valuation{(std::popcount(r) % 2) ? (r | fresh_bit) : r});
    }
    for (const Team* t : {&zeros, &ones, &both, &mixed}) {
      if (wide_session.holds(*t) != expected) {
        violate(report.locality, "locality",
                describe(session.to_team(m)) + " and its extension " + describe(*t) +
                    " disagree");
        break;
      }
    }
    if (!report.locality || m == full) break;
  }

  if (formula.kind() == Kind::IDisj && session.holds_mask(full)) {
    EvalSession left(formula.lhs(), universe), right(formula.rhs(), universe);
    if (!left.holds_mask(full) && !right.holds_mask(full))
      violate(report.disjunction, "disjunction property",
              "the disjunction is valid but neither disjunct is");
  }
  return report;
}

}  // namespace tsw
