#include "tsw/expressiveness.hpp"

#include <optional>

#include "tsw/error.hpp"

namespace tsw {

namespace {

// Left-folded big operator; `empty` for the empty list.
Formula fold(Kind k, const std::vector<Formula>& items, const Formula& empty) {
  if (items.empty()) return empty;
  Formula acc = items.front();
  for (std::size_t i = 1; i < items.size(); ++i) acc = Formula::binary(k, acc, items[i]);
  return acc;
}

// p^1 = p, p^0 = ¬p, conjoined over N.
Formula valuation_literal_pd(const VariableSet& vars, Valuation v) {
  std::vector<Formula> lits;
  for (std::size_t i = 0; i < vars.size(); ++i)
    lits.push_back(v[i] ? Formula::var(vars[i]) : Formula::neg_var(vars[i]));
  return fold(Kind::And, lits, Formula::top());
}

Formula inql_top() { return Formula::impl(Formula::bottom(), Formula::bottom()); }

Formula valuation_literal_inql(const VariableSet& vars, Valuation v) {
  std::vector<Formula> lits;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    Formula p = Formula::var(vars[i]);
    lits.push_back(v[i] ? p : Formula::negation(p));
  }
  return fold(Kind::And, lits, inql_top());
}

void require_nabla_member(const TeamFamily& family) {
  if (!is_downward_closed(family))
    throw ValidationError("family must contain the empty team and be closed under subteams");
}

Limits synthesis_limits() { return Limits{kHardMaxVars, true}; }

}  // namespace

Formula theta_star(const Team& x, const VariableSet& vars, const SynthOptions& options) {
  if (!(x.vars() == vars)) throw ValidationError("team is not over the given variable set");
  if (x.empty()) throw ValidationError("theta_star needs a nonempty team");

  std::vector<Formula> constancy;
  for (const auto& p : vars) constancy.push_back(Formula::dep({}, p));
  const Formula all_constant = fold(Kind::And, constancy, Formula::top());

  const std::vector<Formula> copies(x.size() - 1, all_constant);
  const Formula covered = fold(Kind::Tensor, copies, Formula::bottom());

  std::vector<Formula> outside;
  const Team complement = full_team(vars).minus(x);
  for (Valuation v : complement.members()) outside.push_back(valuation_literal_pd(vars, v));
  const Formula excluded = fold(Kind::Tensor, outside, Formula::bottom());

  if (options.raw) return Formula::tensor(covered, excluded);
  if (covered.kind() == Kind::Bottom) return excluded;
  if (excluded.kind() == Kind::Bottom) return covered;
  return Formula::tensor(covered, excluded);
}

Formula synth_pd(const TeamFamily& family, const SynthOptions& options) {
  require_nabla_member(family);
  const VariableSet& vars = family.vars();
  std::vector<Formula> conjuncts;
  for (const Team& t : enumerate_teams(vars, EnumerationLimits{kHardMaxVars, 0})) {
    if (!t.empty() && !family.contains(t)) conjuncts.push_back(theta_star(t, vars, options));
  }
  if (options.minimize) {
    for (std::size_t i = 0; i < conjuncts.size();) {
      std::vector<Formula> rest = conjuncts;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
      if (truth_set(fold(Kind::And, rest, Formula::top()), vars, synthesis_limits()) == family) {
        conjuncts = std::move(rest);
      } else {
        ++i;
      }
    }
  }
  return fold(Kind::And, conjuncts, Formula::top());
}

Formula synth_inql(const TeamFamily& family, const SynthOptions& options) {
  require_nabla_member(family);
  const VariableSet& vars = family.vars();
  const Team everything = full_team(vars);
  std::vector<Formula> disjuncts;
  for (const Team& x : family.teams()) {
    bool maximal = true;
    for (const Team& y : family.teams()) {
      if (x.is_proper_subset_of(y)) {
        maximal = false;
        break;
      }
    }
    if (!maximal) continue;
    if (x.empty()) {
      disjuncts.push_back(Formula::bottom());
    } else if (x == everything && !options.raw) {
      disjuncts.push_back(inql_top());
    } else {
      std::vector<Formula> rows;
      for (Valuation v : x.members()) rows.push_back(valuation_literal_inql(vars, v));
      if (rows.size() == 1) {
        disjuncts.push_back(rows.front());
      } else {
        // Classical disjunction of flat formulas: ¬(¬a1 ∧ ... ∧ ¬ak).
        std::vector<Formula> negated;
        for (auto& r : rows) negated.push_back(Formula::negation(r));
        disjuncts.push_back(Formula::negation(fold(Kind::And, negated, inql_top())));
      }
    }
  }
  return fold(Kind::IDisj, disjuncts, Formula::bottom());
}

Formula translate(const Formula& formula, SynthTarget target, const Limits& limits,
                  const SynthOptions& options) {
  if (is_context(formula)) throw ValidationError("cannot translate a context");
  const TeamFamily family = truth_set(formula, formula_vars(formula), limits);
  return target == SynthTarget::PD ? synth_pd(family, options) : synth_inql(family, options);
}

Formula dep_to_inql(const std::vector<std::string>& args, const std::string& target) {
  auto decided = [](const std::string& name) {
    Formula p = Formula::var(name);
    return Formula::idisj(p, Formula::negation(p));
  };
  if (args.empty()) return decided(target);
  std::vector<Formula> antecedent;
  for (const auto& a : args) antecedent.push_back(decided(a));
  return Formula::impl(fold(Kind::And, antecedent, inql_top()), decided(target));
}

}  // namespace tsw
