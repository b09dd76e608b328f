#include <algorithm>

#include "tsw/definability.hpp"
#include "tsw/error.hpp"

namespace tsw {

namespace {

void require_pd(const Formula& context) {
  if (!fragment_check(context, Fragment::PD))
    throw ValidationError("'" + print(context) + "' is not a PD context");
}

std::size_t highest_placeholder(const Formula& f) {
  auto idx = placeholder_indices(f);
  return idx.empty() ? 0 : static_cast<std::size_t>(*idx.rbegin());
}

Formula normalize_consistent(const Formula& f) {
  switch (f.kind()) {
    case Kind::And:
      return Formula::conj(normalize_consistent(f.lhs()), normalize_consistent(f.rhs()));
    case Kind::Tensor: {
      const bool left = is_consistent(f.lhs());
      const bool right = is_consistent(f.rhs());
      // (ψ ⊗ χ) ≈ (⊥ ⊗ χ') ≈ χ' when exactly one side is inconsistent.
      if (!left) return normalize_consistent(f.rhs());
      if (!right) return normalize_consistent(f.lhs());
      return Formula::tensor(normalize_consistent(f.lhs()), normalize_consistent(f.rhs()));
    }
    default:
      return f;
  }
}

}  // namespace

bool is_consistent(const Formula& context) {
  require_pd(context);
  const Formula instance = top_instance(context);
  const VariableSet vars = formula_vars(instance);
  if (vars.size() > 6) throw CapExceeded("consistency checks are limited to 6 variables");
  EvalSession session(instance, full_team(vars));
  // Downward closure: a nonempty satisfier exists iff a singleton one does.
  for (std::size_t i = 0; i < session.universe().size(); ++i)
    if (session.holds_mask(TeamMask{1} << i)) return true;
  return false;
}

Formula normalize(const Formula& context) {
  require_pd(context);
  if (!is_consistent(context))
    throw ValidationError("'" + print(context) + "' is inconsistent and cannot be normalized");
  Formula out = normalize_consistent(context);
  for (const Formula& sub : subformulas(out))
    if (!is_consistent(sub))
      throw InvariantViolation("normalized context keeps the inconsistent subformula '" +
                               print(sub) + "'");
  return out;
}

std::vector<Formula> validation_pool() {
  return {Formula::bottom(),        Formula::top(),
          Formula::var("p"),        Formula::neg_var("p"),
          Formula::dep({}, "p"),    Formula::tensor(Formula::var("p"), Formula::neg_var("p"))};
}

bool pool_equivalent(const Formula& a, const Formula& b) {
  const std::size_t m = std::max(highest_placeholder(a), highest_placeholder(b));
  const auto pool = validation_pool();
  std::vector<std::size_t> choice(m, 0);
  const Limits limits{kHardMaxVars, true};
  while (true) {
    std::vector<Formula> theta;
    for (std::size_t c : choice) theta.push_back(pool[c]);
    if (!equivalent(substitute(a, theta), substitute(b, theta), limits)) return false;
    std::size_t i = 0;
    while (i < m && ++choice[i] == pool.size()) choice[i++] = 0;
    if (i == m) return true;
  }
}

bool check_monotone(const Formula& context, std::span<const Formula> lower,
                    std::span<const Formula> upper, const Limits& limits) {
  require_pd(context);
  if (lower.size() != upper.size())
    throw ValidationError("instance vectors differ in length");
  if (lower.size() < highest_placeholder(context))
    throw ValidationError("instance vectors are shorter than the context's placeholders");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!entails(lower[i], upper[i], limits))
      throw ValidationError("precondition fails: instance " + std::to_string(i + 1) + " '" +
                            print(lower[i]) + "' does not entail '" + print(upper[i]) + "'");
  }
  return entails(substitute(context, lower), substitute(context, upper), limits);
}

}  // namespace tsw
