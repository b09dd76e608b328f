#include "tsw/random.hpp"

#include <algorithm>

#include "tsw/error.hpp"

namespace tsw {

namespace {

Formula random_atom(std::mt19937_64& rng, const RandomFormulaOptions& o) {
  const bool inql = o.fragment == Fragment::InqL;
  std::uniform_int_distribution<std::size_t> pick_var(0, o.vars.size() - 1);
  std::uniform_int_distribution<int> pick_kind(0, inql ? 3 : 5);
  switch (pick_kind(rng)) {
    case 0:
    case 1:
      return Formula::var(o.vars[pick_var(rng)]);
    case 2:
      return Formula::bottom();
    case 3:
      return o.allow_top ? Formula::top() : Formula::var(o.vars[pick_var(rng)]);
    case 4:
      return Formula::neg_var(o.vars[pick_var(rng)]);
    default: {
      // =(args;target) with up to two distinct arguments.
      std::vector<std::string> pool = o.vars;
      std::shuffle(pool.begin(), pool.end(), rng);
      const std::string target = pool.back();
      pool.pop_back();
      std::uniform_int_distribution<std::size_t> pick_k(0, std::min<std::size_t>(2, pool.size()));
      pool.resize(pick_k(rng));
      std::sort(pool.begin(), pool.end());
      return Formula::dep(std::move(pool), target);
    }
  }
}

Formula grow(std::mt19937_64& rng, const RandomFormulaOptions& o, std::size_t depth) {
  std::bernoulli_distribution stop(depth == 0 ? 1.0 : 0.35);
  if (stop(rng)) return random_atom(rng, o);
  std::vector<Kind> ops;
  switch (o.fragment) {
    case Fragment::PT0:
      ops = {Kind::And, Kind::Tensor, Kind::IDisj, Kind::Impl};
      break;
    case Fragment::PD:
      ops = {Kind::And, Kind::Tensor};
      break;
    case Fragment::InqL:
      ops = {Kind::And, Kind::IDisj, Kind::Impl};
      break;
  }
  std::uniform_int_distribution<std::size_t> pick(0, ops.size() - 1);
  const Kind k = ops[pick(rng)];
  Formula lhs = grow(rng, o, depth - 1);
  Formula rhs = grow(rng, o, depth - 1);
  return Formula::binary(k, std::move(lhs), std::move(rhs));
}

}  // namespace

Formula random_formula(std::mt19937_64& rng, const RandomFormulaOptions& options) {
  if (options.vars.empty()) throw ValidationError("random formulas need at least one variable");
  return grow(rng, options, options.max_depth);
}

Team random_team(std::mt19937_64& rng, const VariableSet& vars) {
  Team out(vars);
  const std::size_t n = out.universe_size();
  std::bernoulli_distribution coin(0.5);
  for (std::uint32_t v = 0; v < n; ++v)
    if (coin(rng)) out.insert(Valuation{v});
  return out;
}

}  // namespace tsw
