#include <algorithm>
#include <bit>

#include "tsw/definability.hpp"
#include "tsw/error.hpp"

namespace tsw {

namespace {

void require_pd_context(const Formula& context) {
  if (!fragment_check(context, Fragment::PD))
    throw ValidationError("'" + print(context) + "' is not a PD context");
}

// φ[θ] compiled over a universe team, with every node of the context's
// syntax tree mapped to the session node evaluating its instance.
struct CompiledInstance {
  SyntaxTree tree;
  EvalSession session;
  std::vector<std::size_t> node_map;

  CompiledInstance(const Formula& context, std::span<const Formula> instances,
                   const Team& universe)
      : tree(syntax_tree(context)), session(substitute(context, instances), universe) {
    // Pre-order of φ[θ] is pre-order of φ with each r_i expanded to θ_i.
    node_map.resize(tree.size());
    std::size_t cursor = 0;
    for (const auto& node : tree.nodes) {
      node_map[node.id] = cursor;
      cursor += node.label.kind() == Kind::Placeholder
                    ? instances[static_cast<std::size_t>(node.label.placeholder_index()) - 1].size()
                    : 1;
    }
  }

  bool holds(std::size_t node, TeamMask mask) { return session.holds_at(node_map[node], mask); }
};

void require_instances(const Formula& context, std::span<const Formula> instances) {
  for (const auto& t : instances)
    if (is_context(t)) throw ValidationError("instances must be placeholder-free");
  auto idx = placeholder_indices(context);
  if (!idx.empty() && static_cast<std::size_t>(*idx.rbegin()) > instances.size())
    throw ValidationError("missing instance for placeholder r" + std::to_string(*idx.rbegin()));
}

Team union_of(const std::vector<Team>& teams) {
  Team out(teams.front().vars());
  for (const auto& t : teams) out = out.unite(t);
  return out;
}

// A split Y ∪ (X∖Y) of `mask` satisfying both children, scanning Y downward
// from X.
std::optional<TeamMask> complement_split(CompiledInstance& ci, std::size_t lhs, std::size_t rhs,
                                         TeamMask mask) {
  TeamMask y = mask;
  while (true) {
    if (ci.holds(lhs, y) && ci.holds(rhs, mask & ~y)) return y;
    if (y == 0) return std::nullopt;
    y = (y - 1) & mask;
  }
}

}  // namespace

bool verify_truth_function(const TruthFunction& tau, const Formula& context,
                           std::span<const Formula> instances) {
  require_pd_context(context);
  require_instances(context, instances);
  if (tau.tree.size() != context.size() || !(tau.tree.root().label == context))
    throw ValidationError("truth function tree is not the syntax tree of '" + print(context) + "'");
  if (tau.assignment.size() != tau.tree.size())
    throw ValidationError("truth function does not assign every node");
  const VariableSet& vars = tau.assignment.front().vars();
  for (const auto& t : tau.assignment)
    if (!(t.vars() == vars)) throw ValidationError("truth function mixes variable sets");

  const Team universe = union_of(tau.assignment);
  CompiledInstance ci(context, instances, universe);
  for (const auto& node : tau.tree.nodes) {
    const Team& here = tau[node.id];
    if (!ci.holds(node.id, ci.session.to_mask(here))) return false;
    if (node.parent && !here.is_subset_of(tau[*node.parent])) return false;
    if (!node.children) continue;
    const auto [l, r] = *node.children;
    if (node.label.kind() == Kind::And && !(tau[l] == here && tau[r] == here)) return false;
    if (node.label.kind() == Kind::Tensor && !(tau[l].unite(tau[r]) == here)) return false;
  }
  return true;
}

std::optional<TruthFunction> find_truth_function(const Formula& context,
                                                 std::span<const Formula> instances,
                                                 const Team& team) {
  require_pd_context(context);
  require_instances(context, instances);
  CompiledInstance ci(context, instances, team);
  const TeamMask full = ci.session.universe_mask();
  if (!ci.holds(0, full)) return std::nullopt;

  std::vector<TeamMask> masks(ci.tree.size(), 0);
  masks[0] = full;
  for (const auto& node : ci.tree.nodes) {
    if (!node.children) continue;
    const auto [l, r] = *node.children;
    const TeamMask here = masks[node.id];
    if (node.label.kind() == Kind::And) {
      masks[l] = masks[r] = here;
    } else {
      auto y = complement_split(ci, l, r, here);
      if (!y) throw InvariantViolation("satisfied tensor node without a satisfying split");
      masks[l] = *y;
      masks[r] = here & ~*y;
    }
  }
  TruthFunction tau{std::move(ci.tree), {}};
  for (TeamMask m : masks) tau.assignment.push_back(ci.session.to_team(m));
  return tau;
}

std::optional<TruthFunction> complete_from_leaves(
    const Formula& context, std::span<const Formula> instances,
    const std::map<std::size_t, Team>& leaf_assignment) {
  require_pd_context(context);
  require_instances(context, instances);
  SyntaxTree tree = syntax_tree(context);
  std::vector<std::optional<Team>> teams(tree.size());
  for (std::size_t leaf : tree.leaves()) {
    auto it = leaf_assignment.find(leaf);
    if (it == leaf_assignment.end())
      throw ValidationError("no team for leaf " + std::to_string(leaf));
    teams[leaf] = it->second;
  }
  for (const auto& [id, team] : leaf_assignment) {
    if (id >= tree.size() || !tree[id].is_leaf())
      throw ValidationError("node " + std::to_string(id) + " is not a leaf");
    if (!evaluate(substitute(tree[id].label, instances), team))
      throw ValidationError("leaf " + std::to_string(id) + " team does not satisfy its label");
  }
  // Children have larger ids than their parents.
  for (std::size_t id = tree.size(); id-- > 0;) {
    const auto& node = tree[id];
    if (!node.children) continue;
    const auto [l, r] = *node.children;
    if (node.label.kind() == Kind::And) {
      if (!(*teams[l] == *teams[r])) return std::nullopt;
      teams[id] = teams[l];
    } else {
      teams[id] = teams[l]->unite(*teams[r]);
    }
  }
  TruthFunction tau{std::move(tree), {}};
  for (auto& t : teams) tau.assignment.push_back(std::move(*t));
  if (!verify_truth_function(tau, context, instances))
    throw InvariantViolation("leaf-determined assignment failed verification");
  return tau;
}

std::pair<Team, Team> proper_split(const Team& x, const Team& y, const Team& z) {
  if (x.size() <= 1) throw ValidationError("proper_split needs a team with at least two members");
  if (y.empty() || z.empty()) throw ValidationError("proper_split needs nonempty sides");
  if (!(y.unite(z) == x)) throw ValidationError("proper_split sides must cover the team exactly");
  const bool y_full = y == x;
  const bool z_full = z == x;
  if (!y_full && !z_full) return {y, z};
  if (y_full && z_full) {
    const Valuation a = x.members().front();
    Team rest = x;
    rest.erase(a);
    Team single(x.vars());
    single.insert(a);
    return {rest, single};
  }
  if (y_full) return {x.minus(z), z};
  return {y, x.minus(y)};
}

std::map<std::size_t, bool> leaf_tensor_ancestor_check(const Formula& context) {
  const SyntaxTree tree = syntax_tree(context);
  std::map<std::size_t, bool> out;
  for (std::size_t leaf : tree.leaves()) {
    if (tree[leaf].label.kind() != Kind::Placeholder) continue;
    bool found = false;
    for (auto p = tree[leaf].parent; p && !found; p = tree[*p].parent)
      found = tree[*p].label.kind() == Kind::Tensor;
    out[leaf] = found;
  }
  return out;
}

VariableSet reduction_variables(const Formula& context) {
  VariableSet vars = formula_vars(top_instance(context));
  if (vars.empty()) vars = VariableSet({fresh_variable(vars)});
  return vars;
}

TruthFunction build_reduced_truth_function(const Formula& context, const VariableSet& vars) {
  require_pd_context(context);
  if (vars.empty()) throw ValidationError("the variable set must be nonempty so that |2^N| > 1");
  if (vars.size() > 6) throw CapExceeded("reduced truth functions are limited to 6 variables");
  if (!formula_vars(top_instance(context)).is_subset_of(vars))
    throw ValidationError("the variable set must contain every variable of the context");
  if (!is_consistent(context)) throw ValidationError("the context is inconsistent");
  auto all_covered = [](const Formula& f) {
    auto check = leaf_tensor_ancestor_check(f);
    return std::all_of(check.begin(), check.end(), [](const auto& kv) { return kv.second; });
  };
  if (!all_covered(context))
    throw ValidationError("some placeholder leaf has no tensor ancestor");
  const Formula normal = normalize(context);
  if (!all_covered(normal))
    throw ValidationError("after normalization some placeholder leaf has no tensor ancestor");

  const auto indices = placeholder_indices(normal);
  const std::size_t m = indices.empty() ? 0 : static_cast<std::size_t>(*indices.rbegin());
  const std::vector<Formula> tops(m, Formula::top());
  const Team everything = full_team(vars);
  CompiledInstance ci(normal, tops, everything);
  const TeamMask full = ci.session.universe_mask();
  if (!ci.holds(0, full)) throw ValidationError("the full team does not satisfy the ⊤-instance");

  const SyntaxTree& tree = ci.tree;
  // Split nodes: ⊗ nodes without a ⊗ ancestor that dominate a placeholder.
  std::vector<char> has_placeholder(tree.size(), 0), tensor_above(tree.size(), 0);
  for (std::size_t id = tree.size(); id-- > 0;) {
    const auto& node = tree[id];
    if (node.label.kind() == Kind::Placeholder) has_placeholder[id] = 1;
    if (node.children)
      has_placeholder[id] = has_placeholder[node.children->first] ||
                            has_placeholder[node.children->second];
  }
  for (const auto& node : tree.nodes) {
    if (node.parent)
      tensor_above[node.id] =
          tensor_above[*node.parent] || tree[*node.parent].label.kind() == Kind::Tensor;
  }

  auto nonempty_satisfier = [&](std::size_t node) -> TeamMask {
    for (std::size_t i = 0; i < everything.size(); ++i)
      if (ci.holds(node, TeamMask{1} << i)) return TeamMask{1} << i;
    throw InvariantViolation("consistent subformula without a nonempty satisfier");
  };

  std::vector<TeamMask> masks(tree.size(), 0);
  masks[0] = full;
  for (const auto& node : tree.nodes) {
    if (!node.children) continue;
    const auto [l, r] = *node.children;
    const TeamMask here = masks[node.id];
    if (node.label.kind() == Kind::And) {
      masks[l] = masks[r] = here;
      continue;
    }
    auto y0 = complement_split(ci, l, r, here);
    if (!y0) throw InvariantViolation("satisfied tensor node without a satisfying split");
    TeamMask y = *y0, z = here & ~*y0;
    if (!tensor_above[node.id] && has_placeholder[node.id]) {
      if (here != full) throw InvariantViolation("tensor-free path did not keep the full team");
      if (y == 0) {
        y = nonempty_satisfier(l);
        z = full;
      } else if (z == 0) {
        z = nonempty_satisfier(r);
        y = full;
      }
      auto [ys, zs] = proper_split(everything, ci.session.to_team(y), ci.session.to_team(z));
      y = ci.session.to_mask(ys);
      z = ci.session.to_mask(zs);
    }
    masks[l] = y;
    masks[r] = z;
  }

  TruthFunction tau{tree, {}};
  for (TeamMask mask : masks) tau.assignment.push_back(ci.session.to_team(mask));
  if (!verify_truth_function(tau, normal, tops))
    throw InvariantViolation("reduced truth function failed verification");
  for (const auto& node : tree.nodes)
    if (node.label.kind() == Kind::Placeholder && !tau[node.id].is_proper_subset_of(everything))
      throw InvariantViolation("placeholder leaf kept the full team");
  return tau;
}

}  // namespace tsw
