#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tsw/formula.hpp"
#include "tsw/team.hpp"

namespace tsw {

// Subteams of a session's universe, one bit per universe member.
using TeamMask = std::uint64_t;
inline constexpr std::size_t kMaxUniverseMembers = 64;

struct EvalOptions {
  bool memoize = true;
};

struct EvalStats {
  std::size_t cache_hits = 0;
  std::size_t teams_visited = 0;
};

// Evaluates one placeholder-free formula on subteams of a fixed universe team.
// Memo entries are keyed by (node id, subteam mask). Not thread-safe; use one
// session per thread.
class EvalSession {
 public:
  EvalSession(const Formula& formula, const Team& universe, EvalOptions options = {});

  const Team& universe() const { return universe_; }
  TeamMask universe_mask() const { return full_; }
  TeamMask to_mask(const Team& subteam) const;
  Team to_team(TeamMask mask) const;

  // X ⊨ φ for X ⊆ universe.
  bool holds(const Team& subteam) { return holds_mask(to_mask(subteam)); }
  bool holds_mask(TeamMask mask) { return sat(0, mask); }

  // Evaluation at an inner node. Node ids follow syntax_tree(formula).
  bool holds_at(std::size_t node, TeamMask mask) { return sat(node, mask); }
  std::size_t node_count() const { return nodes_.size(); }

  const EvalStats& stats() const { return stats_; }

 private:
  struct Node {
    Kind kind;
    std::size_t lhs = 0;
    std::size_t rhs = 0;
    // Members violating a literal atom.
    TeamMask violators = 0;
    // Dep atoms: per member, the members that agree on the arguments but not
    // on the target.
    std::vector<TeamMask> conflicts;
  };

  std::size_t compile(const Formula& f, const std::vector<Valuation>& members);
  bool sat(std::size_t node, TeamMask mask);
  bool compute(std::size_t node, TeamMask mask);

  Team universe_;
  std::vector<Valuation> members_;
  TeamMask full_ = 0;
  EvalOptions options_;
  std::vector<Node> nodes_;
  std::vector<std::unordered_map<TeamMask, bool>> memo_;
  EvalStats stats_;
};

// X ⊨ φ. φ must be placeholder-free with variables among X.vars.
bool evaluate(const Formula& formula, const Team& team, EvalOptions options = {});

struct Limits {
  std::size_t max_vars = 3;
  // Lifts the cap to the hard maximum.
  bool force = false;
};
inline constexpr std::size_t kHardMaxVars = 4;

void check_cap(const VariableSet& vars, const Limits& limits, const char* operation);

VariableSet formula_vars(const Formula& f);

// ⟦φ⟧_N.
TeamFamily truth_set(const Formula& formula, const VariableSet& vars, const Limits& limits = {});

// Every team satisfies φ; checked on the full team over vars(φ).
bool valid(const Formula& formula);

// A team over vars(φ) ∪ vars(ψ) with X ⊨ φ and X ⊭ ψ, if any.
std::optional<Team> entailment_counterexample(const Formula& phi, const Formula& psi,
                                              const Limits& limits = {});
bool entails(const Formula& phi, const Formula& psi, const Limits& limits = {});

// A team on which exactly one of φ, ψ holds, if any.
std::optional<Team> equivalence_counterexample(const Formula& phi, const Formula& psi,
                                               const Limits& limits = {});
bool equivalent(const Formula& phi, const Formula& psi, const Limits& limits = {});

struct PropertyViolation {
  std::string property;
  std::string witness;
};

struct PropertyReport {
  bool empty_team = true;
  bool downward_closure = true;
  bool locality = true;
  bool disjunction = true;
  std::vector<PropertyViolation> violations;

  bool ok() const { return violations.empty(); }
};

// Checks the empty team, downward closure, locality (extension by a fresh
// variable) and disjunction properties of φ over N. Violations mean the
// evaluator is wrong.
PropertyReport check_basic_properties(const Formula& formula, const VariableSet& vars,
                                      const Limits& limits = {});

}  // namespace tsw
