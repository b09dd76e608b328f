#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tsw/evaluator.hpp"
#include "tsw/formula.hpp"
#include "tsw/team.hpp"

namespace tsw {

// Semantic clause of a connective ⊛: does team X satisfy ⊛(θ1,...,θm)?
struct ConnectiveSpec {
  enum class Builtin { IDisj, Impl, Contra };

  Builtin builtin;
  std::string name;
  std::size_t arity;
  std::function<bool(std::span<const Formula>, const Team&)> holds;

  static ConnectiveSpec idisj();
  static ConnectiveSpec impl();
  // The contradictory connective: true exactly on the empty team.
  static ConnectiveSpec contra(std::size_t arity);
  // "or", "imp", or "contra" (binary).
  static ConnectiveSpec named(const std::string& name);
};

// Assigns a team over one variable set to every node of a syntax tree,
// indexed by node id.
struct TruthFunction {
  SyntaxTree tree;
  std::vector<Team> assignment;

  const Team& operator[](std::size_t node) const { return assignment[node]; }
};

// One substitution instance and a team on which φ[θ] and ⊛(θ) disagree.
struct Counterexample {
  Formula context;
  std::string connective;
  std::vector<Formula> instances;
  VariableSet variables;
  Team team;
  bool lhs = false;  // team ⊨ φ[θ]
  bool rhs = false;  // team ⊨ ⊛(θ)
  std::size_t battery_index = 0;
  std::string battery_label;
};

// Consistency of a PD context, decided on φ[⊤,...,⊤] over singleton teams.
bool is_consistent(const Formula& context);

// Equivalent context without inconsistent subformulas. Throws on inconsistent
// input.
Formula normalize(const Formula& context);

// Instances used to approximate context equivalence ≈.
std::vector<Formula> validation_pool();

// φ[θ] ≡ ψ[θ] for every assignment of pool formulas to the placeholders.
bool pool_equivalent(const Formula& a, const Formula& b);

// entails(φ[θ], φ[θ']) after checking θi ⊨ θi' for every i.
bool check_monotone(const Formula& context, std::span<const Formula> lower,
                    std::span<const Formula> upper, const Limits& limits = {});

bool verify_truth_function(const TruthFunction& tau, const Formula& context,
                           std::span<const Formula> instances);

// A truth function for φ[θ] over X, present iff X ⊨ φ[θ].
std::optional<TruthFunction> find_truth_function(const Formula& context,
                                                 std::span<const Formula> instances,
                                                 const Team& team);

// Fills inner nodes from leaf teams: ∧ parents need equal children, ⊗ parents
// take the union. Returns nullopt when an ∧ node's children differ.
std::optional<TruthFunction> complete_from_leaves(
    const Formula& context, std::span<const Formula> instances,
    const std::map<std::size_t, Team>& leaf_assignment);

// Y' ⊆ Y, Z' ⊆ Z, both proper subteams of X, Y' ∪ Z' = X.
std::pair<Team, Team> proper_split(const Team& x, const Team& y, const Team& z);

// For each placeholder leaf of syntax_tree(φ): does a strict ancestor carry ⊗?
std::map<std::size_t, bool> leaf_tensor_ancestor_check(const Formula& context);

// vars(φ[⊤,...,⊤]), extended with one fresh variable when that is empty.
VariableSet reduction_variables(const Formula& context);

// Truth function for normalize(φ)[⊤,...,⊤] over 2^N that gives every
// placeholder leaf a proper subteam of 2^N. The tree is that of the
// normalized context.
TruthFunction build_reduced_truth_function(const Formula& context, const VariableSet& vars);

struct BatteryEntry {
  std::string label;
  std::vector<Formula> instances;
};

// Instance vectors tried against a candidate context. `vars` is the variable
// set N' on which Θ*_{2^N'} is built.
std::vector<BatteryEntry> refutation_battery(const ConnectiveSpec& c, const VariableSet& vars,
                                             bool extended = false);

// First battery entry on which φ[θ] and ⊛(θ) differ, if any.
std::optional<Counterexample> find_counterexample(const Formula& context, const ConnectiveSpec& c,
                                                  bool extended = false);

// As find_counterexample for ∨ and →; an exhausted battery contradicts the
// non-definability theorems and raises InvariantViolation.
Counterexample refute_uniform_definition(const Formula& context, const ConnectiveSpec& c,
                                         bool extended = false);

// Every PD context over the pool with at most `max_size` nodes, children of ∧
// and ⊗ ordered by printed form (commutative duplicates dropped).
std::vector<Formula> enumerate_contexts(std::span<const Formula> atom_pool, std::size_t max_size);

inline constexpr std::size_t kMaxSearchSize = 9;

std::vector<Formula> default_atom_pool();

struct SearchReport {
  std::string connective;
  std::size_t max_size = 0;
  std::size_t candidates = 0;
  std::size_t refuted = 0;
  // Counterexamples per battery label, in battery order.
  std::vector<std::pair<std::string, std::size_t>> by_instance;
  std::vector<Formula> unrefuted;
  std::vector<Counterexample> counterexamples;
  double elapsed_ms = 0;
  std::uint64_t seed = 0;
};

struct SearchOptions {
  std::size_t jobs = 1;
  bool extended = false;
  bool keep_counterexamples = false;
  std::uint64_t seed = 0;
};

SearchReport search_contexts(const ConnectiveSpec& c, std::span<const Formula> atom_pool,
                             std::size_t max_size, const SearchOptions& options = {});

struct ConditionWitness {
  std::string condition;  // "i", "ii" or "iii"
  std::string claim;
  bool holds = false;
};

struct ConditionReport {
  std::string connective;
  std::vector<ConditionWitness> witnesses;

  bool all_hold() const;
};

// Evaluates the recorded witnesses of the three sufficient conditions for
// non-definability in PD.
ConditionReport condition_check(const ConnectiveSpec& c);

}  // namespace tsw
