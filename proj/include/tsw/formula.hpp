#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tsw {

// Node tags. The first six are atoms; the last four are binary connectives.
// Negation exists only as the NegVar atom.
enum class Kind : unsigned char {
  Var,
  NegVar,
  Bottom,
  Top,
  Dep,
  Placeholder,
  And,     // ∧
  Tensor,  // ⊗
  IDisj,   // ∨ (intuitionistic disjunction)
  Impl,    // → (intuitionistic implication)
};

bool is_atom_kind(Kind k);

enum class Fragment { PT0, PD, InqL };

std::string_view fragment_name(Fragment f);

// True iff `name` is a legal variable name: matches [a-z][a-zA-Z0-9_]* and is
// neither a keyword (bot, top) nor a placeholder name (r1, r2, ...).
bool is_valid_variable_name(std::string_view name);

// Immutable formula of PT0 extended with ⊤ and placeholders. Cheap to copy;
// subtrees are shared.
class Formula {
 public:
  static Formula var(std::string name);
  static Formula neg_var(std::string name);
  static Formula bottom();
  static Formula top();
  // =(args;target). Empty args is the constancy atom =(target).
  static Formula dep(std::vector<std::string> args, std::string target);
  static Formula placeholder(int index);
  static Formula binary(Kind k, Formula lhs, Formula rhs);

  static Formula conj(Formula a, Formula b) { return binary(Kind::And, std::move(a), std::move(b)); }
  static Formula tensor(Formula a, Formula b) { return binary(Kind::Tensor, std::move(a), std::move(b)); }
  static Formula idisj(Formula a, Formula b) { return binary(Kind::IDisj, std::move(a), std::move(b)); }
  static Formula impl(Formula a, Formula b) { return binary(Kind::Impl, std::move(a), std::move(b)); }
  // φ → ⊥
  static Formula negation(Formula a) { return impl(std::move(a), bottom()); }

  Kind kind() const;
  bool is_atom() const { return is_atom_kind(kind()); }
  bool is_binary() const { return !is_atom(); }

  // Variable name of Var/NegVar, target of Dep.
  const std::string& name() const;
  std::span<const std::string> dep_args() const;
  int placeholder_index() const;
  const Formula& lhs() const;
  const Formula& rhs() const;

  // AST node count; a dependence atom counts as one node.
  std::size_t size() const;

  friend bool operator==(const Formula& a, const Formula& b);
  // Total structural order, used for deterministic containers.
  friend bool operator<(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

enum class ParseMode {
  PT0,   // `~p` and `!p` are the negated-variable atom
  InqL,  // `~φ` is sugar for φ -> bot; `!p` is still the atom
};

Formula parse(std::string_view text, ParseMode mode = ParseMode::PT0);

struct PrintOptions {
  // Render ⊤ as `bot -> bot` (useful for InqL-only consumers).
  bool top_as_implication = false;
};

// Canonical text. Parentheses appear around a child using a different
// connective and where associativity needs them. parse(print(φ)) == φ.
std::string print(const Formula& f, const PrintOptions& options = {});

// Sorted, duplicate-free variable names occurring in f (Dep arguments and
// targets included, placeholders excluded).
std::vector<std::string> variable_names(const Formula& f);

std::set<int> placeholder_indices(const Formula& f);
bool is_context(const Formula& f);

// Inductive Sub(φ): atoms are not decomposed, structurally equal subformulas
// are kept once, order is post-order of first occurrence.
std::vector<Formula> subformulas(const Formula& f);

bool fragment_check(const Formula& f, Fragment fragment);

// Replaces every placeholder r_i with substituents[i-1].
Formula substitute(const Formula& context, std::span<const Formula> substituents);

// Instantiates every placeholder with ⊤.
Formula top_instance(const Formula& context);

struct SyntaxNode {
  std::size_t id = 0;
  Formula label;
  std::optional<std::size_t> parent;
  // Either both set (binary node) or neither (leaf).
  std::optional<std::pair<std::size_t, std::size_t>> children;
  std::size_t depth = 0;

  bool is_leaf() const { return !children.has_value(); }
};

// Full binary tree of a formula. Node ids are assigned in pre-order, so the
// root is node 0 and every parent id is smaller than its children's ids.
struct SyntaxTree {
  std::vector<SyntaxNode> nodes;

  const SyntaxNode& root() const { return nodes.front(); }
  const SyntaxNode& operator[](std::size_t id) const { return nodes[id]; }
  std::size_t size() const { return nodes.size(); }
  std::vector<std::size_t> leaves() const;
  // Strict ancestor relation x ≺ y.
  bool is_ancestor(std::size_t x, std::size_t y) const;
};

SyntaxTree syntax_tree(const Formula& f);

}  // namespace tsw
