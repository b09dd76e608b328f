#include "tsw/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "tsw/error.hpp"

namespace tsw {

struct Formula::Node {
  Kind kind;
  std::string name;
  std::vector<std::string> args;
  int index = 0;
  std::optional<Formula> lhs;
  std::optional<Formula> rhs;
  std::size_t size = 1;
};

bool is_atom_kind(Kind k) {
  switch (k) {
    case Kind::And:
    case Kind::Tensor:
    case Kind::IDisj:
    case Kind::Impl:
      return false;
    default:
      return true;
  }
}

std::string_view fragment_name(Fragment f) {
  switch (f) {
    case Fragment::PT0: return "PT0";
    case Fragment::PD: return "PD";
    case Fragment::InqL: return "InqL";
  }
  return "?";
}

namespace {

bool is_placeholder_name(std::string_view name) {
  if (name.size() < 2 || name[0] != 'r') return false;
  return std::all_of(name.begin() + 1, name.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

void require_variable_name(const std::string& name) {
  if (is_placeholder_name(name))
    throw ValidationError("'" + name + "' is reserved for placeholders");
  if (!is_valid_variable_name(name))
    throw ValidationError("invalid variable name '" + name + "'");
}

}  // namespace

bool is_valid_variable_name(std::string_view name) {
  if (name.empty() || !(name[0] >= 'a' && name[0] <= 'z')) return false;
  for (char c : name) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  if (name == "bot" || name == "top") return false;
  return !is_placeholder_name(name);
}

Formula Formula::var(std::string name) {
  require_variable_name(name);
  return Formula(std::make_shared<const Node>(Node{Kind::Var, std::move(name), {}, 0, {}, {}, 1}));
}

Formula Formula::neg_var(std::string name) {
  require_variable_name(name);
  return Formula(std::make_shared<const Node>(Node{Kind::NegVar, std::move(name), {}, 0, {}, {}, 1}));
}

Formula Formula::bottom() {
  static const Formula instance(std::make_shared<const Node>(Node{Kind::Bottom, {}, {}, 0, {}, {}, 1}));
  return instance;
}

Formula Formula::top() {
  static const Formula instance(std::make_shared<const Node>(Node{Kind::Top, {}, {}, 0, {}, {}, 1}));
  return instance;
}

Formula Formula::dep(std::vector<std::string> args, std::string target) {
  for (const auto& a : args) require_variable_name(a);
  require_variable_name(target);
  return Formula(std::make_shared<const Node>(
      Node{Kind::Dep, std::move(target), std::move(args), 0, {}, {}, 1}));
}

Formula Formula::placeholder(int index) {
  if (index < 1) throw ValidationError("placeholder indices start at 1");
  return Formula(std::make_shared<const Node>(Node{Kind::Placeholder, {}, {}, index, {}, {}, 1}));
}

Formula Formula::binary(Kind k, Formula lhs, Formula rhs) {
  if (is_atom_kind(k)) throw ValidationError("binary() needs a connective kind");
  std::size_t size = 1 + lhs.size() + rhs.size();
  return Formula(std::make_shared<const Node>(
      Node{k, {}, {}, 0, std::move(lhs), std::move(rhs), size}));
}

Kind Formula::kind() const { return node_->kind; }
const std::string& Formula::name() const { return node_->name; }
std::span<const std::string> Formula::dep_args() const { return node_->args; }
int Formula::placeholder_index() const { return node_->index; }
const Formula& Formula::lhs() const { return *node_->lhs; }
const Formula& Formula::rhs() const { return *node_->rhs; }
std::size_t Formula::size() const { return node_->size; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind || x.size != y.size) return false;
  switch (x.kind) {
    case Kind::Var:
    case Kind::NegVar:
      return x.name == y.name;
    case Kind::Bottom:
    case Kind::Top:
      return true;
    case Kind::Dep:
      return x.name == y.name && x.args == y.args;
    case Kind::Placeholder:
      return x.index == y.index;
    default:
      return *x.lhs == *y.lhs && *x.rhs == *y.rhs;
  }
}

bool operator<(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return false;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind) return x.kind < y.kind;
  switch (x.kind) {
    case Kind::Var:
    case Kind::NegVar:
      return x.name < y.name;
    case Kind::Bottom:
    case Kind::Top:
      return false;
    case Kind::Dep:
      if (x.name != y.name) return x.name < y.name;
      return x.args < y.args;
    case Kind::Placeholder:
      return x.index < y.index;
    default:
      if (*x.lhs == *y.lhs) return *x.rhs < *y.rhs;
      return *x.lhs < *y.lhs;
  }
}

namespace {

// Binding strength; higher binds tighter.
int precedence(Kind k) {
  switch (k) {
    case Kind::Impl: return 1;
    case Kind::IDisj: return 2;
    case Kind::Tensor: return 3;
    case Kind::And: return 4;
    default: return 5;
  }
}

std::string_view token(Kind k) {
  switch (k) {
    case Kind::Impl: return " -> ";
    case Kind::IDisj: return " | ";
    case Kind::Tensor: return " + ";
    case Kind::And: return " & ";
    default: return "";
  }
}

void print_into(const Formula& f, const PrintOptions& options, std::string& out) {
  switch (f.kind()) {
    case Kind::Var:
      out += f.name();
      return;
    case Kind::NegVar:
      out += '!';
      out += f.name();
      return;
    case Kind::Bottom:
      out += "bot";
      return;
    case Kind::Top:
      out += options.top_as_implication ? "(bot -> bot)" : "top";
      return;
    case Kind::Dep: {
      out += "=(";
      auto args = f.dep_args();
      for (std::size_t i = 0; i < args.size(); ++i) {
        out += args[i];
        out += i + 1 < args.size() ? "," : ";";
      }
      out += f.name();
      out += ')';
      return;
    }
    case Kind::Placeholder:
      out += 'r';
      out += std::to_string(f.placeholder_index());
      return;
    default:
      break;
  }
  const int prec = precedence(f.kind());
  const bool right_assoc = f.kind() == Kind::Impl;
  const int left_min = right_assoc ? prec + 1 : prec;
  const int right_min = right_assoc ? prec : prec + 1;
  // Mixed binary operators are always bracketed, so `(p & q) + r` rather
  // than relying on the reader's knowledge of precedence.
  auto child = [&](const Formula& c, int min_prec) {
    const bool paren =
        precedence(c.kind()) < min_prec || (c.is_binary() && c.kind() != f.kind());
    if (paren) out += '(';
    print_into(c, options, out);
    if (paren) out += ')';
  };
  child(f.lhs(), left_min);
  out += token(f.kind());
  child(f.rhs(), right_min);
}

}  // namespace

std::string print(const Formula& f, const PrintOptions& options) {
  std::string out;
  print_into(f, options, out);
  return out;
}

std::vector<std::string> variable_names(const Formula& f) {
  std::set<std::string> names;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    switch (g.kind()) {
      case Kind::Var:
      case Kind::NegVar:
        names.insert(g.name());
        break;
      case Kind::Dep:
        names.insert(g.name());
        names.insert(g.dep_args().begin(), g.dep_args().end());
        break;
      case Kind::Bottom:
      case Kind::Top:
      case Kind::Placeholder:
        break;
      default:
        walk(g.lhs());
        walk(g.rhs());
    }
  };
  walk(f);
  return {names.begin(), names.end()};
}

std::set<int> placeholder_indices(const Formula& f) {
  std::set<int> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.kind() == Kind::Placeholder) {
      out.insert(g.placeholder_index());
    } else if (g.is_binary()) {
      walk(g.lhs());
      walk(g.rhs());
    }
  };
  walk(f);
  return out;
}

bool is_context(const Formula& f) { return !placeholder_indices(f).empty(); }

std::vector<Formula> subformulas(const Formula& f) {
  std::vector<Formula> out;
  std::set<Formula> seen;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.is_binary()) {
      walk(g.lhs());
      walk(g.rhs());
    }
    if (seen.insert(g).second) out.push_back(g);
  };
  walk(f);
  return out;
}

bool fragment_check(const Formula& f, Fragment fragment) {
  switch (f.kind()) {
    case Kind::Var:
    case Kind::Bottom:
    case Kind::Top:
    case Kind::Placeholder:
      return true;
    case Kind::NegVar:
    case Kind::Dep:
      return fragment != Fragment::InqL;
    case Kind::Tensor:
      if (fragment == Fragment::InqL) return false;
      break;
    case Kind::IDisj:
    case Kind::Impl:
      if (fragment == Fragment::PD) return false;
      break;
    case Kind::And:
      break;
  }
  return fragment_check(f.lhs(), fragment) && fragment_check(f.rhs(), fragment);
}

Formula substitute(const Formula& context, std::span<const Formula> substituents) {
  switch (context.kind()) {
    case Kind::Placeholder: {
      auto i = static_cast<std::size_t>(context.placeholder_index());
      if (i > substituents.size())
        throw ValidationError("no substituent for placeholder r" + std::to_string(i));
      return substituents[i - 1];
    }
    case Kind::And:
    case Kind::Tensor:
    case Kind::IDisj:
    case Kind::Impl: {
      Formula l = substitute(context.lhs(), substituents);
      Formula r = substitute(context.rhs(), substituents);
      if (l == context.lhs() && r == context.rhs()) return context;
      return Formula::binary(context.kind(), std::move(l), std::move(r));
    }
    default:
      return context;
  }
}

Formula top_instance(const Formula& context) {
  auto indices = placeholder_indices(context);
  std::size_t m = indices.empty() ? 0 : static_cast<std::size_t>(*indices.rbegin());
  std::vector<Formula> tops(m, Formula::top());
  return substitute(context, tops);
}

std::vector<std::size_t> SyntaxTree::leaves() const {
  std::vector<std::size_t> out;
  for (const auto& n : nodes)
    if (n.is_leaf()) out.push_back(n.id);
  return out;
}

bool SyntaxTree::is_ancestor(std::size_t x, std::size_t y) const {
  auto p = nodes[y].parent;
  while (p) {
    if (*p == x) return true;
    p = nodes[*p].parent;
  }
  return false;
}

SyntaxTree syntax_tree(const Formula& f) {
  SyntaxTree tree;
  tree.nodes.reserve(f.size());
  std::function<std::size_t(const Formula&, std::optional<std::size_t>, std::size_t)> build =
      [&](const Formula& g, std::optional<std::size_t> parent, std::size_t depth) {
        const std::size_t id = tree.nodes.size();
        tree.nodes.push_back(SyntaxNode{id, g, parent, std::nullopt, depth});
        if (g.is_binary()) {
          const std::size_t l = build(g.lhs(), id, depth + 1);
          const std::size_t r = build(g.rhs(), id, depth + 1);
          tree.nodes[id].children = std::pair{l, r};
        }
        return id;
      };
  build(f, std::nullopt, 0);
  return tree;
}

}  // namespace tsw
