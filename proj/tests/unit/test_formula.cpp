#include <doctest.h>

#include <algorithm>
#include <random>

#include "tsw/error.hpp"
#include "tsw/formula.hpp"
#include "tsw/random.hpp"

using namespace tsw;

namespace {

const char* kSample = "(!p1 + r1) & (=(p2;p3) + (r1 & r2))";

std::vector<std::string> printed(const std::vector<Formula>& fs) {
  std::vector<std::string> out;
  for (const auto& f : fs) out.push_back(print(f));
  return out;
}

}  // namespace

TEST_CASE("parse builds the expected trees") {
  const Formula f = parse("=(p,q;s) & (p + !q)");
  CHECK(f == Formula::conj(Formula::dep({"p", "q"}, "s"),
                           Formula::tensor(Formula::var("p"), Formula::neg_var("q"))));

  const Formula c = parse("r1 + (r1 & r2)");
  CHECK(is_context(c));
  CHECK(placeholder_indices(c) == std::set<int>{1, 2});

  CHECK(parse("p -> q -> bot") ==
        Formula::impl(Formula::var("p"), Formula::impl(Formula::var("q"), Formula::bottom())));
}

TEST_CASE("parse precedence and associativity") {
  const Formula p = Formula::var("p"), q = Formula::var("q"), r = Formula::var("r");
  CHECK(parse("p & q + r") == Formula::tensor(Formula::conj(p, q), r));
  CHECK(parse("p + q | r") == Formula::idisj(Formula::tensor(p, q), r));
  CHECK(parse("p | q -> r") == Formula::impl(Formula::idisj(p, q), r));
  CHECK(parse("p & q & r") == Formula::conj(Formula::conj(p, q), r));
  CHECK(parse("p + q + r") == Formula::tensor(Formula::tensor(p, q), r));
  CHECK(parse("  p\t&\nq ") == Formula::conj(p, q));
}

TEST_CASE("negation syntax by mode") {
  CHECK(parse("~p") == Formula::neg_var("p"));
  CHECK(parse("!p") == Formula::neg_var("p"));
  CHECK_THROWS_AS(parse("~(p & q)"), ParseError);
  CHECK(parse("~p", ParseMode::InqL) == Formula::negation(Formula::var("p")));
  CHECK(parse("~(p | q)", ParseMode::InqL) ==
        Formula::negation(Formula::idisj(Formula::var("p"), Formula::var("q"))));
  CHECK(parse("!p", ParseMode::InqL) == Formula::neg_var("p"));
}

TEST_CASE("parse errors carry positions") {
  try {
    parse("p & & q");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("(p & q"), ParseError);
  CHECK_THROWS_AS(parse("p q"), ParseError);
  CHECK_THROWS_AS(parse("P"), ParseError);
  CHECK_THROWS_AS(parse("p - q"), ParseError);
  CHECK_THROWS_AS(parse("=(p,q)"), ParseError);
  CHECK_THROWS_AS(parse("r0"), ParseError);
}

TEST_CASE("placeholder names are reserved") {
  CHECK_THROWS_AS(parse("~r1"), ParseError);
  CHECK_THROWS_AS(parse("!r2"), ParseError);
  CHECK_THROWS_AS(parse("=(r1;p)"), ParseError);
  CHECK_THROWS_AS(parse("=(p;r3)"), ParseError);
  CHECK_FALSE(is_valid_variable_name("r12"));
  CHECK(is_valid_variable_name("r"));
  CHECK(is_valid_variable_name("rx1"));
  CHECK(is_valid_variable_name("p_1"));
  CHECK_FALSE(is_valid_variable_name("bot"));
  CHECK_FALSE(is_valid_variable_name("Q"));
}

TEST_CASE("print") {
  CHECK(print(Formula::tensor(Formula::var("p"), Formula::neg_var("q"))) == "p + !q");
  CHECK(print(Formula::tensor(Formula::conj(Formula::var("p"), Formula::var("q")),
                              Formula::var("r"))) == "(p & q) + r");
  CHECK(print(Formula::dep({}, "q")) == "=(q)");
  CHECK(print(Formula::dep({"p", "q"}, "s")) == "=(p,q;s)");
  CHECK(print(parse("p -> q -> bot")) == "p -> q -> bot");
  CHECK(print(parse("(p -> q) -> bot")) == "(p -> q) -> bot");
  CHECK(print(parse("p & (q & r)")) == "p & (q & r)");
  CHECK(print(parse("(p & q) & r")) == "p & q & r");
  CHECK(print(Formula::top()) == "top");
  CHECK(print(Formula::top(), PrintOptions{true}) == "(bot -> bot)");
}

TEST_CASE("round trip on a random corpus") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const Formula f = random_formula(rng);
    CHECK(parse(print(f)) == f);
  }
  std::mt19937_64 rng2(8);
  RandomFormulaOptions inql{4, {"p", "q"}, Fragment::InqL, true};
  for (int i = 0; i < 200; ++i) {
    const Formula f = random_formula(rng2, inql);
    CHECK(parse(print(f), ParseMode::InqL) == f);
    CHECK(print(f, PrintOptions{true}).find("top") == std::string::npos);
  }
}

TEST_CASE("subformulas") {
  CHECK(printed(subformulas(parse("=(p1,p2;q)"))) == std::vector<std::string>{"=(p1,p2;q)"});
  CHECK(printed(subformulas(parse("!p"))) == std::vector<std::string>{"!p"});
  CHECK(printed(subformulas(parse("(p & p) + p"))) ==
        std::vector<std::string>{"p", "p & p", "(p & p) + p"});
}

TEST_CASE("subformulas are closed under taking subformulas") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const Formula f = random_formula(rng);
    const auto all = subformulas(f);
    for (const auto& g : all)
      for (const auto& h : subformulas(g))
        CHECK(std::find(all.begin(), all.end(), h) != all.end());
  }
}

TEST_CASE("fragment_check") {
  CHECK(fragment_check(parse("=(p;q) + p"), Fragment::PD));
  CHECK_FALSE(fragment_check(parse("p | q"), Fragment::PD));
  CHECK_FALSE(fragment_check(parse("!p"), Fragment::InqL));
  CHECK(fragment_check(parse("p -> bot"), Fragment::InqL));
  CHECK_FALSE(fragment_check(parse("p + q"), Fragment::InqL));
  CHECK_FALSE(fragment_check(parse("=(q)"), Fragment::InqL));
  CHECK(fragment_check(parse("r1 & top"), Fragment::InqL));
  CHECK(fragment_check(parse("r1 & top"), Fragment::PD));
  CHECK(fragment_check(parse("(p + !q) | (=(p) -> r)"), Fragment::PT0));
}

TEST_CASE("substitute") {
  const Formula sample = parse(kSample);
  const std::vector<Formula> theta{Formula::var("q"), Formula::bottom()};
  CHECK(substitute(sample, theta) == parse("(!p1 + q) & (=(p2;p3) + (q & bot))"));
  CHECK(substitute(parse("r1"), std::vector<Formula>{Formula::top()}) == Formula::top());
  CHECK(substitute(parse("r1 + r2"), std::vector<Formula>{Formula::var("p"), Formula::var("p")}) ==
        parse("p + p"));
  CHECK_THROWS_AS(substitute(sample, std::vector<Formula>{Formula::var("q")}), ValidationError);
  CHECK(top_instance(parse("r1 + (r2 & p)")) == parse("top + (top & p)"));
}

TEST_CASE("substitution stays in the fragment of its parts") {
  std::mt19937_64 rng(5);
  RandomFormulaOptions pd{3, {"p", "q"}, Fragment::PD, true};
  const Formula ctx = parse("(r1 + p) & (r2 + (r1 & !q))");
  for (int i = 0; i < 100; ++i) {
    const std::vector<Formula> theta{random_formula(rng, pd), random_formula(rng, pd)};
    const Formula inst = substitute(ctx, theta);
    CHECK_FALSE(is_context(inst));
    CHECK(fragment_check(inst, Fragment::PD));
  }
}

TEST_CASE("syntax trees") {
  const SyntaxTree t = syntax_tree(parse(kSample));
  CHECK(t.size() == 9);
  std::size_t max_depth = 0, r1_leaves = 0;
  for (const auto& n : t.nodes) {
    max_depth = std::max(max_depth, n.depth);
    if (n.label == Formula::placeholder(1)) ++r1_leaves;
    if (n.parent) CHECK(n.depth == t[*n.parent].depth + 1);
    if (n.children) {
      CHECK(t[n.children->first].label == n.label.lhs());
      CHECK(t[n.children->second].label == n.label.rhs());
      CHECK(t[n.children->first].parent == n.id);
    } else {
      CHECK(n.label.is_atom());
    }
  }
  CHECK(t.root().depth == 0);
  CHECK(max_depth == 3);
  CHECK(r1_leaves == 2);

  const SyntaxTree single = syntax_tree(parse("p"));
  CHECK(single.size() == 1);
  CHECK(single.root().depth == 0);
  CHECK(single.leaves() == std::vector<std::size_t>{0});

  const SyntaxTree conj = syntax_tree(parse("p & q"));
  CHECK(conj.size() == 3);
  CHECK(conj.root().label.kind() == Kind::And);
  CHECK(conj[conj.root().children->first].label == Formula::var("p"));
  CHECK(conj.is_ancestor(0, 1));
  CHECK_FALSE(conj.is_ancestor(1, 2));
  CHECK_FALSE(conj.is_ancestor(0, 0));
}

TEST_CASE("syntax tree labels cover Sub") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const Formula f = random_formula(rng);
    const SyntaxTree t = syntax_tree(f);
    CHECK(t.size() == f.size());
    std::set<std::string> labels, subs;
    for (const auto& n : t.nodes) labels.insert(print(n.label));
    for (const auto& s : subformulas(f)) subs.insert(print(s));
    CHECK(labels == subs);
  }
}
