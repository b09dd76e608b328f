#include <doctest.h>

#include <random>

#include "reference_eval.hpp"
#include "tsw/error.hpp"
#include "tsw/expressiveness.hpp"
#include "tsw/random.hpp"

using namespace tsw;

namespace {

Team team(const std::vector<std::string>& vars, const std::vector<std::vector<int>>& rows) {
  return Team::from_rows(VariableSet::ordered(vars), rows);
}

const VariableSet kP({"p"});

TeamFamily family(const VariableSet& vars, const std::vector<Team>& teams) {
  TeamFamily k(vars);
  for (const auto& t : teams) k.insert(t);
  return k;
}

}  // namespace

TEST_CASE("theta_star examples") {
  const Formula one = theta_star(team({"p"}, {{1}}), kP);
  CHECK(print(one) == "!p");
  CHECK(equivalent(one, parse("!p")));
  const Formula all = theta_star(full_team(kP), kP);
  CHECK(print(all) == "=(p)");
  for (const auto& x : enumerate_teams(kP))
    if (!x.empty()) CHECK(evaluate(theta_star(x, kP), Team(kP)));
  CHECK_THROWS_AS(theta_star(Team(kP), kP), ValidationError);
  CHECK_THROWS_AS(theta_star(team({"q"}, {{1}}), kP), ValidationError);
}

TEST_CASE("theta_star raw shape keeps the bottom sides") {
  CHECK(print(theta_star(team({"p"}, {{1}}), kP, SynthOptions{true, false})) == "bot + !p");
  CHECK(print(theta_star(full_team(kP), kP, SynthOptions{true, false})) == "=(p) + bot");
  const VariableSet pq({"p", "q"});
  CHECK(print(theta_star(full_team(pq), pq)) ==
        "(=(p) & =(q)) + (=(p) & =(q)) + (=(p) & =(q))");
}

TEST_CASE("theta_star excludes exactly the supersets of X") {
  for (const VariableSet& vars : {VariableSet{}, kP, VariableSet({"p", "q"})}) {
    for (const auto& x : oracle::all_teams(vars)) {
      if (x.empty()) continue;
      for (const bool raw : {false, true}) {
        const Formula t = theta_star(x, vars, SynthOptions{raw, false});
        CHECK(fragment_check(t, Fragment::PD));
        for (const auto& y : oracle::all_teams(vars))
          CHECK(oracle::satisfies(t, y) == !x.is_subset_of(y));
      }
    }
  }
}

TEST_CASE("synth_pd examples") {
  const Team e(kP), one = team({"p"}, {{1}}), zero = team({"p"}, {{0}});
  const TeamFamily k = family(kP, {e, one});
  const Formula f = synth_pd(k);
  CHECK(truth_set(f, kP) == k);
  CHECK(equivalent(f, parse("p")));
  CHECK(synth_pd(family(kP, {e, zero, one, full_team(kP)})) == Formula::top());
  const Formula bottom = synth_pd(family(kP, {e}));
  CHECK(equivalent(bottom, Formula::bottom()));
  CHECK_THROWS_AS(synth_pd(family(kP, {full_team(kP)})), ValidationError);
  CHECK_THROWS_AS(synth_pd(family(kP, {e, full_team(kP)})), ValidationError);
}

TEST_CASE("synth_pd minimization keeps the truth set") {
  const VariableSet pq({"p", "q"});
  for (const auto& k : enumerate_downward_closed_families(pq)) {
    const Formula small = synth_pd(k, SynthOptions{false, true});
    CHECK(truth_set(small, pq) == k);
    CHECK(small.size() <= synth_pd(k).size());
  }
}

TEST_CASE("synth_inql examples") {
  const Team e(kP), one = team({"p"}, {{1}}), zero = team({"p"}, {{0}});
  const TeamFamily k = family(kP, {e, one});
  const Formula f = synth_inql(k);
  CHECK(fragment_check(f, Fragment::InqL));
  CHECK(equivalent(f, parse("p")));
  CHECK(synth_inql(family(kP, {e})) == Formula::bottom());
  const Formula all = synth_inql(family(kP, {e, zero, one, full_team(kP)}));
  CHECK(print(all) == "bot -> bot");
  CHECK(valid(all));
}

TEST_CASE("expressive completeness over small variable sets") {
  for (const VariableSet& vars : {VariableSet{}, kP, VariableSet({"p", "q"})}) {
    for (const auto& k : enumerate_downward_closed_families(vars)) {
      const Formula pd = synth_pd(k);
      const Formula inq = synth_inql(k);
      CHECK(fragment_check(pd, Fragment::PD));
      CHECK(fragment_check(inq, Fragment::InqL));
      CHECK(print(inq).find("top") == std::string::npos);
      CHECK(truth_set(pd, vars) == k);
      CHECK(truth_set(inq, vars) == k);
      CHECK(oracle::naive_truth_set(inq, vars) == k);
    }
  }
}

TEST_CASE("translate") {
  const Formula d = parse("p | q");
  const Formula pd = translate(d, SynthTarget::PD);
  CHECK(fragment_check(pd, Fragment::PD));
  CHECK(equivalent(pd, d));

  const Formula dep = parse("=(p;q)");
  const Formula inq = translate(dep, SynthTarget::InqL);
  CHECK(fragment_check(inq, Fragment::InqL));
  CHECK(equivalent(inq, dep));
  CHECK(equivalent(inq, dep_to_inql({"p"}, "q")));
  CHECK_THROWS_AS(translate(parse("r1 & p"), SynthTarget::PD), ValidationError);
  CHECK_THROWS_AS(translate(parse("=(a,b,c;d)"), SynthTarget::PD), CapExceeded);

  std::mt19937_64 rng(21);
  RandomFormulaOptions opts{3, {"p", "q"}, Fragment::PT0, true};
  for (int i = 0; i < 60; ++i) {
    const Formula f = random_formula(rng, opts);
    const Formula there = translate(f, SynthTarget::PD);
    const Formula back = translate(there, SynthTarget::InqL);
    CHECK(equivalent(there, f));
    CHECK(equivalent(back, f));
    CHECK(fragment_check(back, Fragment::InqL));
  }
}

TEST_CASE("dependence atoms in InqL") {
  CHECK(print(dep_to_inql({"p"}, "q")) == "(p | (p -> bot)) -> (q | (q -> bot))");
  CHECK(print(dep_to_inql({}, "q")) == "q | (q -> bot)");
  CHECK(print(dep_to_inql({"p1", "p2"}, "q")) ==
        "((p1 | (p1 -> bot)) & (p2 | (p2 -> bot))) -> (q | (q -> bot))");
  const std::vector<std::vector<std::string>> arg_lists{{}, {"a"}, {"a", "b"}, {"b", "a"}};
  for (const auto& args : arg_lists) {
    const Formula inq = dep_to_inql(args, "c");
    CHECK(fragment_check(inq, Fragment::InqL));
    CHECK(equivalent(inq, Formula::dep(args, "c")));
  }
  CHECK(equivalent(dep_to_inql({"a"}, "a"), Formula::dep({"a"}, "a")));
}
