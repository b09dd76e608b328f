#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "tsw/formula.hpp"
#include "tsw/team.hpp"

namespace tsw {

struct RandomFormulaOptions {
  std::size_t max_depth = 4;
  std::vector<std::string> vars{"p", "q", "r"};
  Fragment fragment = Fragment::PT0;
  bool allow_top = true;
};

// Seeded generator for property tests. The atoms available depend on the
// fragment: InqL drops negated variables and dependence atoms.
Formula random_formula(std::mt19937_64& rng, const RandomFormulaOptions& options = {});

// Uniform random subteam of 2^N.
Team random_team(std::mt19937_64& rng, const VariableSet& vars);

}  // namespace tsw
