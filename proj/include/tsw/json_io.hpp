#pragma once

#include <optional>

#include <json.hpp>

#include "tsw/definability.hpp"
#include "tsw/evaluator.hpp"
#include "tsw/team.hpp"

namespace tsw {

using json = nlohmann::json;

// {"vars": [...], "team": [[0,1], ...]}, or a bare row array when `vars` is
// given. Columns may be listed in any order; the result uses the sorted set.
Team team_from_json(const json& j, const std::optional<VariableSet>& vars = std::nullopt);
json team_to_json(const Team& team);
json rows_to_json(const Team& team);

// {"vars": [...], "teams": [[[...], ...], ...]}
TeamFamily family_from_json(const json& j, const std::optional<VariableSet>& vars = std::nullopt);
json family_to_json(const TeamFamily& family);

json counterexample_to_json(const Counterexample& c);
json truth_function_to_json(const TruthFunction& tau);
json search_report_to_json(const SearchReport& report, bool timing);
json condition_report_to_json(const ConditionReport& report);
json property_report_to_json(const PropertyReport& report);

}  // namespace tsw
