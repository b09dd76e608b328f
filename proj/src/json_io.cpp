#include "tsw/json_io.hpp"

#include <algorithm>

#include "tsw/error.hpp"

namespace tsw {

namespace {

VariableSet vars_from_json(const json& j) {
  if (!j.is_array()) throw ValidationError("\"vars\" must be an array of names");
  std::vector<std::string> names;
  for (const auto& v : j) {
    if (!v.is_string()) throw ValidationError("\"vars\" must be an array of names");
    names.push_back(v.get<std::string>());
  }
  return VariableSet::ordered(std::move(names));
}

json names_to_json(const VariableSet& vars) { return json(vars.names()); }

// Rows over `given`, re-indexed onto the sorted variable set.
Team rows_to_team(const VariableSet& given, const json& rows) {
  if (!rows.is_array()) throw ValidationError("a team must be an array of 0/1 rows");
  const VariableSet sorted(given.names());
  std::vector<std::vector<int>> out;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != given.size())
      throw ValidationError("every row needs one 0/1 entry per variable");
    std::vector<int> r(sorted.size());
    for (std::size_t i = 0; i < given.size(); ++i) {
      if (!row[i].is_number_integer()) throw ValidationError("row entries must be 0 or 1");
      r[*sorted.index_of(given[i])] = row[i].get<int>();
    }
    out.push_back(std::move(r));
  }
  return Team::from_rows(sorted, out);
}

}  // namespace

Team team_from_json(const json& j, const std::optional<VariableSet>& vars) {
  if (j.is_array()) {
    if (!vars) throw ValidationError("a bare team needs a variable list");
    return rows_to_team(*vars, j);
  }
  if (!j.is_object() || !j.contains("team"))
    throw ValidationError("expected {\"vars\": [...], \"team\": [...]}");
  const VariableSet given = j.contains("vars") ? vars_from_json(j["vars"])
                            : vars                ? *vars
                                                  : throw ValidationError("team JSON lacks \"vars\"");
  return rows_to_team(given, j["team"]);
}

json rows_to_json(const Team& team) {
  json rows = json::array();
  for (const auto& r : team.rows()) rows.push_back(r);
  return rows;
}

json team_to_json(const Team& team) {
  return {{"vars", names_to_json(team.vars())}, {"team", rows_to_json(team)}};
}

TeamFamily family_from_json(const json& j, const std::optional<VariableSet>& vars) {
  if (!j.is_object() || !j.contains("teams"))
    throw ValidationError("expected {\"vars\": [...], \"teams\": [...]}");
  const VariableSet given = j.contains("vars") ? vars_from_json(j["vars"])
                            : vars                ? *vars
                                                  : throw ValidationError("family JSON lacks \"vars\"");
  if (!j["teams"].is_array()) throw ValidationError("\"teams\" must be an array of teams");
  TeamFamily family(VariableSet(given.names()));
  for (const auto& t : j["teams"]) family.insert(rows_to_team(given, t));
  return family;
}

json family_to_json(const TeamFamily& family) {
  json teams = json::array();
  for (const auto& t : family.teams()) teams.push_back(rows_to_json(t));
  return {{"vars", names_to_json(family.vars())}, {"teams", teams}};
}

json counterexample_to_json(const Counterexample& c) {
  json instances = json::array();
  for (const auto& f : c.instances) instances.push_back(print(f));
  return {{"context", print(c.context)},
          {"connective", c.connective},
          {"instances", instances},
          {"battery", c.battery_label},
          {"vars", names_to_json(c.variables)},
          {"team", rows_to_json(c.team)},
          {"lhs", c.lhs},
          {"rhs", c.rhs}};
}

json truth_function_to_json(const TruthFunction& tau) {
  json nodes = json::array();
  for (const auto& node : tau.tree.nodes) {
    json n = {{"id", node.id},
              {"label", print(node.label)},
              {"depth", node.depth},
              {"team", rows_to_json(tau[node.id])}};
    n["parent"] = node.parent ? json(*node.parent) : json(nullptr);
    n["children"] = node.children ? json{node.children->first, node.children->second}
                                  : json::array();
    nodes.push_back(std::move(n));
  }
  const VariableSet vars = tau.assignment.empty() ? VariableSet{} : tau.assignment.front().vars();
  return {{"vars", names_to_json(vars)}, {"nodes", nodes}};
}

json search_report_to_json(const SearchReport& report, bool timing) {
  json by_instance = json::object();
  json order = json::array();
  for (const auto& [label, count] : report.by_instance) {
    by_instance[label] = count;
    order.push_back(label);
  }
  json unrefuted = json::array();
  for (const auto& f : report.unrefuted) unrefuted.push_back(print(f));
  json out = {{"connective", report.connective},
              {"max_size", report.max_size},
              {"candidates", report.candidates},
              {"refuted", report.refuted},
              {"battery", order},
              {"by_instance", by_instance},
              {"unrefuted", unrefuted},
              {"seed", report.seed}};
  if (!report.counterexamples.empty()) {
    json ces = json::array();
    for (const auto& c : report.counterexamples) ces.push_back(counterexample_to_json(c));
    out["counterexamples"] = ces;
  }
  if (timing) out["elapsed_ms"] = report.elapsed_ms;
  return out;
}

json condition_report_to_json(const ConditionReport& report) {
  json witnesses = json::array();
  for (const auto& w : report.witnesses)
    witnesses.push_back({{"condition", w.condition}, {"claim", w.claim}, {"holds", w.holds}});
  return {{"connective", report.connective},
          {"witnesses", witnesses},
          {"all_hold", report.all_hold()}};
}

json property_report_to_json(const PropertyReport& report) {
  json violations = json::array();
  for (const auto& v : report.violations)
    violations.push_back({{"property", v.property}, {"witness", v.witness}});
  return {{"empty_team", report.empty_team},
          {"downward_closure", report.downward_closure},
          {"locality", report.locality},
          {"disjunction", report.disjunction},
          {"violations", violations},
          {"ok", report.ok()}};
}

}  // namespace tsw
