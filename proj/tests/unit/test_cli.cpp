#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "tsw/json_io.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result tsw_run(std::vector<std::string> args) {
  args.insert(args.begin(), "tsw");
  std::ostringstream out, err;
  const int code = tsw::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  args.push_back("--json");
  const Result r = tsw_run(args);
  REQUIRE(r.code == 0);
  return json::parse(r.out);
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_CASE("eval on a team file") {
  const std::string path = temp_file("tsw_team.json", R"({"vars":["p","q"],"team":[[1,0],[1,1]]})");
  const Result r = tsw_run({"eval", "-f", "=(p;q)", "-t", path, "--json"});
  CHECK(r.code == 0);
  CHECK(r.out == "{\"result\":false}\n");
  CHECK(tsw_run({"eval", "-f", "p", "-t", path}).out == "true\n");
  std::remove(path.c_str());
}

TEST_CASE("eval with inline teams and column order") {
  CHECK(tsw_run({"eval", "-f", "q", "-t", R"({"vars":["q","p"],"team":[[1,0],[1,1]]})"}).out ==
        "true\n");
  CHECK(tsw_run({"eval", "-f", "q", "-t", "[[1,0]]", "--vars", "q,p"}).out == "true\n");
  CHECK(tsw_run({"eval", "-f", "p", "-t", "[[1],[0]]"}).out == "false\n");
  CHECK(tsw_run({"eval", "-f", "p", "-t", "[[1],[1]]"}).code == 1);
  CHECK(tsw_run({"eval", "-f", "p", "-t", "[[1,"}).code == 1);
  CHECK(tsw_run({"eval", "-f", "p", "-t", "/nonexistent/team.json"}).code == 1);
}

TEST_CASE("refute emits the counterexample schema") {
  const json j = run_json({"refute", "-c", "r1 + r2", "--connective", "or"});
  CHECK(j["context"] == "r1 + r2");
  CHECK(j["connective"] == "or");
  CHECK(j["instances"] == json::array({"=(p1)", "=(p1)"}));
  CHECK(j["battery"] == "(theta, theta)");
  CHECK(j["vars"] == json::array({"p1"}));
  CHECK(j["team"] == json::parse("[[0],[1]]"));
  CHECK(j["lhs"] == true);
  CHECK(j["rhs"] == false);
}

TEST_CASE("theta") {
  const Result r = tsw_run({"theta", "--team", "[[1]]", "--vars", "p"});
  CHECK(r.code == 0);
  CHECK(r.out == "!p\n");
  CHECK(tsw_run({"theta", "--team", "[[1]]", "--vars", "p", "--raw"}).out == "bot + !p\n");
  CHECK(tsw_run({"theta", "--team", "[]", "--vars", "p"}).code == 1);
}

TEST_CASE("parse and print") {
  CHECK(tsw_run({"parse", "-f", "p&q+r"}).out == "(p & q) + r\n");
  const json j = run_json({"parse", "-f", "r1 + (r1 & r2)"});
  CHECK(j["placeholders"] == json::array({1, 2}));
  CHECK(j["fragments"]["PD"] == true);
  CHECK(tsw_run({"parse", "-f", "~(p | q)", "--inql"}).out == "(p | q) -> bot\n");
}

TEST_CASE("truthset and synth round trip through the family schema") {
  const json family = run_json({"truthset", "-f", "=(p;q)"});
  CHECK(family["vars"] == json::array({"p", "q"}));
  const tsw::TeamFamily k = tsw::family_from_json(family);
  CHECK(k.size() == tsw::truth_set(tsw::parse("=(p;q)"), k.vars()).size());
  for (const char* target : {"pd", "inql"}) {
    const json synth = run_json({"synth", "--family", family.dump(), "--target", target});
    const json back = run_json({"truthset", "-f", synth["formula"], "--vars", "p,q"});
    CHECK(back == family);
  }
  const json wide = run_json({"truthset", "-f", "p", "--vars", "p,q"});
  CHECK(wide["teams"].size() == 4);
}

TEST_CASE("judgments") {
  CHECK(tsw_run({"valid", "-f", "~~p -> p", "--inql"}).out == "true\n");
  CHECK(tsw_run({"valid", "-f", "~~(p | ~p) -> (p | ~p)", "--inql"}).out == "false\n");
  CHECK(run_json({"entails", "-f", "p + p", "-f", "p"})["result"] == true);
  const json no = run_json({"entails", "-f", "=(p) + =(p)", "-f", "=(p)"});
  CHECK(no["result"] == false);
  CHECK(no["counterexample"]["team"] == json::parse("[[0],[1]]"));
  CHECK(run_json({"equiv", "-f", "p | p", "-f", "p"})["result"] == true);
  CHECK(tsw_run({"entails", "-f", "p"}).code == 1);
}

TEST_CASE("translate and subst") {
  const json pd = run_json({"translate", "-f", "p | q", "--target", "pd"});
  CHECK(run_json({"equiv", "-f", pd["formula"], "-f", "p | q"})["result"] == true);
  CHECK(tsw_run({"subst", "-c", "r1 + r2", "-f", "p", "-f", "!p"}).out == "p + !p\n");
  CHECK(tsw_run({"subst", "-c", "r1 + r2", "-f", "p"}).code == 1);
}

TEST_CASE("context commands") {
  CHECK(tsw_run({"normalize", "-c", "(bot & r1) + r2"}).out == "r2\n");
  CHECK(tsw_run({"consistent", "-c", "bot & r1"}).out == "false\n");
  const json tau = run_json({"truthfn", "-c", "r1 + r2", "-f", "p", "-f", "!p", "-t", "[[0],[1]]",
                             "--vars", "p"});
  CHECK(tau["nodes"].size() == 3);
  CHECK(tau["nodes"][0]["team"] == json::parse("[[0],[1]]"));
  const json none = run_json({"truthfn", "-c", "r1", "-f", "p", "-t", "[[0]]", "--vars", "p"});
  CHECK(none["result"].is_null());
  const json reduced = run_json({"reduce", "-c", "r1 + r2"});
  CHECK(reduced["vars"] == json::array({"p1"}));
  CHECK(reduced["nodes"][1]["team"].size() == 1);
  CHECK(tsw_run({"reduce", "-c", "r1"}).code == 1);
}

TEST_CASE("search and conditions") {
  const json r = run_json({"search", "--connective", "imp", "--max-size", "3"});
  CHECK(r["candidates"] == 63);
  CHECK(r["refuted"] == 63);
  CHECK(r["unrefuted"].empty());
  CHECK_FALSE(r.contains("elapsed_ms"));
  CHECK(run_json({"search", "--max-size", "3", "--timing"}).contains("elapsed_ms"));
  const json c = run_json({"conditions", "--connective", "or"});
  CHECK(c["all_hold"] == true);
  CHECK(run_json({"conditions", "--connective", "contra"})["all_hold"] == false);
  const json contra = run_json({"search", "--connective", "contra", "--max-size", "1",
                                "--pool", "r1,r2,bot"});
  CHECK(contra["unrefuted"] == json::array({"bot"}));
  CHECK(tsw_run({"search", "--max-size", "11"}).code == 2);
}

TEST_CASE("same seed, same bytes") {
  const std::vector<std::string> search{"search", "--max-size", "5", "--jobs", "3", "--json"};
  CHECK(tsw_run(search).out == tsw_run(search).out);
  const std::vector<std::string> props{"properties", "--seed", "5", "--count", "30", "--json"};
  const Result a = tsw_run(props);
  CHECK(a.code == 0);
  CHECK(a.out == tsw_run(props).out);
  CHECK(json::parse(a.out)["ok"] == true);
}

TEST_CASE("exit codes") {
  CHECK(tsw_run({"parse", "-f", "p &"}).code == 1);
  CHECK(tsw_run({"parse", "-f", "~r1"}).code == 1);
  CHECK(tsw_run({"frobnicate"}).code == 1);
  CHECK(tsw_run({}).code == 1);
  CHECK(tsw_run({"eval", "--bogus"}).code == 1);
  CHECK(tsw_run({"refute", "-c", "r1", "--connective", "xor"}).code == 1);
  CHECK(tsw_run({"truthset", "-f", "=(a,b,c;d)"}).code == 2);
  CHECK(tsw_run({"truthset", "-f", "=(a,b,c;d)", "--force"}).code == 0);
  CHECK(tsw_run({"truthset", "-f", "=(a,b,c,d;e)", "--force"}).code == 2);
  CHECK(tsw_run({"--help"}).code == 0);
  CHECK(tsw_run({"properties", "-f", "=(p;q)"}).out == "ok\n");
}
