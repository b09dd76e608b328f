#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "tsw/definability.hpp"
#include "tsw/error.hpp"
#include "tsw/evaluator.hpp"
#include "tsw/expressiveness.hpp"
#include "tsw/formula.hpp"
#include "tsw/json_io.hpp"
#include "tsw/random.hpp"
#include "tsw/team.hpp"

namespace tsw::cli {

namespace {

struct Options {
  std::vector<std::string> formulas;
  std::string team;
  std::string family;
  std::string context;
  std::string connective = "or";
  std::string target = "pd";
  std::string vars;
  std::string pool;
  bool json = false;
  bool inql = false;
  std::size_t jobs = 1;
  std::uint64_t seed = 0;
  std::size_t count = 100;
  std::size_t max_vars = 3;
  std::size_t max_size = 7;
  bool force = false;
  bool raw = false;
  bool minimize = false;
  bool extended = false;
  bool timing = false;
};

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw ValidationError("empty entry in list '" + text + "'");
    out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

// Inline JSON when the argument looks like JSON, a file path otherwise.
json load_json(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '[' || arg[first] == '{'))
    return json::parse(arg);
  std::ifstream in(arg);
  if (!in) throw ValidationError("cannot read '" + arg + "'");
  return json::parse(in);
}

class Runner {
 public:
  Runner(const Options& o, std::ostream& out) : o_(o), out_(out) {}

  std::optional<VariableSet> vars() const {
    if (o_.vars.empty()) return std::nullopt;
    return VariableSet::ordered(split_csv(o_.vars));
  }
  VariableSet vars_or(const Formula& f) const {
    auto v = vars();
    return v ? VariableSet(v->names()) : formula_vars(f);
  }
  Limits limits() const { return Limits{o_.max_vars, o_.force}; }
  ParseMode mode() const { return o_.inql ? ParseMode::InqL : ParseMode::PT0; }

  Formula formula(std::size_t i = 0) const {
    if (o_.formulas.size() <= i)
      throw ValidationError(i == 0 ? "missing -f/--formula" : "missing a second -f/--formula");
    return parse(o_.formulas[i], mode());
  }
  std::vector<Formula> all_formulas() const {
    std::vector<Formula> out;
    for (const auto& f : o_.formulas) out.push_back(parse(f, mode()));
    return out;
  }
  Formula context() const {
    if (o_.context.empty()) throw ValidationError("missing -c/--context");
    return parse(o_.context, mode());
  }
  Team team(const std::optional<VariableSet>& fallback = std::nullopt) const {
    if (o_.team.empty()) throw ValidationError("missing -t/--team");
    auto v = vars();
    return team_from_json(load_json(o_.team), v ? v : fallback);
  }
  ConnectiveSpec connective() const { return ConnectiveSpec::named(o_.connective); }
  SynthTarget target() const {
    if (o_.target == "pd") return SynthTarget::PD;
    if (o_.target == "inql") return SynthTarget::InqL;
    throw ValidationError("unknown target '" + o_.target + "' (expected pd or inql)");
  }
  SynthOptions synth_options() const { return SynthOptions{o_.raw, o_.minimize}; }
  PrintOptions print_options() const {
    return PrintOptions{o_.target == "inql"};
  }

  void emit(const json& j) { out_ << j.dump() << '\n'; }
  void emit_bool(bool b) {
    if (o_.json)
      emit({{"result", b}});
    else
      out_ << (b ? "true" : "false") << '\n';
  }
  void emit_formula(const Formula& f, const PrintOptions& p = {}) {
    if (o_.json)
      emit({{"formula", print(f, p)}});
    else
      out_ << print(f, p) << '\n';
  }
  void emit_family(const TeamFamily& k) {
    if (o_.json) {
      emit(family_to_json(k));
      return;
    }
    for (const auto& t : k.teams()) out_ << to_string(t) << '\n';
  }
  void emit_truth_function(const TruthFunction& tau) {
    if (o_.json) {
      emit(truth_function_to_json(tau));
      return;
    }
    for (const auto& node : tau.tree.nodes)
      out_ << std::string(2 * node.depth, ' ') << node.id << ' ' << print(node.label) << "  "
           << to_string(tau[node.id]) << '\n';
  }
  void emit_counterexample(const Counterexample& c) {
    if (o_.json) {
      emit(counterexample_to_json(c));
      return;
    }
    out_ << "context    " << print(c.context) << '\n'
         << "connective " << c.connective << '\n'
         << "instances  " << c.battery_label << ":";
    for (std::size_t i = 0; i < c.instances.size(); ++i)
      out_ << (i ? ", " : " ") << "r" << i + 1 << " := " << print(c.instances[i]);
    out_ << '\n'
         << "team       " << to_string(c.team) << '\n'
         << "lhs " << (c.lhs ? "true" : "false") << ", rhs " << (c.rhs ? "true" : "false")
         << '\n';
  }
  void emit_optional_team(const char* what, const std::optional<Team>& witness) {
    if (o_.json) {
      emit({{"result", !witness}, {what, witness ? team_to_json(*witness) : json(nullptr)}});
      return;
    }
    out_ << (witness ? "false" : "true") << '\n';
    if (witness) out_ << what << ": " << to_string(*witness) << '\n';
  }

  int parse_cmd() {
    const Formula f = formula();
    if (!o_.json) {
      out_ << print(f) << '\n';
      return kOk;
    }
    json subs = json::array();
    for (const auto& s : subformulas(f)) subs.push_back(print(s));
    emit({{"formula", print(f)},
          {"size", f.size()},
          {"vars", variable_names(f)},
          {"placeholders", placeholder_indices(f)},
          {"fragments",
           {{"PT0", fragment_check(f, Fragment::PT0)},
            {"PD", fragment_check(f, Fragment::PD)},
            {"InqL", fragment_check(f, Fragment::InqL)}}},
          {"subformulas", subs}});
    return kOk;
  }

  int eval_cmd() {
    const Formula f = formula();
    emit_bool(evaluate(f, team(formula_vars(f))));
    return kOk;
  }

  int truthset_cmd() {
    const Formula f = formula();
    emit_family(truth_set(f, vars_or(f), limits()));
    return kOk;
  }

  int valid_cmd() {
    emit_bool(valid(formula()));
    return kOk;
  }

  int entails_cmd() {
    emit_optional_team("counterexample", entailment_counterexample(formula(0), formula(1), limits()));
    return kOk;
  }

  int equiv_cmd() {
    emit_optional_team("counterexample", equivalence_counterexample(formula(0), formula(1), limits()));
    return kOk;
  }

  int properties_cmd() {
    if (!o_.formulas.empty()) {
      const Formula f = formula();
      const PropertyReport report = check_basic_properties(f, vars_or(f), limits());
      if (o_.json) {
        emit(property_report_to_json(report));
      } else {
        for (const auto& v : report.violations) out_ << v.property << ": " << v.witness << '\n';
        out_ << (report.ok() ? "ok" : "violations found") << '\n';
      }
      return report.ok() ? kOk : kInvariant;
    }
    std::mt19937_64 rng(o_.seed);
    json violations = json::array();
    for (std::size_t i = 0; i < o_.count; ++i) {
      const Formula f = random_formula(rng);
      const PropertyReport report = check_basic_properties(f, formula_vars(f), limits());
      for (const auto& v : report.violations)
        violations.push_back({{"formula", print(f)}, {"property", v.property}, {"witness", v.witness}});
    }
    if (o_.json) {
      emit({{"seed", o_.seed}, {"count", o_.count}, {"violations", violations},
            {"ok", violations.empty()}});
    } else {
      for (const auto& v : violations)
        out_ << v["formula"].get<std::string>() << "  " << v["property"].get<std::string>()
             << ": " << v["witness"].get<std::string>() << '\n';
      out_ << o_.count << " formulas, " << violations.size() << " violations\n";
    }
    return violations.empty() ? kOk : kInvariant;
  }

  int theta_cmd() {
    const Team x = team();
    emit_formula(theta_star(x, x.vars(), synth_options()));
    return kOk;
  }

  int synth_cmd() {
    if (o_.family.empty()) throw ValidationError("missing --family");
    const TeamFamily k = family_from_json(load_json(o_.family), vars());
    const SynthTarget t = target();
    const SynthOptions s = synth_options();
    emit_formula(t == SynthTarget::PD ? synth_pd(k, s) : synth_inql(k, s));
    return kOk;
  }

  int translate_cmd() {
    emit_formula(translate(formula(), target(), limits(), synth_options()));
    return kOk;
  }

  int subst_cmd() {
    emit_formula(substitute(context(), all_formulas()));
    return kOk;
  }

  int normalize_cmd() {
    emit_formula(normalize(context()));
    return kOk;
  }

  int consistent_cmd() {
    emit_bool(is_consistent(context()));
    return kOk;
  }

  int truthfn_cmd() {
    const Formula c = context();
    const auto theta = all_formulas();
    const Formula instance = substitute(c, theta);
    auto tau = find_truth_function(c, theta, team(formula_vars(instance)));
    if (!tau) {
      if (o_.json)
        emit({{"result", nullptr}});
      else
        out_ << "no truth function: the team does not satisfy " << print(instance) << '\n';
      return kOk;
    }
    emit_truth_function(*tau);
    return kOk;
  }

  int reduce_cmd() {
    const Formula c = context();
    auto v = vars();
    emit_truth_function(
        build_reduced_truth_function(c, v ? VariableSet(v->names()) : reduction_variables(c)));
    return kOk;
  }

  int refute_cmd() {
    emit_counterexample(refute_uniform_definition(context(), connective(), o_.extended));
    return kOk;
  }

  int search_cmd() {
    std::vector<Formula> pool;
    if (o_.pool.empty()) {
      pool = default_atom_pool();
    } else {
      for (const auto& a : split_csv(o_.pool)) pool.push_back(parse(a, mode()));
    }
    const ConnectiveSpec c = connective();
    SearchOptions options{o_.jobs, o_.extended, false, o_.seed};
    const SearchReport report = search_contexts(c, pool, o_.max_size, options);
    if (o_.json) {
      emit(search_report_to_json(report, o_.timing));
    } else {
      out_ << "connective " << report.connective << ", max size " << report.max_size << '\n'
           << "candidates " << report.candidates << ", refuted " << report.refuted << '\n';
      for (const auto& [label, n] : report.by_instance) out_ << "  " << label << ' ' << n << '\n';
      for (const auto& f : report.unrefuted)
        out_ << "unrefuted: " << print(f) << "  (defines the connective on the battery)\n";
      if (o_.timing) out_ << "elapsed " << report.elapsed_ms << " ms\n";
    }
    const bool must_refute = c.builtin != ConnectiveSpec::Builtin::Contra;
    return must_refute && !report.unrefuted.empty() ? kInvariant : kOk;
  }

  int conditions_cmd() {
    const ConditionReport report = condition_check(connective());
    if (o_.json) {
      emit(condition_report_to_json(report));
    } else {
      for (const auto& w : report.witnesses)
        out_ << '(' << w.condition << ") " << w.claim << ": " << (w.holds ? "holds" : "fails")
             << '\n';
    }
    return kOk;
  }

 private:
  const Options& o_;
  std::ostream& out_;
};

using Handler = int (Runner::*)();

struct Command {
  const char* name;
  const char* help;
  Handler handler;
};

const std::vector<Command>& commands() {
  static const std::vector<Command> all{
      {"parse", "parse and print a formula", &Runner::parse_cmd},
      {"eval", "evaluate a formula on a team", &Runner::eval_cmd},
      {"truthset", "list the teams satisfying a formula", &Runner::truthset_cmd},
      {"valid", "check validity", &Runner::valid_cmd},
      {"entails", "check that the first formula entails the second", &Runner::entails_cmd},
      {"equiv", "check equivalence of two formulas", &Runner::equiv_cmd},
      {"properties", "check empty team, downward closure, locality, disjunction",
       &Runner::properties_cmd},
      {"theta", "build the formula true exactly on teams not including a team",
       &Runner::theta_cmd},
      {"synth", "synthesize a formula from a downward closed family", &Runner::synth_cmd},
      {"translate", "translate a formula into PD or InqL", &Runner::translate_cmd},
      {"subst", "substitute -f formulas for the placeholders of a context", &Runner::subst_cmd},
      {"normalize", "drop inconsistent subformulas of a context", &Runner::normalize_cmd},
      {"consistent", "decide consistency of a context", &Runner::consistent_cmd},
      {"truthfn", "find a truth function for a context instance over a team",
       &Runner::truthfn_cmd},
      {"reduce", "build a truth function with proper subteams at placeholder leaves",
       &Runner::reduce_cmd},
      {"refute", "refute a context as a uniform definition of or/imp", &Runner::refute_cmd},
      {"search", "refute every context up to a size bound", &Runner::search_cmd},
      {"conditions", "check the non-definability conditions for a connective",
       &Runner::conditions_cmd},
  };
  return all;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"team semantics workbench"};
  app.name(args.empty() ? "tsw" : args.front());
  app.require_subcommand(1);

  app.add_option("-f,--formula", o.formulas, "formula (repeatable)");
  app.add_option("-t,--team", o.team, "team JSON file or inline JSON");
  app.add_option("--family", o.family, "family JSON file or inline JSON");
  app.add_option("-c,--context", o.context, "context with placeholders r1, r2, ...");
  app.add_option("--connective", o.connective, "or, imp or contra")
      ->check(CLI::IsMember({"or", "imp", "contra"}));
  app.add_option("--target", o.target, "pd or inql")->check(CLI::IsMember({"pd", "inql"}));
  app.add_option("--vars", o.vars, "comma separated variables");
  app.add_option("--pool", o.pool, "comma separated atoms for search");
  app.add_flag("--json", o.json, "JSON output");
  app.add_flag("--inql", o.inql, "read ~ as negation of a formula");
  app.add_option("--jobs", o.jobs, "worker threads for search")->check(CLI::Range(1, 256));
  app.add_option("--seed", o.seed, "seed for random corpora");
  app.add_option("--count", o.count, "random formulas for properties");
  app.add_option("--max-vars", o.max_vars, "variable cap for exhaustive checks");
  app.add_option("--max-size", o.max_size, "context size bound for search");
  app.add_flag("--force", o.force, "raise caps to the hard maximum");
  app.add_flag("--raw", o.raw, "no simplification in synthesized formulas");
  app.add_flag("--minimize", o.minimize, "drop redundant conjuncts in PD synthesis");
  app.add_flag("--extended", o.extended, "extra battery instances");
  app.add_flag("--timing", o.timing, "report elapsed time");

  std::map<CLI::App*, Handler> handlers;
  for (const auto& c : commands()) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->fallthrough();
    handlers[sub] = c.handler;
  }

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("tsw");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    Runner runner(o, out);
    for (auto& [sub, handler] : handlers)
      if (sub->parsed()) return (runner.*handler)();
    return kInvalid;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kInvalid;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalid;
  } catch (const json::exception& e) {
    err << "invalid JSON: " << e.what() << '\n';
    return kInvalid;
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << '\n';
    return kCap;
  } catch (const InvariantViolation& e) {
    err << "internal invariant violated: " << e.what() << '\n';
    return kInvariant;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInvariant;
  }
}

}  // namespace tsw::cli
