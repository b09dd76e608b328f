#include <algorithm>
#include <bit>
#include <chrono>
#include <map>
#include <thread>

#include "tsw/definability.hpp"
#include "tsw/error.hpp"
#include "tsw/expressiveness.hpp"

namespace tsw {

ConnectiveSpec ConnectiveSpec::idisj() {
  return {Builtin::IDisj, "or", 2, [](std::span<const Formula> theta, const Team& team) {
            return evaluate(Formula::idisj(theta[0], theta[1]), team);
          }};
}

ConnectiveSpec ConnectiveSpec::impl() {
  return {Builtin::Impl, "imp", 2, [](std::span<const Formula> theta, const Team& team) {
            return evaluate(Formula::impl(theta[0], theta[1]), team);
          }};
}

ConnectiveSpec ConnectiveSpec::contra(std::size_t arity) {
  return {Builtin::Contra, "contra", arity,
          [](std::span<const Formula>, const Team& team) { return team.empty(); }};
}

ConnectiveSpec ConnectiveSpec::named(const std::string& name) {
  if (name == "or") return idisj();
  if (name == "imp") return impl();
  if (name == "contra") return contra(2);
  throw ValidationError("unknown connective '" + name + "' (expected or, imp or contra)");
}

namespace {

std::vector<TeamMask> masks_by_size(std::size_t members) {
  std::vector<TeamMask> out(std::size_t{1} << members);
  for (std::size_t m = 0; m < out.size(); ++m) out[m] = m;
  std::stable_sort(out.begin(), out.end(),
                   [](TeamMask a, TeamMask b) { return std::popcount(a) < std::popcount(b); });
  return out;
}

std::string vector_label(std::span<const Formula> theta, const Formula& star) {
  std::string out = "(";
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (i) out += ", ";
    out += theta[i] == star ? "theta" : print(theta[i]);
  }
  return out + ")";
}

VariableSet vars_of_all(std::span<const Formula> formulas) {
  std::vector<std::string> names;
  for (const auto& f : formulas) {
    auto v = variable_names(f);
    names.insert(names.end(), v.begin(), v.end());
  }
  return VariableSet(std::move(names));
}

// Evaluates ⊛(θ) on subteams of `universe`, through the evaluator for the
// built-in intuitionistic connectives.
class ConnectiveEvaluator {
 public:
  ConnectiveEvaluator(const ConnectiveSpec& c, std::span<const Formula> theta,
                      const Team& universe)
      : spec_(c), theta_(theta.begin(), theta.end()) {
    if (c.builtin == ConnectiveSpec::Builtin::IDisj)
      session_.emplace(Formula::idisj(theta[0], theta[1]), universe);
    else if (c.builtin == ConnectiveSpec::Builtin::Impl)
      session_.emplace(Formula::impl(theta[0], theta[1]), universe);
  }

  bool holds(TeamMask mask, const Team& team) {
    if (session_) return session_->holds_mask(mask);
    return spec_.holds(theta_, team);
  }

 private:
  const ConnectiveSpec& spec_;
  std::vector<Formula> theta_;
  std::optional<EvalSession> session_;
};

}  // namespace

std::vector<BatteryEntry> refutation_battery(const ConnectiveSpec& c, const VariableSet& vars,
                                             bool extended) {
  const Formula bot = Formula::bottom();
  const Formula top = Formula::top();
  const Formula star = theta_star(full_team(vars), vars);
  std::vector<std::vector<Formula>> vectors;
  switch (c.builtin) {
    case ConnectiveSpec::Builtin::IDisj:
      vectors = {{bot, top}, {top, bot}, {top, top}, {star, star}};
      if (extended) vectors.insert(vectors.end(), {{star, top}, {top, star}});
      break;
    case ConnectiveSpec::Builtin::Impl:
      vectors = {{bot, bot}, {top, bot}, {top, top}, {top, star}};
      if (extended) vectors.insert(vectors.end(), {{star, top}, {star, star}});
      break;
    case ConnectiveSpec::Builtin::Contra: {
      const std::vector<Formula> choices{bot, top, star};
      std::vector<std::size_t> pick(c.arity, 0);
      while (true) {
        std::vector<Formula> v;
        for (std::size_t p : pick) v.push_back(choices[p]);
        vectors.push_back(std::move(v));
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == choices.size()) pick[i++] = 0;
        if (i == pick.size()) break;
      }
      break;
    }
  }
  std::vector<BatteryEntry> out;
  for (auto& v : vectors) out.push_back({vector_label(v, star), std::move(v)});
  return out;
}

std::optional<Counterexample> find_counterexample(const Formula& context, const ConnectiveSpec& c,
                                                  bool extended) {
  if (!fragment_check(context, Fragment::PD))
    throw ValidationError("'" + print(context) + "' is not a PD context");
  const auto indices = placeholder_indices(context);
  if (!indices.empty() && static_cast<std::size_t>(*indices.rbegin()) > c.arity)
    throw ValidationError("context uses placeholders beyond the connective's arity " +
                          std::to_string(c.arity));
  const VariableSet vars = reduction_variables(context);
  check_cap(vars, Limits{kHardMaxVars, true}, "refutation");
  const Team universe = full_team(vars);
  const auto order = masks_by_size(universe.size());

  const auto battery = refutation_battery(c, vars, extended);
  for (std::size_t b = 0; b < battery.size(); ++b) {
    const auto& theta = battery[b].instances;
    EvalSession lhs(substitute(context, theta), universe);
    ConnectiveEvaluator rhs(c, theta, universe);
    for (TeamMask m : order) {
      const Team team = lhs.to_team(m);
      const bool l = lhs.holds_mask(m);
      const bool r = rhs.holds(m, team);
      if (l != r)
        return Counterexample{context, c.name, theta, vars, team, l, r, b, battery[b].label};
    }
  }
  return std::nullopt;
}

Counterexample refute_uniform_definition(const Formula& context, const ConnectiveSpec& c,
                                         bool extended) {
  if (c.builtin == ConnectiveSpec::Builtin::Contra)
    throw ValidationError("refutation is defined for the connectives or and imp");
  auto found = find_counterexample(context, c, extended);
  if (!found)
    throw InvariantViolation("no battery instance separates '" + print(context) + "' from " +
                             c.name + "; this contradicts the non-definability theorem");
  return *found;
}

std::vector<Formula> default_atom_pool() {
  return {Formula::placeholder(1), Formula::placeholder(2), Formula::bottom(), Formula::top(),
          Formula::var("p"),       Formula::neg_var("p"),   Formula::dep({}, "p")};
}

std::vector<Formula> enumerate_contexts(std::span<const Formula> atom_pool, std::size_t max_size) {
  if (max_size > kMaxSearchSize)
    throw CapExceeded("context enumeration is limited to size " + std::to_string(kMaxSearchSize));
  struct Entry {
    Formula formula;
    std::string text;
  };
  std::vector<std::vector<Entry>> by_size(max_size + 1);
  if (max_size >= 1) {
    std::map<std::string, Formula> atoms;
    for (const auto& a : atom_pool) {
      if (!a.is_atom()) throw ValidationError("pool entries must be atoms");
      if (!fragment_check(a, Fragment::PD)) throw ValidationError("pool atoms must be PD atoms");
      atoms.emplace(print(a), a);
    }
    for (auto& [text, f] : atoms) by_size[1].push_back({f, text});
  }
  for (std::size_t size = 3; size <= max_size; size += 2) {
    for (std::size_t a = 1; a <= (size - 1) / 2; a += 2) {
      const std::size_t b = size - 1 - a;
      const auto& left = by_size[a];
      const auto& right = by_size[b];
      for (std::size_t i = 0; i < left.size(); ++i) {
        for (std::size_t j = a == b ? i : 0; j < right.size(); ++j) {
          const Entry* x = &left[i];
          const Entry* y = &right[j];
          if (y->text < x->text) std::swap(x, y);
          for (Kind k : {Kind::And, Kind::Tensor}) {
            Formula f = Formula::binary(k, x->formula, y->formula);
            std::string text = print(f);
            by_size[size].push_back({std::move(f), std::move(text)});
          }
        }
      }
    }
  }
  std::vector<Formula> out;
  for (const auto& level : by_size)
    for (const auto& e : level) out.push_back(e.formula);
  return out;
}

SearchReport search_contexts(const ConnectiveSpec& c, std::span<const Formula> atom_pool,
                             std::size_t max_size, const SearchOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  auto has = [&](int i) {
    return std::any_of(atom_pool.begin(), atom_pool.end(), [&](const Formula& f) {
      return f.kind() == Kind::Placeholder && f.placeholder_index() == i;
    });
  };
  if (!has(1) || !has(2)) throw ValidationError("the atom pool must contain r1 and r2");
  const auto candidates = enumerate_contexts(atom_pool, max_size);

  std::vector<std::optional<Counterexample>> results(candidates.size());
  const std::size_t jobs = std::max<std::size_t>(1, options.jobs);
  auto work = [&](std::size_t worker) {
    for (std::size_t i = worker; i < candidates.size(); i += jobs)
      results[i] = find_counterexample(candidates[i], c, options.extended);
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < jobs; ++w) pool.emplace_back(work, w);
  }

  SearchReport report;
  report.connective = c.name;
  report.max_size = max_size;
  report.candidates = candidates.size();
  report.seed = options.seed;
  for (const auto& entry : refutation_battery(c, VariableSet({"p1"}), options.extended))
    report.by_instance.emplace_back(entry.label, 0);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!results[i]) {
      report.unrefuted.push_back(candidates[i]);
      continue;
    }
    ++report.refuted;
    ++report.by_instance[results[i]->battery_index].second;
    if (options.keep_counterexamples) report.counterexamples.push_back(std::move(*results[i]));
  }
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

bool ConditionReport::all_hold() const {
  return std::all_of(witnesses.begin(), witnesses.end(),
                     [](const ConditionWitness& w) { return w.holds; });
}

namespace {

// Is there a team X with X ⊨ ⊛(θ) and X ⊭ θ_i?
bool fails_to_entail_argument(const ConnectiveSpec& c, const std::vector<Formula>& theta,
                              std::size_t i) {
  const VariableSet vars = vars_of_all(theta);
  for (const Team& team : enumerate_teams(vars))
    if (c.holds(theta, team) && !evaluate(theta[i], team)) return true;
  return false;
}

bool valid_instance(const ConnectiveSpec& c, const std::vector<Formula>& theta) {
  const VariableSet vars = vars_of_all(theta);
  for (const Team& team : enumerate_teams(vars))
    if (!c.holds(theta, team)) return false;
  return true;
}

std::string applied(const ConnectiveSpec& c, const std::vector<Formula>& theta) {
  if (c.builtin == ConnectiveSpec::Builtin::IDisj)
    return print(Formula::idisj(theta[0], theta[1]));
  if (c.builtin == ConnectiveSpec::Builtin::Impl)
    return print(Formula::impl(theta[0], theta[1]));
  std::string out = c.name + "(";
  for (std::size_t i = 0; i < theta.size(); ++i) out += (i ? ", " : "") + print(theta[i]);
  return out + ")";
}

}  // namespace

ConditionReport condition_check(const ConnectiveSpec& c) {
  ConditionReport report{c.name, {}};
  const Formula bot = Formula::bottom();
  const Formula top = Formula::top();
  const VariableSet n({"p"});
  const Team everything = full_team(n);
  const Formula star = theta_star(everything, n);

  auto not_entailing = [&](std::vector<Formula> theta, std::size_t i) {
    report.witnesses.push_back({"i", applied(c, theta) + " does not entail " + print(theta[i]),
                                fails_to_entail_argument(c, theta, i)});
  };
  auto full_team_fails = [&](std::vector<Formula> theta) {
    report.witnesses.push_back({"iii", "2^{p} does not satisfy " + applied(c, theta),
                                !c.holds(theta, everything)});
  };

  switch (c.builtin) {
    case ConnectiveSpec::Builtin::IDisj:
      not_entailing({bot, top}, 0);
      not_entailing({top, bot}, 1);
      report.witnesses.push_back(
          {"ii", applied(c, {top, top}) + " is valid", valid_instance(c, {top, top})});
      full_team_fails({star, star});
      break;
    case ConnectiveSpec::Builtin::Impl:
      not_entailing({bot, bot}, 0);
      report.witnesses.push_back(
          {"ii", applied(c, {top, top}) + " is valid", valid_instance(c, {top, top})});
      full_team_fails({top, star});
      break;
    case ConnectiveSpec::Builtin::Contra: {
      std::vector<Formula> theta(c.arity, top);
      if (!theta.empty()) {
        theta[0] = bot;
        not_entailing(theta, 0);
      }
      // No valid instance exists; search a small pool to record that.
      const std::vector<Formula> pool{bot, top, Formula::var("p"), Formula::neg_var("p"),
                                      Formula::dep({}, "p")};
      bool any_valid = false;
      std::vector<std::size_t> pick(c.arity, 0);
      while (!any_valid) {
        std::vector<Formula> delta;
        for (std::size_t p : pick) delta.push_back(pool[p]);
        any_valid = valid_instance(c, delta);
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == pool.size()) pick[i++] = 0;
        if (i == pick.size()) break;
      }
      report.witnesses.push_back({"ii", "some instance over the pool is valid", any_valid});
      full_team_fails(std::vector<Formula>(c.arity, star));
      break;
    }
  }
  return report;
}

}  // namespace tsw
