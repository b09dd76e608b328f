#include "tsw/team.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <unordered_map>

#include "tsw/error.hpp"
#include "tsw/formula.hpp"

namespace tsw {

VariableSet::VariableSet(std::vector<std::string> names) {
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  for (const auto& n : names)
    if (!is_valid_variable_name(n)) throw ValidationError("invalid variable name '" + n + "'");
  names_ = std::move(names);
}

VariableSet VariableSet::ordered(std::vector<std::string> names) {
  VariableSet out;
  for (auto& n : names) {
    if (!is_valid_variable_name(n)) throw ValidationError("invalid variable name '" + n + "'");
    if (out.contains(n)) throw ValidationError("duplicate variable '" + n + "'");
    out.names_.push_back(std::move(n));
  }
  return out;
}

std::optional<std::size_t> VariableSet::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

bool VariableSet::is_subset_of(const VariableSet& other) const {
  return std::all_of(names_.begin(), names_.end(),
                     [&](const std::string& n) { return other.contains(n); });
}

VariableSet VariableSet::unite(const VariableSet& other) const {
  std::vector<std::string> all = names_;
  all.insert(all.end(), other.names_.begin(), other.names_.end());
  return VariableSet(std::move(all));
}

VariableSet VariableSet::with(const std::string& name) const {
  if (contains(name)) throw ValidationError("variable '" + name + "' already present");
  auto names = names_;
  names.push_back(name);
  return ordered(std::move(names));
}

std::string fresh_variable(const VariableSet& vars) {
  for (std::size_t i = 1;; ++i) {
    std::string candidate = "p" + std::to_string(i);
    if (!vars.contains(candidate)) return candidate;
  }
}

Team::Team(VariableSet vars) : vars_(std::move(vars)) {
  if (vars_.size() > kMaxTeamVariables)
    throw CapExceeded("teams support at most " + std::to_string(kMaxTeamVariables) +
                      " variables");
  members_.resize(std::size_t{1} << vars_.size());
}

Team::Team(VariableSet vars, const std::vector<Valuation>& members) : Team(std::move(vars)) {
  for (Valuation v : members) insert(v);
}

Team Team::from_rows(VariableSet vars, const std::vector<std::vector<int>>& rows) {
  Team t(std::move(vars));
  for (const auto& row : rows) {
    if (row.size() != t.vars().size())
      throw ValidationError("team row has " + std::to_string(row.size()) + " entries, expected " +
                            std::to_string(t.vars().size()));
    Valuation v;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i] != 0 && row[i] != 1) throw ValidationError("team entries must be 0 or 1");
      if (row[i]) v.bits |= 1u << i;
    }
    if (t.contains(v)) throw ValidationError("duplicate team row");
    t.insert(v);
  }
  return t;
}

void Team::insert(Valuation v) {
  if (v.bits >= members_.size()) throw ValidationError("valuation out of range");
  members_.set(v.bits);
}

void Team::erase(Valuation v) {
  if (v.bits < members_.size()) members_.reset(v.bits);
}

std::vector<Valuation> Team::members() const {
  std::vector<Valuation> out;
  out.reserve(size());
  for (auto i = members_.find_first(); i != boost::dynamic_bitset<>::npos;
       i = members_.find_next(i))
    out.push_back(Valuation{static_cast<std::uint32_t>(i)});
  return out;
}

std::vector<std::vector<int>> Team::rows() const {
  std::vector<std::vector<int>> out;
  for (Valuation v : members()) {
    std::vector<int> row(vars_.size());
    for (std::size_t i = 0; i < row.size(); ++i) row[i] = v[i] ? 1 : 0;
    out.push_back(std::move(row));
  }
  return out;
}

void Team::require_same_vars(const Team& other) const {
  if (!(vars_ == other.vars_)) throw ValidationError("teams are over different variable sets");
}

bool Team::is_subset_of(const Team& other) const {
  require_same_vars(other);
  return members_.is_subset_of(other.members_);
}

bool Team::is_proper_subset_of(const Team& other) const {
  require_same_vars(other);
  return members_.is_proper_subset_of(other.members_);
}

Team Team::unite(const Team& other) const {
  require_same_vars(other);
  Team out = *this;
  out.members_ |= other.members_;
  return out;
}

Team Team::minus(const Team& other) const {
  require_same_vars(other);
  Team out = *this;
  out.members_ -= other.members_;
  return out;
}

std::strong_ordering operator<=>(const Team& a, const Team& b) {
  if (a.vars_.names() != b.vars_.names()) return a.vars_.names() <=> b.vars_.names();
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  auto i = a.members_.find_first();
  auto j = b.members_.find_first();
  while (i != boost::dynamic_bitset<>::npos && j != boost::dynamic_bitset<>::npos) {
    if (i != j) return i <=> j;
    i = a.members_.find_next(i);
    j = b.members_.find_next(j);
  }
  return std::strong_ordering::equal;
}

std::string to_string(const Team& t) {
  std::string out = "{";
  bool first = true;
  for (Valuation v : t.members()) {
    if (!first) out += ", ";
    first = false;
    for (std::size_t i = 0; i < t.vars().size(); ++i) out += v[i] ? '1' : '0';
    if (t.vars().empty()) out += "()";
  }
  out += "}";
  return out;
}

Team restrict(const Team& team, const VariableSet& vars) {
  std::vector<std::size_t> source;
  for (const auto& name : vars) {
    auto idx = team.vars().index_of(name);
    if (!idx) throw ValidationError("cannot restrict to '" + name + "': not a team variable");
    source.push_back(*idx);
  }
  Team out(vars);
  for (Valuation v : team.members()) {
    Valuation r;
    for (std::size_t i = 0; i < source.size(); ++i)
      if (v[source[i]]) r.bits |= 1u << i;
    out.insert(r);
  }
  return out;
}

Team full_team(const VariableSet& vars) {
  Team t(vars);
  for (std::uint32_t r = 0; r < t.universe_size(); ++r) t.insert(Valuation{r});
  return t;
}

void TeamFamily::insert(Team t) {
  if (!(t.vars() == vars_)) throw ValidationError("team is over a different variable set");
  teams_.insert(std::move(t));
}

namespace {

// Teams over N as bitmasks over the 2^|N| valuation ranks.
std::vector<std::uint64_t> sorted_team_masks(std::size_t n) {
  const std::size_t universe = std::size_t{1} << n;
  const std::uint64_t count = std::uint64_t{1} << universe;
  std::vector<std::uint64_t> masks(count);
  for (std::uint64_t m = 0; m < count; ++m) masks[m] = m;
  std::stable_sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    // Lexicographic on ascending members: the first differing member decides.
    const std::uint64_t diff = a ^ b;
    if (diff == 0) return false;
    const std::uint64_t low = diff & (~diff + 1);
    return (a & low) != 0;
  });
  return masks;
}

Team mask_team(const VariableSet& vars, std::uint64_t mask) {
  Team t(vars);
  for (std::uint32_t r = 0; mask; ++r, mask >>= 1)
    if (mask & 1u) t.insert(Valuation{r});
  return t;
}

}  // namespace

std::vector<Team> enumerate_teams(const VariableSet& vars, const EnumerationLimits& limits) {
  if (vars.size() > limits.max_team_vars)
    throw CapExceeded("team enumeration over " + std::to_string(vars.size()) +
                      " variables exceeds the cap of " + std::to_string(limits.max_team_vars));
  if (vars.size() > 5) throw CapExceeded("team enumeration is limited to 5 variables");
  std::vector<Team> out;
  for (std::uint64_t m : sorted_team_masks(vars.size())) out.push_back(mask_team(vars, m));
  return out;
}

std::vector<TeamFamily> enumerate_downward_closed_families(const VariableSet& vars,
                                                           const EnumerationLimits& limits) {
  if (vars.size() > limits.max_family_vars)
    throw CapExceeded("family enumeration over " + std::to_string(vars.size()) +
                      " variables exceeds the cap of " + std::to_string(limits.max_family_vars));
  if (vars.size() > 3) throw CapExceeded("family enumeration is limited to 3 variables");
  const auto masks = sorted_team_masks(vars.size());
  std::unordered_map<std::uint64_t, std::size_t> position;
  for (std::size_t i = 0; i < masks.size(); ++i) position[masks[i]] = i;

  // Decide teams in ascending size order. A team may join only if each of its
  // one-element-smaller subteams already did, which makes every produced
  // family downward closed, and each family is produced exactly once.
  std::vector<char> chosen(masks.size(), 0);
  std::vector<TeamFamily> out;
  std::function<void(std::size_t)> extend = [&](std::size_t i) {
    if (i == masks.size()) {
      TeamFamily family(vars);
      for (std::size_t j = 0; j < masks.size(); ++j)
        if (chosen[j]) family.insert(mask_team(vars, masks[j]));
      out.push_back(std::move(family));
      return;
    }
    const std::uint64_t m = masks[i];
    bool allowed = true;
    for (std::uint64_t rest = m; rest && allowed; rest &= rest - 1) {
      const std::uint64_t low = rest & (~rest + 1);
      allowed = chosen[position[m & ~low]] != 0;
    }
    if (m == 0) {
      // ∅ is in every member of ∇_N.
      chosen[i] = 1;
      extend(i + 1);
      return;
    }
    chosen[i] = 0;
    extend(i + 1);
    if (allowed) {
      chosen[i] = 1;
      extend(i + 1);
      chosen[i] = 0;
    }
  };
  extend(0);
  return out;
}

bool is_downward_closed(const TeamFamily& family) {
  if (!family.contains(Team(family.vars()))) return false;
  for (const Team& t : family.teams()) {
    for (Valuation v : t.members()) {
      Team smaller = t;
      smaller.erase(v);
      if (!family.contains(smaller)) return false;
    }
  }
  return true;
}

}  // namespace tsw
