#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace tsw {

// Teams are bitsets over 2^|N| valuations, so N is bounded well below the
// point where a full team would not fit in memory.
inline constexpr std::size_t kMaxTeamVariables = 20;

// Ordered list of distinct variables; position i is bit i of a valuation.
class VariableSet {
 public:
  VariableSet() = default;
  // Sorts names canonically and drops duplicates.
  explicit VariableSet(std::vector<std::string> names);
  // Keeps the given order; throws on duplicates or invalid names.
  static VariableSet ordered(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  const std::string& operator[](std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  auto begin() const { return names_.begin(); }
  auto end() const { return names_.end(); }

  std::optional<std::size_t> index_of(const std::string& name) const;
  bool contains(const std::string& name) const { return index_of(name).has_value(); }
  bool is_subset_of(const VariableSet& other) const;

  // Canonically sorted union.
  VariableSet unite(const VariableSet& other) const;
  // Appends a variable not already present, keeping the existing order.
  VariableSet with(const std::string& name) const;

  friend bool operator==(const VariableSet&, const VariableSet&) = default;

 private:
  std::vector<std::string> names_;
};

// First name in p1, p2, ... not in `vars`.
std::string fresh_variable(const VariableSet& vars);

// Bit i holds the value of variable i of the owning VariableSet. The bit
// pattern doubles as the valuation's canonical rank.
struct Valuation {
  std::uint32_t bits = 0;

  bool operator[](std::size_t i) const { return (bits >> i) & 1u; }
  auto operator<=>(const Valuation&) const = default;
};

class Team {
 public:
  Team() : Team(VariableSet{}) {}
  explicit Team(VariableSet vars);
  Team(VariableSet vars, const std::vector<Valuation>& members);
  // Rows of 0/1 values, column i is vars[i]. Duplicate rows are rejected.
  static Team from_rows(VariableSet vars, const std::vector<std::vector<int>>& rows);

  const VariableSet& vars() const { return vars_; }
  std::size_t size() const { return members_.count(); }
  bool empty() const { return members_.none(); }
  // Number of valuations over vars (|2^N|).
  std::size_t universe_size() const { return members_.size(); }

  bool contains(Valuation v) const { return members_.test(v.bits); }
  void insert(Valuation v);
  void erase(Valuation v);
  // Members in ascending rank order.
  std::vector<Valuation> members() const;
  std::vector<std::vector<int>> rows() const;

  bool is_subset_of(const Team& other) const;
  bool is_proper_subset_of(const Team& other) const;
  Team unite(const Team& other) const;
  Team minus(const Team& other) const;

  const boost::dynamic_bitset<>& bits() const { return members_; }

  friend bool operator==(const Team& a, const Team& b) {
    return a.vars_ == b.vars_ && a.members_ == b.members_;
  }
  // Smaller teams first, then lexicographic on ascending member ranks.
  friend std::strong_ordering operator<=>(const Team& a, const Team& b);

 private:
  void require_same_vars(const Team& other) const;

  VariableSet vars_;
  boost::dynamic_bitset<> members_;
};

std::string to_string(const Team& t);

// X↾N. Throws ValidationError unless N ⊆ X.vars.
Team restrict(const Team& team, const VariableSet& vars);

// 2^N.
Team full_team(const VariableSet& vars);

// A set of teams over one variable set.
class TeamFamily {
 public:
  TeamFamily() = default;
  explicit TeamFamily(VariableSet vars) : vars_(std::move(vars)) {}

  const VariableSet& vars() const { return vars_; }
  const std::set<Team>& teams() const { return teams_; }
  std::size_t size() const { return teams_.size(); }
  bool contains(const Team& t) const { return teams_.count(t) != 0; }
  void insert(Team t);

  friend bool operator==(const TeamFamily&, const TeamFamily&) = default;

 private:
  VariableSet vars_;
  std::set<Team> teams_;
};

struct EnumerationLimits {
  std::size_t max_team_vars = 4;
  std::size_t max_family_vars = 2;
};

// All subsets of 2^N, smallest cardinality first.
std::vector<Team> enumerate_teams(const VariableSet& vars, const EnumerationLimits& limits = {});

// Every member of ∇_N: families containing ∅ and closed under subteams.
std::vector<TeamFamily> enumerate_downward_closed_families(const VariableSet& vars,
                                                           const EnumerationLimits& limits = {});

bool is_downward_closed(const TeamFamily& family);

}  // namespace tsw
