#pragma once

// Domain vocabulary for one-to-one assignment problems with n agents and
// n items: strict preference orders, profiles, matchings, and exact
// fractional (random) assignments.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace propmatch {

using AgentId = int;
using ItemId = int;
using Rational = mpq_class;

enum class ErrorKind {
  InvalidInstance,
  Parse,
  Mode,
  LimitExceeded,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// A strict linear order over {0, ..., n-1}, most-preferred first.
///
/// Used both for agents ranking items and for items ranking agents.
class PreferenceOrder {
 public:
  PreferenceOrder() = default;
  explicit PreferenceOrder(std::vector<int> ranking);

  std::size_t size() const noexcept { return ranking_.size(); }
  int at(std::size_t rank) const { return ranking_[rank]; }
  int top() const { return ranking_.front(); }
  /// 0-based rank of `x` (0 = most preferred).
  int rank_of(int x) const { return rank_[static_cast<std::size_t>(x)]; }
  bool prefers(int x, int y) const { return rank_of(x) < rank_of(y); }
  std::span<const int> ranking() const noexcept { return ranking_; }

  friend bool operator==(const PreferenceOrder& a, const PreferenceOrder& b) {
    return a.ranking_ == b.ranking_;
  }
  friend auto operator<=>(const PreferenceOrder& a, const PreferenceOrder& b) {
    return a.ranking_ <=> b.ranking_;
  }

 private:
  std::vector<int> ranking_;
  std::vector<int> rank_;
};

class Profile {
 public:
  Profile() = default;
  explicit Profile(std::vector<PreferenceOrder> agent_prefs,
                   std::optional<std::vector<PreferenceOrder>> item_prefs = std::nullopt);

  /// Convenience constructor from raw rankings (agent side only).
  static Profile from_rankings(const std::vector<std::vector<int>>& rankings);

  std::size_t size() const noexcept { return agent_prefs_.size(); }
  const PreferenceOrder& agent(AgentId a) const {
    return agent_prefs_[static_cast<std::size_t>(a)];
  }
  const std::vector<PreferenceOrder>& agent_prefs() const noexcept { return agent_prefs_; }
  bool two_sided() const noexcept { return item_prefs_.has_value(); }
  const PreferenceOrder& item(ItemId i) const {
    return (*item_prefs_)[static_cast<std::size_t>(i)];
  }
  const std::optional<std::vector<PreferenceOrder>>& item_prefs() const noexcept {
    return item_prefs_;
  }

  /// Copy with agent `a`'s report replaced.
  Profile with_agent(AgentId a, PreferenceOrder pref) const;
  /// Copy without item-side preferences.
  Profile one_sided() const;

  friend bool operator==(const Profile&, const Profile&) = default;

 private:
  std::vector<PreferenceOrder> agent_prefs_;
  std::optional<std::vector<PreferenceOrder>> item_prefs_;
};

/// Permutation of agents; position 0 proposes first.
class AgentOrder {
 public:
  AgentOrder() = default;
  explicit AgentOrder(std::vector<AgentId> order);
  static AgentOrder identity(std::size_t n);

  std::size_t size() const noexcept { return order_.size(); }
  AgentId at(std::size_t pos) const { return order_[pos]; }
  std::span<const AgentId> agents() const noexcept { return order_; }
  /// Position of agent `a` in the order.
  std::size_t position_of(AgentId a) const;

  friend bool operator==(const AgentOrder&, const AgentOrder&) = default;

 private:
  std::vector<AgentId> order_;
};

/// Complete one-to-one assignment of agents to items.
class Matching {
 public:
  Matching() = default;
  explicit Matching(std::vector<ItemId> item_of);

  std::size_t size() const noexcept { return item_of_.size(); }
  ItemId item_of(AgentId a) const { return item_of_[static_cast<std::size_t>(a)]; }
  std::span<const ItemId> items() const noexcept { return item_of_; }
  std::vector<AgentId> agent_of() const;

  friend bool operator==(const Matching&, const Matching&) = default;
  friend auto operator<=>(const Matching& a, const Matching& b) {
    return a.item_of_ <=> b.item_of_;
  }

 private:
  std::vector<ItemId> item_of_;
};

/// Initial ownership for top trading cycles; same shape as a matching.
using Endowment = Matching;

/// n x n matrix of exact probabilities, rows = agents, columns = items in
/// item-index order.
class FractionalAssignment {
 public:
  FractionalAssignment() = default;
  explicit FractionalAssignment(std::size_t n);
  FractionalAssignment(std::size_t n, std::vector<Rational> entries);

  /// Builds count(i,j) / total from integer tallies.
  static FractionalAssignment from_counts(std::size_t n,
                                          std::span<const std::uint64_t> counts,
                                          std::uint64_t total);

  std::size_t size() const noexcept { return n_; }
  const Rational& at(AgentId a, ItemId i) const { return p_[index(a, i)]; }
  Rational& at(AgentId a, ItemId i) { return p_[index(a, i)]; }
  std::vector<Rational> row(AgentId a) const;

  bool is_doubly_stochastic() const;
  /// Throws std::logic_error naming the first violated row/column.
  void check_doubly_stochastic() const;

  friend bool operator==(const FractionalAssignment&, const FractionalAssignment&) = default;

 private:
  std::size_t index(AgentId a, ItemId i) const {
    return static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(i);
  }
  std::size_t n_ = 0;
  std::vector<Rational> p_;
};

FractionalAssignment proportional_assignment(std::size_t n);
FractionalAssignment matching_to_assignment(const Matching& m);

/// Default display names: agents "1".."n", items "a".."z","aa","ab",...
std::string default_agent_name(AgentId a);
std::string default_item_name(ItemId i);

/// "1:a 2:b 3:c" with default names.
std::string format_matching(const Matching& m);

}  // namespace propmatch
