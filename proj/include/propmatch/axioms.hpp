#pragma once

#include <optional>
#include <span>
#include <vector>

#include "propmatch/core.hpp"
#include "propmatch/lottery.hpp"
#include "propmatch/mechanism.hpp"

namespace propmatch {

enum class Dominance {
  StrictlyDominates,
  Equal,
  Incomparable,
  DominatedBy,
};

const char* to_string(Dominance d);

/// First-order stochastic dominance of row p over row q for an agent with
/// preference `pref`: compares cumulative sums along pref's prefixes.
/// Throws std::invalid_argument on length mismatch.
Dominance sd_dominates(std::span<const Rational> p, std::span<const Rational> q,
                       const PreferenceOrder& pref);

/// No other matching makes some agent better off and nobody worse off.
/// Decided as: top trading cycles from m returns m.
bool is_pareto_efficient(const Matching& m, const Profile& profile);

/// A cycle x1 τ x2 τ ... τ x1 in the item relation
/// x τ y  iff  some agent ranks x above y and gets y with positive probability.
/// Returns the items of one cycle, or nothing if τ is acyclic.
std::optional<std::vector<ItemId>> find_tau_cycle(const FractionalAssignment& p,
                                                  const Profile& profile);

/// True iff τ is acyclic.
bool is_ordinally_efficient(const FractionalAssignment& p, const Profile& profile);

enum class SPVerdict { Strategyproof, WeaklySPOnly, NotWeaklySP };

const char* to_string(SPVerdict v);

struct MisreportOutcome {
  PreferenceOrder report;
  std::vector<Rational> row;
  Dominance truthful_vs_report = Dominance::Equal;  ///< truthful row compared to this row
};

struct SPReport {
  AgentId agent = -1;
  std::vector<Rational> truthful_row;
  std::vector<MisreportOutcome> misreports;  ///< every report except the truthful one
  SPVerdict overall = SPVerdict::Strategyproof;
  /// Index into misreports of a strictly dominating report (NotWeaklySP) or
  /// of a report the truthful row fails to dominate (WeaklySPOnly).
  std::optional<std::size_t> witness;
};

/// Holds the other agents truthful and tries every misreport of `agent`
/// under the mechanism's random assignment (see random_assignment).
/// Throws Error(ErrorKind::LimitExceeded) when n > limit.
SPReport check_strategyproofness(const Mechanism& mech, const Profile& profile, AgentId agent,
                                 std::size_t limit = kDefaultEnumerationLimit);

/// Some matching gives every agent one of its top k items.
bool feasible_top_k(const Profile& profile, std::size_t k);

/// Vacuously true when feasible_top_k fails; otherwise every initial order
/// must give every agent a top-k item (for PS: every positive entry lies in
/// the agent's top k). Throws Error(ErrorKind::LimitExceeded) when n > limit.
bool satisfies_conditional_bound(const Mechanism& mech, const Profile& profile, std::size_t k,
                                 std::size_t limit = kDefaultEnumerationLimit);

/// The first initial order violating the bound, if any (for PS: an empty
/// order signals a violation).
std::optional<AgentOrder> conditional_bound_violation(const Mechanism& mech,
                                                      const Profile& profile, std::size_t k,
                                                      std::size_t limit = kDefaultEnumerationLimit);

}  // namespace propmatch
