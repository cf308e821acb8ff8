#pragma once

// Proposal machine shared by two-sided deferred acceptance (fixed item
// preferences) and the one-sided family in which items build fictitious
// preferences over agents from the proposals they receive.
//
// The one-sided family is parameterized by three switches:
//
//   memory      Permanent: item memories persist for the whole run.
//               Temporary: whenever a previously unmatched item is taken,
//               every item forgets its memory and every agent may again
//               propose to items that refused it.
//   acceptance  AcceptFirst: an item with a memory refuses every proposer.
//               AcceptLast: an item with a memory takes any proposer that is
//               not already in its memory.
//   discipline  Stack: a refused or displaced agent proposes next.
//               Queue: it waits behind every other pending agent.
//
// The eight combinations are named by their initials, e.g. PFS, TLQ.

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "propmatch/core.hpp"
#include "propmatch/io.hpp"

namespace propmatch {

enum class Memory { Permanent, Temporary };
enum class Acceptance { AcceptFirst, AcceptLast };
enum class Discipline { Stack, Queue };

struct EngineConfig {
  Memory memory = Memory::Permanent;
  Acceptance acceptance = Acceptance::AcceptFirst;
  Discipline discipline = Discipline::Stack;

  /// Three-letter code such as "PFS".
  std::string code() const;
  /// Inverse of code(); throws Error(ErrorKind::Mode) on unknown codes.
  static EngineConfig from_code(std::string_view code);
  /// All eight configurations in the order PFS, PFQ, PLS, PLQ, TFS, TFQ, TLS, TLQ.
  static std::array<EngineConfig, 8> all();

  friend bool operator==(const EngineConfig&, const EngineConfig&) = default;
};

enum class Outcome {
  MatchedUnassigned,  ///< proposer takes a previously unmatched item
  DisplacedHolder,    ///< proposer takes the item from its holder
  Rejected,           ///< proposer is refused
};

struct TraceEvent {
  AgentId proposer = -1;
  ItemId item = -1;
  Outcome outcome = Outcome::Rejected;
  AgentId displaced = -1;  ///< previous holder when outcome == DisplacedHolder
  bool reset_occurred = false;

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

/// Machine state right after an event; recorded only with TraceLevel::Full.
struct StateSnapshot {
  std::vector<AgentId> pending;                 ///< next proposer first
  std::vector<ItemId> item_of;                  ///< -1 for unmatched agents
  std::vector<std::vector<AgentId>> memories;   ///< per item, most preferred first
};

enum class TraceLevel { None, Events, Full };

struct EngineResult {
  Matching matching;
  std::size_t proposal_count = 0;
  std::size_t reset_count = 0;
  std::vector<TraceEvent> trace;          ///< empty with TraceLevel::None
  std::vector<StateSnapshot> snapshots;   ///< filled with TraceLevel::Full
};

/// Runs the one-sided proposal machine. Item preferences of `profile`, if
/// any, are ignored. Throws std::logic_error if the proposal count exceeds
/// n^2 (permanent memory) or n^3 (temporary memory).
EngineResult run_engine(const Profile& profile, const AgentOrder& order, EngineConfig config,
                        TraceLevel level = TraceLevel::Events);

/// Same as run_engine(..., TraceLevel::None).matching.
Matching engine_matching(const Profile& profile, const AgentOrder& order, EngineConfig config);

/// Agent-proposing deferred acceptance with the items' own preferences.
/// Refused agents go to the back of the pending queue. Throws
/// Error(ErrorKind::Mode) when the profile has no item preferences.
EngineResult run_gale_shapley(const Profile& profile, const AgentOrder& order,
                              TraceLevel level = TraceLevel::Events);

enum class BostonMode { Sequential, Simultaneous };

/// Immediate acceptance with the items' own preferences. Sequential: agents
/// take turns in `order`, each proposing down its list until some unmatched
/// item accepts it. Simultaneous: in round r every unmatched agent applies to
/// its r-th choice; each unmatched item keeps its most-preferred applicant.
Matching run_boston_two_sided(const Profile& profile, const AgentOrder& order, BostonMode mode);

/// Re-applies the proposer/item/outcome sequence of a trace to an empty
/// assignment and returns the final matching. Throws std::logic_error if an
/// event is inconsistent with the replayed state.
Matching replay_trace(std::size_t n, const std::vector<TraceEvent>& trace);

/// Table with one line per event:
///   index | proposer -> item | outcome | pending-after | partial-matching | item-memories
/// Requires a result produced with TraceLevel::Full.
std::string format_trace(const EngineResult& result, const Labels& labels);

}  // namespace propmatch
