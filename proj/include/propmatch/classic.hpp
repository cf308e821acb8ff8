#pragma once

#include "propmatch/core.hpp"

namespace propmatch {

/// The agent at position k takes its best item among those not taken by
/// positions < k.
Matching serial_dictatorship(const Profile& profile, const AgentOrder& order);

/// Round r: every unmatched agent applies to its r-th choice; an unclaimed
/// item goes to the applicant earliest in `order`; everyone else waits for
/// round r+1. Items taken in earlier rounds refuse all applicants.
Matching naive_boston_one_sided(const Profile& profile, const AgentOrder& order);

/// Simultaneous eating at unit speed, computed with exact breakpoints.
FractionalAssignment probabilistic_serial(const Profile& profile);

/// Gale's top trading cycles from the given endowment. All cycles in the
/// pointer graph are traded in each round.
Matching top_trading_cycles(const Profile& profile, const Endowment& endowment);

}  // namespace propmatch
