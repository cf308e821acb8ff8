#pragma once

// Proposal sequences transcribed from the published sample executions on the
// standard profile (agents 1-3 a>b>c>d, agent 4 b>a>c>d, order 1,2,3,4).
// Token "2ad1": agent 2 proposes to a and displaces agent 1; "m" = takes an
// unmatched item; "r" = proposer refused.

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "propmatch/engine.hpp"

namespace testing {

struct ReferenceRun {
  std::string events;
  std::string table_matching;   // final matching listed in the summary table
  std::size_t table_proposals;  // proposal count listed in the summary table
};

inline const std::map<std::string, ReferenceRun>& reference_runs() {
  static const std::map<std::string, ReferenceRun> runs{
      {"PFS", {"1am 2ar 2bm 3ar 3br 3cm 4br 4ar 4cr 4dm", "1:a 2:b 3:c 4:d", 10}},
      {"PFQ", {"1am 2ar 3ar 4bm 2br 3br 2cm 3cr 3dm", "1:a 2:c 3:d 4:b", 9}},
      {"PLS", {"1am 2ad1 1bm 3ad2 2bd1 1cm 4bd2 2cd1 1dm", "1:d 2:c 3:a 4:b", 9}},
      {"PLQ", {"1am 2ad1 3ad2 4bm 1bd4 2bd1 4ad3 1cm 3cd1 1dm", "1:d 2:c 3:b 4:a", 10}},
      {"TFS",
       {"1am 2ad1 1bm 3ad2 2ar 2bd1 1ar 1br 1cm 4bd2 2ad3 3ar 3br 3cd1 1ar 1br 1cr 1dm",
        "1:d 2:a 3:c 4:b", 18}},
      {"TFQ",
       {"1am 2ad1 3ar 4bm 1ad2 3ar 2ar 3bd4 2br 4ar 2cm 4bd3 3ad1 1ar 1br 1cd2 2ar 2br 2cr 2dm "
        "3bd1 4br 1cm 4bd3 3ad2 2ar 2bd4 4ad3 3br 3cd1 1ad4 4cd3 3dm",
        "1:a 2:b 3:d 4:c", 33}},
      {"TLS",
       {"1am 2ad1 1bm 3ad2 2bd1 1ad3 3bd2 2cm 4bd3 3ad1 1ar 1bd4 4ad3 3br 3cd2 2ad4 4cd3 3dm",
        "1:b 2:a 3:d 4:c", 18}},
      {"TLQ",
       {"1am 2ad1 3ad2 4bm 1ad3 2ad1 3ar 1bd4 3bd1 4br 1cm 4bd3 3ad2 2ar 2bd4 4ad3 3br 3cd1 1ad4 "
        "4cd3 3dm",
        "1:a 2:b 3:d 4:c", 21}},
  };
  return runs;
}

inline std::vector<propmatch::TraceEvent> decode_events(const std::string& text) {
  std::vector<propmatch::TraceEvent> out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    propmatch::TraceEvent ev;
    ev.proposer = tok[0] - '1';
    ev.item = tok[1] - 'a';
    switch (tok[2]) {
      case 'm': ev.outcome = propmatch::Outcome::MatchedUnassigned; break;
      case 'r': ev.outcome = propmatch::Outcome::Rejected; break;
      default:
        ev.outcome = propmatch::Outcome::DisplacedHolder;
        ev.displaced = tok[3] - '1';
    }
    out.push_back(ev);
  }
  return out;
}

/// Index of the first differing event (ignoring reset flags), or -1 if the
/// sequences agree including length.
inline long first_divergence(const std::vector<propmatch::TraceEvent>& got,
                             const std::vector<propmatch::TraceEvent>& want) {
  const std::size_t common = std::min(got.size(), want.size());
  for (std::size_t k = 0; k < common; ++k) {
    if (got[k].proposer != want[k].proposer || got[k].item != want[k].item ||
        got[k].outcome != want[k].outcome || got[k].displaced != want[k].displaced) {
      return static_cast<long>(k);
    }
  }
  return got.size() == want.size() ? -1 : static_cast<long>(common);
}

}  // namespace testing
