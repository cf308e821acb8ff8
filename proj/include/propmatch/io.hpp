#pragma once

// Text formats at the I/O boundary.
//
// Profile file:
//   # comment
//   1: a,b,c,d          one agent per line, most-preferred item first
//   ...
//   @items              optional section with item-side preferences
//   a: 4,3,1,2
//
// Names are arbitrary tokens without ',' ':' or whitespace. Agent lines
// define agent indices in file order; items are indexed in natural name
// order (shorter names first, then lexicographic).

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "propmatch/core.hpp"

namespace propmatch {

struct Labels {
  std::vector<std::string> agents;
  std::vector<std::string> items;

  static Labels defaults(std::size_t n);
  AgentId agent_index(std::string_view name) const;  // -1 if unknown
  ItemId item_index(std::string_view name) const;    // -1 if unknown
  friend bool operator==(const Labels&, const Labels&) = default;
};

struct LabeledProfile {
  Profile profile;
  Labels labels;
};

/// Throws Error(ErrorKind::Parse) naming the offending line.
LabeledProfile parse_profile(std::string_view text);
LabeledProfile read_profile_file(const std::string& path);

std::string format_profile(const Profile& p, const Labels& labels);
std::string format_profile(const Profile& p);

/// "1:a 2:b ..." using the given labels.
std::string format_matching(const Matching& m, const Labels& labels);

/// One agent row per line, entries "p/q" (or "0"/"1") separated by spaces;
/// optional header line naming the items.
std::string format_matrix(const FractionalAssignment& p, const Labels& labels,
                          bool header = true);

/// Inverse of format_matrix (header line optional).
FractionalAssignment parse_matrix(std::string_view text);

/// Parses "3,1,2" or "3 1 2" agent names into an order.
AgentOrder parse_order(std::string_view text, const Labels& labels);

}  // namespace propmatch
