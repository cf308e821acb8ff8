#pragma once

// Published random assignments on the inequivalence profile
// (agents 1-3 a>b>c>d, agent 4 a>c>d>b), uniform over the 24 orders.

#include <initializer_list>
#include <vector>

#include "propmatch/core.hpp"

namespace testing {

struct PublishedLottery {
  const char* mech;
  std::vector<propmatch::Rational> first;   // agents 1-3
  std::vector<propmatch::Rational> fourth;  // agent 4
};

inline std::vector<propmatch::Rational> rationals(std::initializer_list<const char*> xs) {
  std::vector<propmatch::Rational> out;
  for (const char* x : xs) {
    out.emplace_back(x);
    out.back().canonicalize();
  }
  return out;
}

inline const std::vector<PublishedLottery>& published_lotteries() {
  static const std::vector<PublishedLottery> table{
      {"RSD", rationals({"1/4", "1/3", "1/6", "1/4"}), rationals({"1/4", "0", "1/2", "1/4"})},
      {"R-PFQ", rationals({"1/4", "1/3", "1/12", "1/3"}), rationals({"1/4", "0", "3/4", "0"})},
      {"R-PLS", rationals({"1/4", "1/3", "1/4", "1/6"}), rationals({"1/4", "0", "1/4", "1/2"})},
      {"R-PLQ", rationals({"1/4", "1/3", "1/3", "1/12"}), rationals({"1/4", "0", "0", "3/4"})},
      {"R-TFS", rationals({"1/4", "1/3", "1/4", "1/6"}), rationals({"1/4", "0", "1/4", "1/2"})},
      {"R-TFQ", rationals({"1/3", "1/3", "1/4", "1/12"}), rationals({"0", "0", "1/4", "3/4"})},
      {"R-TLS", rationals({"1/12", "1/3", "1/3", "1/4"}), rationals({"3/4", "0", "0", "1/4"})},
      {"R-TLQ", rationals({"1/12", "1/3", "1/3", "1/4"}), rationals({"3/4", "0", "0", "1/4"})},
  };
  return table;
}

inline propmatch::FractionalAssignment published_matrix(const PublishedLottery& l) {
  propmatch::FractionalAssignment m(4);
  for (int a = 0; a < 4; ++a) {
    const auto& row = a < 3 ? l.first : l.fourth;
    for (int i = 0; i < 4; ++i) m.at(a, i) = row[static_cast<std::size_t>(i)];
  }
  return m;
}

}  // namespace testing
