#pragma once

// Shared fixtures and brute-force oracles for the test binaries. Oracles here
// deliberately avoid the library's own algorithms.

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "propmatch/core.hpp"
#include "propmatch/engine.hpp"
#include "propmatch/io.hpp"

namespace testing {

using namespace propmatch;

inline Profile standard_profile() {
  return Profile::from_rankings({{0, 1, 2, 3}, {0, 1, 2, 3}, {0, 1, 2, 3}, {1, 0, 2, 3}});
}

/// Agents 1-3 a>b>c>d, agent 4 a>c>d>b.
inline Profile inequivalence_profile() {
  return Profile::from_rankings({{0, 1, 2, 3}, {0, 1, 2, 3}, {0, 1, 2, 3}, {0, 2, 3, 1}});
}

inline Profile ttc_profile() {
  return Profile::from_rankings({{0, 1, 2}, {0, 1, 2}, {1, 0, 2}});
}

inline Profile two_sided_profile() {
  std::vector<PreferenceOrder> agents{PreferenceOrder({0, 1, 2, 3}), PreferenceOrder({0, 3, 2, 1}),
                                      PreferenceOrder({1, 0, 2, 3}), PreferenceOrder({3, 1, 2, 0})};
  std::vector<PreferenceOrder> items{PreferenceOrder({3, 2, 0, 1}), PreferenceOrder({1, 3, 0, 2}),
                                     PreferenceOrder({3, 0, 1, 2}), PreferenceOrder({2, 1, 0, 3})};
  return Profile(std::move(agents), std::move(items));
}

inline Matching parse_m(const std::string& text, std::size_t n) {
  // "1:a 2:b ..." with default names
  std::vector<ItemId> item_of(n, -1);
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == ',')) ++pos;
    if (pos >= text.size()) break;
    const auto colon = text.find(':', pos);
    const int agent = std::stoi(text.substr(pos, colon - pos)) - 1;
    item_of[static_cast<std::size_t>(agent)] = text[colon + 1] - 'a';
    pos = colon + 2;
  }
  return Matching(std::move(item_of));
}

inline std::vector<Matching> all_matchings(std::size_t n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Matching> out;
  do {
    out.emplace_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline int rank_utility(const Profile& p, AgentId a, ItemId o) {
  const auto r = p.agent(a).ranking();
  const auto pos = std::find(r.begin(), r.end(), o) - r.begin();
  return static_cast<int>(p.size()) - 1 - static_cast<int>(pos);
}

inline int brute_optimal_welfare(const Profile& p) {
  int best = -1;
  for (const auto& m : all_matchings(p.size())) {
    int w = 0;
    for (std::size_t a = 0; a < p.size(); ++a) w += rank_utility(p, static_cast<AgentId>(a), m.item_of(static_cast<AgentId>(a)));
    best = std::max(best, w);
  }
  return best;
}

/// Pareto efficiency by comparing against every other matching.
inline bool brute_pareto(const Matching& m, const Profile& p) {
  const std::size_t n = p.size();
  for (const auto& other : all_matchings(n)) {
    bool some_better = false;
    bool some_worse = false;
    for (std::size_t a = 0; a < n; ++a) {
      const auto ai = static_cast<AgentId>(a);
      const int mine = rank_utility(p, ai, m.item_of(ai));
      const int theirs = rank_utility(p, ai, other.item_of(ai));
      if (theirs > mine) some_better = true;
      if (theirs < mine) some_worse = true;
    }
    if (some_better && !some_worse) return false;
  }
  return true;
}

inline bool brute_top_k(const Profile& p, std::size_t k) {
  for (const auto& m : all_matchings(p.size())) {
    bool ok = true;
    for (std::size_t a = 0; a < p.size() && ok; ++a) {
      ok = rank_utility(p, static_cast<AgentId>(a), m.item_of(static_cast<AgentId>(a))) >=
           static_cast<int>(p.size() - k);
    }
    if (ok) return true;
  }
  return false;
}

/// Dense exact simplex (Bland's rule): maximize c.x subject to A x = b,
/// x >= 0, b >= 0. Returns the optimum or nothing when infeasible. Two-phase
/// with one artificial variable per row; intended for tiny programs only.
inline std::optional<Rational> simplex_max(std::vector<std::vector<Rational>> A, std::vector<Rational> b,
                                           const std::vector<Rational>& c) {
  const std::size_t m = A.size();
  const std::size_t n = c.size();
  const std::size_t cols = n + m;
  // Tableau rows: constraints; basis starts with artificials.
  std::vector<std::vector<Rational>> T(m, std::vector<Rational>(cols + 1, 0));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) T[i][j] = A[i][j];
    T[i][n + i] = 1;
    T[i][cols] = b[i];
    basis[i] = n + i;
  }
  auto run = [&](const std::vector<Rational>& cost, std::size_t usable) {
    while (true) {
      // reduced cost r_j = cost_j - sum_i cost_basis(i) * T[i][j]
      std::size_t enter = cols;
      for (std::size_t j = 0; j < usable; ++j) {
        Rational r = cost[j];
        for (std::size_t i = 0; i < m; ++i) r -= cost[basis[i]] * T[i][j];
        if (r > 0) {
          enter = j;
          break;
        }
      }
      if (enter == cols) return;
      std::size_t leave = m;
      Rational best_ratio;
      for (std::size_t i = 0; i < m; ++i) {
        if (T[i][enter] > 0) {
          Rational ratio = T[i][cols] / T[i][enter];
          if (leave == m || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
            leave = i;
            best_ratio = ratio;
          }
        }
      }
      if (leave == m) throw std::logic_error("unbounded program");
      const Rational piv = T[leave][enter];
      for (auto& v : T[leave]) v /= piv;
      for (std::size_t i = 0; i < m; ++i) {
        if (i == leave || T[i][enter] == 0) continue;
        const Rational f = T[i][enter];
        for (std::size_t j = 0; j <= cols; ++j) T[i][j] -= f * T[leave][j];
      }
      basis[leave] = enter;
    }
  };
  std::vector<Rational> phase1(cols, 0);
  for (std::size_t i = 0; i < m; ++i) phase1[n + i] = -1;
  run(phase1, cols);
  Rational infeas = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] >= n) infeas += T[i][cols];
  }
  if (infeas != 0) return std::nullopt;
  // Drive remaining (zero-valued) artificials out of the basis where possible.
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (T[i][j] != 0) {
        const Rational piv = T[i][j];
        for (auto& v : T[i]) v /= piv;
        for (std::size_t r = 0; r < m; ++r) {
          if (r == i || T[r][j] == 0) continue;
          const Rational f = T[r][j];
          for (std::size_t k = 0; k <= cols; ++k) T[r][k] -= f * T[i][k];
        }
        basis[i] = j;
        break;
      }
    }
  }
  std::vector<Rational> phase2(cols, 0);
  for (std::size_t j = 0; j < n; ++j) phase2[j] = c[j];
  run(phase2, n);
  Rational value = 0;
  for (std::size_t i = 0; i < m; ++i) value += phase2[basis[i]] * T[i][cols];
  return value;
}

/// Ordinal efficiency decided by linear programming over the Birkhoff
/// polytope: P is ordinally efficient iff no lottery over matchings weakly
/// SD-dominates P for every agent with positive total slack.
inline bool lp_ordinally_efficient(const FractionalAssignment& P, const Profile& p) {
  const std::size_t n = p.size();
  const auto perms = all_matchings(n);
  const std::size_t L = perms.size();
  const std::size_t S = n * (n - 1);  // one slack per (agent, proper prefix)
  std::vector<std::vector<Rational>> A;
  std::vector<Rational> b;
  // sum of weights = 1
  {
    std::vector<Rational> row(L + S, 0);
    for (std::size_t l = 0; l < L; ++l) row[l] = 1;
    A.push_back(row);
    b.emplace_back(1);
  }
  for (std::size_t a = 0; a < n; ++a) {
    const auto& pref = p.agent(static_cast<AgentId>(a));
    for (std::size_t k = 1; k < n; ++k) {
      std::vector<Rational> row(L + S, 0);
      Rational cum_p = 0;
      for (std::size_t r = 0; r < k; ++r) cum_p += P.at(static_cast<AgentId>(a), pref.at(r));
      for (std::size_t l = 0; l < L; ++l) {
        if (static_cast<std::size_t>(pref.rank_of(perms[l].item_of(static_cast<AgentId>(a)))) < k) row[l] = 1;
      }
      row[L + a * (n - 1) + (k - 1)] = -1;
      A.push_back(row);
      b.push_back(cum_p);
    }
  }
  std::vector<Rational> c(L + S, 0);
  for (std::size_t s = 0; s < S; ++s) c[L + s] = 1;
  const auto best = simplex_max(A, b, c);
  if (!best) throw std::logic_error("P is not a lottery over matchings");
  return *best == 0;
}

}  // namespace testing
