#include "propmatch/axioms.hpp"

#include <algorithm>
#include <stdexcept>

#include "propmatch/classic.hpp"
#include "propmatch/random.hpp"

namespace propmatch {

const char* to_string(Dominance d) {
  switch (d) {
    case Dominance::StrictlyDominates: return "strictly-dominates";
    case Dominance::Equal: return "equal";
    case Dominance::Incomparable: return "incomparable";
    case Dominance::DominatedBy: return "dominated-by";
  }
  return "?";
}

const char* to_string(SPVerdict v) {
  switch (v) {
    case SPVerdict::Strategyproof: return "strategyproof";
    case SPVerdict::WeaklySPOnly: return "weakly-strategyproof";
    case SPVerdict::NotWeaklySP: return "not-weakly-strategyproof";
  }
  return "?";
}

Dominance sd_dominates(std::span<const Rational> p, std::span<const Rational> q,
                       const PreferenceOrder& pref) {
  if (p.size() != q.size() || p.size() != pref.size()) {
    throw std::invalid_argument("sd_dominates: rows and preference differ in length");
  }
  Rational cp = 0;
  Rational cq = 0;
  bool some_greater = false;
  bool some_less = false;
  for (std::size_t r = 0; r < pref.size(); ++r) {
    const auto item = static_cast<std::size_t>(pref.at(r));
    cp += p[item];
    cq += q[item];
    if (cp > cq) some_greater = true;
    if (cp < cq) some_less = true;
  }
  if (some_greater && some_less) return Dominance::Incomparable;
  if (some_greater) return Dominance::StrictlyDominates;
  if (some_less) return Dominance::DominatedBy;
  return Dominance::Equal;
}

bool is_pareto_efficient(const Matching& m, const Profile& profile) {
  return top_trading_cycles(profile, m) == m;
}

std::optional<std::vector<ItemId>> find_tau_cycle(const FractionalAssignment& p,
                                                  const Profile& profile) {
  const std::size_t n = profile.size();
  // edge[x][y]: x τ y
  std::vector<std::vector<bool>> edge(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) {
    const auto& pref = profile.agent(static_cast<AgentId>(a));
    for (std::size_t r = 1; r < n; ++r) {
      const ItemId y = pref.at(r);
      if (sgn(p.at(static_cast<AgentId>(a), y)) <= 0) continue;
      for (std::size_t s = 0; s < r; ++s) edge[static_cast<std::size_t>(pref.at(s))][static_cast<std::size_t>(y)] = true;
    }
  }
  std::vector<int> color(n, 0);
  std::vector<ItemId> parent(n, -1);
  std::optional<std::vector<ItemId>> cycle;
  auto dfs = [&](auto&& self, std::size_t x) -> bool {
    color[x] = 1;
    for (std::size_t y = 0; y < n; ++y) {
      if (!edge[x][y]) continue;
      if (color[y] == 1) {
        std::vector<ItemId> c{static_cast<ItemId>(y)};
        for (auto v = static_cast<ItemId>(x); v != static_cast<ItemId>(y); v = parent[static_cast<std::size_t>(v)]) {
          c.push_back(v);
        }
        std::reverse(c.begin() + 1, c.end());
        cycle = std::move(c);
        return true;
      }
      if (color[y] == 0) {
        parent[y] = static_cast<ItemId>(x);
        if (self(self, y)) return true;
      }
    }
    color[x] = 2;
    return false;
  };
  for (std::size_t x = 0; x < n; ++x) {
    if (color[x] == 0 && dfs(dfs, x)) break;
  }
  return cycle;
}

bool is_ordinally_efficient(const FractionalAssignment& p, const Profile& profile) {
  return !find_tau_cycle(p, profile).has_value();
}

SPReport check_strategyproofness(const Mechanism& mech, const Profile& profile, AgentId agent,
                                 std::size_t limit) {
  const std::size_t n = profile.size();
  if (n > limit) {
    throw Error(ErrorKind::LimitExceeded, "strategyproofness check needs n <= " + std::to_string(limit));
  }
  if (agent < 0 || static_cast<std::size_t>(agent) >= n) {
    throw Error(ErrorKind::InvalidInstance, "agent index out of range");
  }
  const PreferenceOrder& truth = profile.agent(agent);
  SPReport report;
  report.agent = agent;
  report.truthful_row = random_assignment(mech, profile, limit).row(agent);
  for_each_permutation(n, [&](const std::vector<int>& perm) {
    PreferenceOrder lie(perm);
    if (lie == truth) return;
    MisreportOutcome out;
    out.row = random_assignment(mech, profile.with_agent(agent, lie), limit).row(agent);
    out.truthful_vs_report = sd_dominates(report.truthful_row, out.row, truth);
    out.report = std::move(lie);
    report.misreports.push_back(std::move(out));
  });
  for (std::size_t i = 0; i < report.misreports.size(); ++i) {
    const auto rel = report.misreports[i].truthful_vs_report;
    if (rel == Dominance::DominatedBy) {
      report.overall = SPVerdict::NotWeaklySP;
      report.witness = i;
      break;
    }
    if (rel == Dominance::Incomparable && report.overall == SPVerdict::Strategyproof) {
      report.overall = SPVerdict::WeaklySPOnly;
      report.witness = i;
    }
  }
  return report;
}

bool feasible_top_k(const Profile& profile, std::size_t k) {
  const std::size_t n = profile.size();
  if (k == 0 || k > n) throw Error(ErrorKind::InvalidInstance, "k must lie in [1, n]");
  std::vector<AgentId> owner(n, -1);
  std::vector<bool> seen;
  auto augment = [&](auto&& self, AgentId a) -> bool {
    const auto& pref = profile.agent(a);
    for (std::size_t r = 0; r < k; ++r) {
      const auto o = static_cast<std::size_t>(pref.at(r));
      if (seen[o]) continue;
      seen[o] = true;
      if (owner[o] < 0 || self(self, owner[o])) {
        owner[o] = a;
        return true;
      }
    }
    return false;
  };
  for (std::size_t a = 0; a < n; ++a) {
    seen.assign(n, false);
    if (!augment(augment, static_cast<AgentId>(a))) return false;
  }
  return true;
}

std::optional<AgentOrder> conditional_bound_violation(const Mechanism& mech,
                                                      const Profile& profile, std::size_t k,
                                                      std::size_t limit) {
  const std::size_t n = profile.size();
  if (!feasible_top_k(profile, k)) return std::nullopt;
  auto within = [&](AgentId a, ItemId o) {
    return static_cast<std::size_t>(profile.agent(a).rank_of(o)) < k;
  };
  if (mech.fractional()) {
    const auto p = probabilistic_serial(profile);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t o = 0; o < n; ++o) {
        const auto ai = static_cast<AgentId>(a);
        const auto oi = static_cast<ItemId>(o);
        if (sgn(p.at(ai, oi)) > 0 && !within(ai, oi)) return AgentOrder();
      }
    }
    return std::nullopt;
  }
  if (n > limit) {
    throw Error(ErrorKind::LimitExceeded, "conditional bound check needs n <= " + std::to_string(limit));
  }
  std::optional<AgentOrder> bad;
  std::vector<int> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i);
  do {
    AgentOrder order(perm);
    const Matching m = mech.run(profile, order);
    for (std::size_t a = 0; a < n; ++a) {
      if (!within(static_cast<AgentId>(a), m.item_of(static_cast<AgentId>(a)))) {
        bad = std::move(order);
        break;
      }
    }
    if (bad) break;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return bad;
}

bool satisfies_conditional_bound(const Mechanism& mech, const Profile& profile, std::size_t k,
                                 std::size_t limit) {
  return !conditional_bound_violation(mech, profile, k, limit).has_value();
}

}  // namespace propmatch
