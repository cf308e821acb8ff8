#include "propmatch/classic.hpp"

#include <algorithm>

namespace propmatch {

namespace {

void check_order(const Profile& profile, const AgentOrder& order) {
  if (order.size() != profile.size()) {
    throw Error(ErrorKind::InvalidInstance, "agent order length does not match profile size");
  }
}

}  // namespace

Matching serial_dictatorship(const Profile& profile, const AgentOrder& order) {
  check_order(profile, order);
  const std::size_t n = profile.size();
  std::vector<bool> taken(n, false);
  std::vector<ItemId> item_of(n, -1);
  for (AgentId a : order.agents()) {
    const auto& pref = profile.agent(a);
    for (std::size_t r = 0; r < n; ++r) {
      const auto o = static_cast<std::size_t>(pref.at(r));
      if (!taken[o]) {
        taken[o] = true;
        item_of[static_cast<std::size_t>(a)] = pref.at(r);
        break;
      }
    }
  }
  return Matching(std::move(item_of));
}

Matching naive_boston_one_sided(const Profile& profile, const AgentOrder& order) {
  check_order(profile, order);
  const std::size_t n = profile.size();
  std::vector<bool> taken(n, false);
  std::vector<ItemId> item_of(n, -1);
  for (std::size_t round = 0; round < n; ++round) {
    // Visiting agents in order means the first applicant seen wins.
    std::vector<bool> claimed_this_round(n, false);
    for (AgentId a : order.agents()) {
      if (item_of[static_cast<std::size_t>(a)] >= 0) continue;
      const ItemId o = profile.agent(a).at(round);
      const auto oi = static_cast<std::size_t>(o);
      if (taken[oi] || claimed_this_round[oi]) continue;
      claimed_this_round[oi] = true;
      item_of[static_cast<std::size_t>(a)] = o;
    }
    for (std::size_t o = 0; o < n; ++o) {
      if (claimed_this_round[o]) taken[o] = true;
    }
  }
  return Matching(std::move(item_of));
}

FractionalAssignment probabilistic_serial(const Profile& profile) {
  const std::size_t n = profile.size();
  FractionalAssignment out(n);
  std::vector<Rational> remaining(n, Rational(1));
  std::vector<bool> exhausted(n, false);
  std::vector<ItemId> eating(n, -1);
  Rational t = 0;

  while (t < 1) {
    std::vector<int> eaters(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      const auto& pref = profile.agent(static_cast<AgentId>(a));
      for (std::size_t r = 0; r < n; ++r) {
        if (!exhausted[static_cast<std::size_t>(pref.at(r))]) {
          eating[a] = pref.at(r);
          break;
        }
      }
      ++eaters[static_cast<std::size_t>(eating[a])];
    }
    Rational dt = 1 - t;
    for (std::size_t o = 0; o < n; ++o) {
      if (eaters[o] == 0) continue;
      Rational until_empty = remaining[o] / eaters[o];
      if (until_empty < dt) dt = until_empty;
    }
    for (std::size_t a = 0; a < n; ++a) {
      out.at(static_cast<AgentId>(a), eating[a]) += dt;
    }
    for (std::size_t o = 0; o < n; ++o) {
      if (eaters[o] == 0) continue;
      remaining[o] -= dt * eaters[o];
      if (remaining[o] == 0) exhausted[o] = true;
    }
    t += dt;
  }
  out.check_doubly_stochastic();
  return out;
}

Matching top_trading_cycles(const Profile& profile, const Endowment& endowment) {
  const std::size_t n = profile.size();
  if (endowment.size() != n) {
    throw Error(ErrorKind::InvalidInstance, "endowment size does not match profile size");
  }
  std::vector<AgentId> owner = endowment.agent_of();
  std::vector<bool> active(n, true);
  std::vector<ItemId> result(n, -1);
  std::vector<std::size_t> cursor(n, 0);  // next rank to inspect per agent
  std::size_t remaining = n;

  while (remaining > 0) {
    // Each active agent points at the owner of its best remaining item.
    std::vector<AgentId> points_to(n, -1);
    std::vector<ItemId> wants(n, -1);
    for (std::size_t a = 0; a < n; ++a) {
      if (!active[a]) continue;
      const auto& pref = profile.agent(static_cast<AgentId>(a));
      while (!active[static_cast<std::size_t>(owner[static_cast<std::size_t>(pref.at(cursor[a]))])]) {
        ++cursor[a];
      }
      wants[a] = pref.at(cursor[a]);
      points_to[a] = owner[static_cast<std::size_t>(wants[a])];
    }
    // Functional graph: walk from every unvisited agent; cycles are found
    // where a walk revisits a node of its own path.
    std::vector<int> state(n, 0);  // 0 new, 1 on current path, 2 done
    std::vector<AgentId> in_cycle;
    for (std::size_t s = 0; s < n; ++s) {
      if (!active[s] || state[s] != 0) continue;
      std::vector<AgentId> path;
      auto v = static_cast<AgentId>(s);
      while (state[static_cast<std::size_t>(v)] == 0) {
        state[static_cast<std::size_t>(v)] = 1;
        path.push_back(v);
        v = points_to[static_cast<std::size_t>(v)];
      }
      if (state[static_cast<std::size_t>(v)] == 1) {
        for (auto it = std::find(path.begin(), path.end(), v); it != path.end(); ++it) {
          in_cycle.push_back(*it);
        }
      }
      for (AgentId p : path) state[static_cast<std::size_t>(p)] = 2;
    }
    for (AgentId a : in_cycle) result[static_cast<std::size_t>(a)] = wants[static_cast<std::size_t>(a)];
    for (AgentId a : in_cycle) active[static_cast<std::size_t>(a)] = false;
    remaining -= in_cycle.size();
  }
  return Matching(std::move(result));
}

}  // namespace propmatch
