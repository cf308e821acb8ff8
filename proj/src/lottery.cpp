#include "propmatch/lottery.hpp"

#include <algorithm>
#include <map>

#include "propmatch/classic.hpp"
#include "propmatch/io.hpp"

namespace propmatch {

namespace {

void check_enumerable(const Mechanism& mech, const Profile& profile, std::size_t limit) {
  if (mech.fractional()) {
    throw Error(ErrorKind::Mode, "PS has no order lottery; use its assignment directly");
  }
  if (profile.size() > limit) {
    throw Error(ErrorKind::LimitExceeded,
                "exact enumeration of " + std::to_string(profile.size()) +
                    "! orders exceeds the limit n <= " + std::to_string(limit) +
                    "; use sampling");
  }
}

template <typename OnOutcome>
std::uint64_t tally_all_orders(const Mechanism& mech, const Profile& profile,
                               std::vector<std::uint64_t>& counts, OnOutcome&& on_outcome) {
  const std::size_t n = profile.size();
  counts.assign(n * n, 0);
  std::uint64_t total = 0;
  for_each_permutation(n, [&](const std::vector<int>& p) {
    const Matching m = mech.run(profile, AgentOrder(p));
    for (std::size_t a = 0; a < n; ++a) {
      ++counts[a * n + static_cast<std::size_t>(m.item_of(static_cast<AgentId>(a)))];
    }
    on_outcome(m);
    ++total;
  });
  return total;
}

}  // namespace

LotteryResult exact_lottery(const Mechanism& mech, const Profile& profile, std::size_t limit) {
  check_enumerable(mech, profile, limit);
  std::vector<std::uint64_t> counts;
  std::map<Matching, std::uint64_t> support;
  const auto total =
      tally_all_orders(mech, profile, counts, [&](const Matching& m) { ++support[m]; });
  LotteryResult out;
  out.assignment = FractionalAssignment::from_counts(profile.size(), counts, total);
  out.order_count = total;
  for (auto& [m, c] : support) {
    Rational w(static_cast<unsigned long>(c), static_cast<unsigned long>(total));
    w.canonicalize();
    out.support.emplace_back(m, w);
  }
  out.assignment.check_doubly_stochastic();
  return out;
}

FractionalAssignment exact_assignment(const Mechanism& mech, const Profile& profile,
                                      std::size_t limit) {
  check_enumerable(mech, profile, limit);
  std::vector<std::uint64_t> counts;
  const auto total = tally_all_orders(mech, profile, counts, [](const Matching&) {});
  return FractionalAssignment::from_counts(profile.size(), counts, total);
}

FractionalAssignment sampled_lottery(const Mechanism& mech, const Profile& profile,
                                     const SampleConfig& cfg) {
  if (cfg.sample_count == 0) throw Error(ErrorKind::InvalidInstance, "sample_count must be >= 1");
  if (mech.fractional()) return probabilistic_serial(profile);
  const std::size_t n = profile.size();
  std::vector<std::uint64_t> counts(n * n, 0);
  Rng rng(cfg.seed);
  for (std::size_t s = 0; s < cfg.sample_count; ++s) {
    const Matching m = mech.run(profile, random_order(n, rng));
    for (std::size_t a = 0; a < n; ++a) {
      ++counts[a * n + static_cast<std::size_t>(m.item_of(static_cast<AgentId>(a)))];
    }
  }
  return FractionalAssignment::from_counts(n, counts, cfg.sample_count);
}

FractionalAssignment random_assignment(const Mechanism& mech, const Profile& profile,
                                       std::size_t limit) {
  if (mech.fractional()) return probabilistic_serial(profile);
  if (mech.randomized()) return exact_assignment(mech, profile, limit);
  return matching_to_assignment(mech.run(profile, AgentOrder::identity(profile.size())));
}

EquivalenceVerdict compare_on(const Mechanism& a, const Mechanism& b, const Profile& profile,
                              const OrderSpec& orders) {
  EquivalenceVerdict v;
  const std::size_t n = profile.size();
  if (a.randomized() || b.randomized() || a.fractional() || b.fractional()) {
    const auto pa = random_assignment(a, profile);
    const auto pb = random_assignment(b, profile);
    v.cases = 1;
    if (pa != pb) {
      const Labels labels = Labels::defaults(n);
      v.equal = false;
      v.witness = Counterexample{profile, std::nullopt,
                                 a.name() + ":\n" + format_matrix(pa, labels) + b.name() + ":\n" +
                                     format_matrix(pb, labels)};
    }
    return v;
  }
  auto check = [&](const AgentOrder& order) {
    ++v.cases;
    const Matching ma = a.run(profile, order);
    const Matching mb = b.run(profile, order);
    if (ma != mb) {
      v.equal = false;
      v.witness = Counterexample{profile, order,
                                 a.name() + " " + format_matching(ma) + " vs " + b.name() + " " +
                                     format_matching(mb)};
    }
    return v.equal;
  };
  if (orders.mode == OrderMode::All) {
    if (n > kDefaultEnumerationLimit) {
      throw Error(ErrorKind::LimitExceeded, "too many orders to enumerate; use sampled orders");
    }
    std::vector<int> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<int>(i);
    do {
      if (!check(AgentOrder(p))) break;
    } while (std::next_permutation(p.begin(), p.end()));
  } else {
    Rng rng(orders.seed);
    for (std::size_t s = 0; s < orders.samples; ++s) {
      if (!check(random_order(n, rng))) break;
    }
  }
  return v;
}

EquivalenceVerdict equivalent_on(const Mechanism& a, const Mechanism& b,
                                 std::span<const Profile> profiles, const OrderSpec& orders) {
  EquivalenceVerdict total;
  std::size_t index = 0;
  for (const auto& p : profiles) {
    OrderSpec per = orders;
    per.seed = mix_seed(orders.seed, index++);
    auto v = compare_on(a, b, p, per);
    total.cases += v.cases;
    if (!v.equal) {
      total.equal = false;
      total.witness = std::move(v.witness);
      break;
    }
  }
  return total;
}

}  // namespace propmatch
