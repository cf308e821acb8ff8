#include "propmatch/welfare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "propmatch/classic.hpp"
#include "propmatch/random.hpp"

namespace propmatch {

namespace {

int utility(const Profile& profile, AgentId a, ItemId item) {
  return static_cast<int>(profile.size()) - 1 - profile.agent(a).rank_of(item);
}

// Hungarian method (potentials + shortest augmenting paths) on costs
// (n-1) - u, which are non-negative; returns the maximizing assignment.
std::vector<ItemId> hungarian_max(const Profile& profile) {
  const std::size_t n = profile.size();
  const int top = static_cast<int>(n) - 1;
  auto cost = [&](std::size_t a, std::size_t o) {
    return top - utility(profile, static_cast<AgentId>(a), static_cast<ItemId>(o));
  };
  constexpr long long kInf = std::numeric_limits<long long>::max() / 4;
  // 1-indexed rows (agents) and columns (items); column 0 is a sentinel.
  std::vector<long long> u(n + 1, 0), v(n + 1, 0), minv(n + 1);
  std::vector<std::size_t> row_of(n + 1, 0), way(n + 1, 0);
  std::vector<bool> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    row_of[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), false);
    do {
      used[j0] = true;
      const std::size_t i0 = row_of[j0];
      long long delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const long long cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[row_of[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      row_of[j0] = row_of[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<ItemId> item_of(n, -1);
  for (std::size_t j = 1; j <= n; ++j) item_of[row_of[j] - 1] = static_cast<ItemId>(j - 1);
  return item_of;
}

int optimal_value(const Profile& profile) {
  const auto item_of = hungarian_max(profile);
  int total = 0;
  for (std::size_t a = 0; a < item_of.size(); ++a) {
    total += utility(profile, static_cast<AgentId>(a), item_of[a]);
  }
  return total;
}

double to_double(const Rational& q) { return q.get_d(); }

// Aggregates over the orders evaluated for one profile.
struct OrderTally {
  std::vector<long long> agent_utility_sum;
  long long total_utility = 0;
  long long min_utility_sum = 0;
  std::size_t runs = 0;

  explicit OrderTally(std::size_t n) : agent_utility_sum(n, 0) {}

  void add(const Matching& m, const Profile& profile) {
    int lo = std::numeric_limits<int>::max();
    for (std::size_t a = 0; a < agent_utility_sum.size(); ++a) {
      const int u = utility(profile, static_cast<AgentId>(a), m.item_of(static_cast<AgentId>(a)));
      agent_utility_sum[a] += u;
      total_utility += u;
      lo = std::min(lo, u);
    }
    min_utility_sum += lo;
    ++runs;
  }
};

struct ProfileEvaluation {
  double expected_welfare = 0;
  double expected_min = 0;      // E[min_a u_a]
  double min_expected = 0;      // min_a E[u_a]
};

class Evaluator {
 public:
  Evaluator(const Mechanism& mech, std::size_t n, const WelfareConfig& cfg)
      : mech_(mech), n_(n), cfg_(cfg), sampler_(n, cfg.seed) {
    if (n == 0) throw Error(ErrorKind::InvalidInstance, "n must be at least 1");
    if (cfg.profile_samples == 0) {
      throw Error(ErrorKind::InvalidInstance, "profile_samples must be at least 1");
    }
    if (mech.needs_item_prefs()) {
      throw Error(ErrorKind::Mode, mech.name() + " needs two-sided profiles; welfare experiments sample one-sided profiles");
    }
  }

  OrdersMode orders_mode() const {
    return mech_.randomized() && n_ > cfg_.exact_order_max_n ? OrdersMode::Sampled : OrdersMode::Exact;
  }

  Profile next_profile() { return sampler_.next(); }

  ProfileEvaluation evaluate(const Profile& profile, std::size_t index) const {
    ProfileEvaluation out;
    if (mech_.fractional()) {
      const auto p = probabilistic_serial(profile);
      out.expected_welfare = to_double(utilitarian_welfare(p, profile));
      out.min_expected = to_double(egalitarian_welfare(p, profile)) * static_cast<double>(n_);
      out.expected_min = out.min_expected;
      return out;
    }
    OrderTally tally(n_);
    if (!mech_.randomized()) {
      tally.add(mech_.run(profile, AgentOrder::identity(n_)), profile);
    } else if (orders_mode() == OrdersMode::Exact) {
      for_each_permutation(n_, [&](const std::vector<int>& perm) {
        tally.add(mech_.run(profile, AgentOrder(perm)), profile);
      });
    } else {
      Rng rng(mix_seed(cfg_.seed, index));
      for (std::size_t s = 0; s < cfg_.sampled_orders; ++s) {
        tally.add(mech_.run(profile, random_order(n_, rng)), profile);
      }
    }
    const auto runs = static_cast<double>(tally.runs);
    out.expected_welfare = static_cast<double>(tally.total_utility) / runs;
    out.expected_min = static_cast<double>(tally.min_utility_sum) / runs;
    out.min_expected =
        static_cast<double>(*std::min_element(tally.agent_utility_sum.begin(), tally.agent_utility_sum.end())) /
        runs;
    return out;
  }

 private:
  Mechanism mech_;
  std::size_t n_;
  WelfareConfig cfg_;
  ProfileSampler sampler_;
};

template <typename Fn>
WelfareSamples collect(const Mechanism& mech, std::size_t n, const WelfareConfig& cfg, Fn&& metric) {
  Evaluator eval(mech, n, cfg);
  WelfareSamples out;
  out.orders_mode = eval.orders_mode();
  out.values.reserve(cfg.profile_samples);
  for (std::size_t i = 0; i < cfg.profile_samples; ++i) {
    const Profile p = eval.next_profile();
    out.values.push_back(metric(p, eval.evaluate(p, i)));
  }
  return out;
}

double mean_of(const std::vector<double>& xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double stderr_of(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0;
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
}

}  // namespace

const char* to_string(OrdersMode m) { return m == OrdersMode::Exact ? "exact" : "sampled"; }

int borda_utility(const Profile& profile, AgentId a, ItemId item) { return utility(profile, a, item); }

Rational utilitarian_welfare(const Matching& m, const Profile& profile) {
  long long total = 0;
  for (std::size_t a = 0; a < m.size(); ++a) {
    total += utility(profile, static_cast<AgentId>(a), m.item_of(static_cast<AgentId>(a)));
  }
  return Rational(static_cast<long>(total));
}

Rational utilitarian_welfare(const FractionalAssignment& p, const Profile& profile) {
  Rational total = 0;
  const std::size_t n = p.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t o = 0; o < n; ++o) {
      const auto ai = static_cast<AgentId>(a);
      const auto oi = static_cast<ItemId>(o);
      total += p.at(ai, oi) * utility(profile, ai, oi);
    }
  }
  return total;
}

Rational egalitarian_welfare(const Matching& m, const Profile& profile) {
  int lo = std::numeric_limits<int>::max();
  for (std::size_t a = 0; a < m.size(); ++a) {
    lo = std::min(lo, utility(profile, static_cast<AgentId>(a), m.item_of(static_cast<AgentId>(a))));
  }
  Rational out(lo, static_cast<int>(m.size()));
  out.canonicalize();
  return out;
}

Rational egalitarian_welfare(const FractionalAssignment& p, const Profile& profile) {
  const std::size_t n = p.size();
  std::optional<Rational> lo;
  for (std::size_t a = 0; a < n; ++a) {
    Rational e = 0;
    for (std::size_t o = 0; o < n; ++o) {
      const auto ai = static_cast<AgentId>(a);
      const auto oi = static_cast<ItemId>(o);
      e += p.at(ai, oi) * utility(profile, ai, oi);
    }
    if (!lo || e < *lo) lo = e;
  }
  return *lo / static_cast<int>(n);
}

OptimalAssignment optimal_utilitarian(const Profile& profile) {
  Matching witness(hungarian_max(profile));
  return OptimalAssignment{utilitarian_welfare(witness, profile), std::move(witness)};
}

WelfareStats summarize(const WelfareSamples& s, std::uint64_t seed) {
  WelfareStats st;
  st.samples = s.values.size();
  st.seed = seed;
  st.orders_mode = s.orders_mode;
  if (s.values.empty()) return st;
  st.mean = mean_of(s.values);
  st.std_error = stderr_of(s.values, st.mean);
  return st;
}

PairedDifference paired_difference(const WelfareSamples& a, const WelfareSamples& b) {
  if (a.values.size() != b.values.size() || a.values.empty()) {
    throw std::invalid_argument("paired_difference: sample vectors must be equal-length and non-empty");
  }
  std::vector<double> d(a.values.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = a.values[i] - b.values[i];
  PairedDifference out;
  out.mean = mean_of(d);
  out.std_error = stderr_of(d, out.mean);
  return out;
}

WelfareSamples utilitarian_loss_samples(const Mechanism& mech, std::size_t n,
                                        const WelfareConfig& cfg) {
  return collect(mech, n, cfg, [](const Profile& p, const ProfileEvaluation& e) {
    const double opt = optimal_value(p);
    return opt == 0 ? 0.0 : (opt - e.expected_welfare) / opt;
  });
}

WelfareSamples egalitarian_samples(const Mechanism& mech, std::size_t n, const WelfareConfig& cfg) {
  const double scale = static_cast<double>(n);
  return collect(mech, n, cfg,
                 [scale](const Profile&, const ProfileEvaluation& e) { return e.expected_min / scale; });
}

WelfareSamples egalitarian_min_expected_samples(const Mechanism& mech, std::size_t n,
                                                const WelfareConfig& cfg) {
  const double scale = static_cast<double>(n);
  return collect(mech, n, cfg,
                 [scale](const Profile&, const ProfileEvaluation& e) { return e.min_expected / scale; });
}

WelfareStats utilitarian_loss(const Mechanism& mech, std::size_t n, const WelfareConfig& cfg) {
  if (!cfg.ratio_of_means) return summarize(utilitarian_loss_samples(mech, n, cfg), cfg.seed);
  // Ratio of means: delta method for the standard error.
  std::vector<double> opt;
  std::vector<double> lost;
  auto s = collect(mech, n, cfg, [&](const Profile& p, const ProfileEvaluation& e) {
    const double o = optimal_value(p);
    opt.push_back(o);
    lost.push_back(o - e.expected_welfare);
    return 0.0;
  });
  WelfareStats st;
  st.samples = opt.size();
  st.seed = cfg.seed;
  st.orders_mode = s.orders_mode;
  const double mo = mean_of(opt);
  const double ml = mean_of(lost);
  st.mean = mo == 0 ? 0 : ml / mo;
  std::vector<double> resid(opt.size());
  for (std::size_t i = 0; i < opt.size(); ++i) resid[i] = (lost[i] - st.mean * opt[i]) / mo;
  st.std_error = stderr_of(resid, mean_of(resid));
  return st;
}

WelfareStats egalitarian(const Mechanism& mech, std::size_t n, const WelfareConfig& cfg) {
  return summarize(egalitarian_samples(mech, n, cfg), cfg.seed);
}

OrderBiasEstimate order_bias_estimate(const Mechanism& mech, std::size_t n, const WelfareConfig& cfg) {
  OrderBiasEstimate out;
  out.samples = cfg.profile_samples;
  out.position_mean.assign(n, 0.0);
  out.position_stderr.assign(n, 0.0);
  const Mechanism base = mech.deterministic();
  Evaluator eval(base, n, cfg);
  if (!base.order_dependent() || n <= 1) return out;
  std::vector<std::vector<double>> by_position(n, std::vector<double>(cfg.profile_samples));
  const AgentOrder identity = AgentOrder::identity(n);
  for (std::size_t i = 0; i < cfg.profile_samples; ++i) {
    const Profile p = eval.next_profile();
    const Matching m = base.run(p, identity);
    for (std::size_t a = 0; a < n; ++a) {
      by_position[a][i] = utility(p, static_cast<AgentId>(a), m.item_of(static_cast<AgentId>(a)));
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    out.position_mean[k] = mean_of(by_position[k]);
    out.position_stderr[k] = stderr_of(by_position[k], out.position_mean[k]);
  }
  const auto hi = static_cast<std::size_t>(
      std::max_element(out.position_mean.begin(), out.position_mean.end()) - out.position_mean.begin());
  const auto lo = static_cast<std::size_t>(
      std::min_element(out.position_mean.begin(), out.position_mean.end()) - out.position_mean.begin());
  const double scale = static_cast<double>(n);
  out.bias = (out.position_mean[hi] - out.position_mean[lo]) / scale;
  std::vector<double> d(cfg.profile_samples);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = by_position[hi][i] - by_position[lo][i];
  out.std_error = stderr_of(d, mean_of(d)) / scale;
  return out;
}

WelfareStats order_bias(const Mechanism& mech, std::size_t n, const WelfareConfig& cfg) {
  const auto est = order_bias_estimate(mech, n, cfg);
  WelfareStats st;
  st.mean = est.bias;
  st.std_error = est.std_error;
  st.samples = est.samples;
  st.seed = cfg.seed;
  st.orders_mode = OrdersMode::Exact;
  return st;
}

}  // namespace propmatch
