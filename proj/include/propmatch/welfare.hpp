#pragma once

// Borda welfare. An agent's item at 1-indexed rank r is worth n - r: the top
// choice is worth n-1 and the last choice 0.

#include <cstdint>
#include <string>
#include <vector>

#include "propmatch/core.hpp"
#include "propmatch/mechanism.hpp"

namespace propmatch {

int borda_utility(const Profile& profile, AgentId a, ItemId item);

Rational utilitarian_welfare(const Matching& m, const Profile& profile);
Rational utilitarian_welfare(const FractionalAssignment& p, const Profile& profile);

/// Minimum (expected) utility over agents, divided by n.
Rational egalitarian_welfare(const Matching& m, const Profile& profile);
Rational egalitarian_welfare(const FractionalAssignment& p, const Profile& profile);

struct OptimalAssignment {
  Rational value;
  Matching witness;
};

/// Maximum-weight perfect matching under Borda weights (Hungarian method,
/// O(n^3)).
OptimalAssignment optimal_utilitarian(const Profile& profile);

enum class OrdersMode { Exact, Sampled };

struct WelfareConfig {
  std::size_t profile_samples = 10000;
  std::uint64_t seed = 1;
  /// Randomized mechanisms average over all n! orders when n <= this,
  /// otherwise over `sampled_orders` uniformly drawn orders per profile.
  std::size_t exact_order_max_n = 5;
  std::size_t sampled_orders = 8;
  /// Loss as (mean OPT - mean W) / mean OPT instead of the mean of per-profile ratios.
  bool ratio_of_means = false;
};

struct WelfareStats {
  double mean = 0;
  double std_error = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  OrdersMode orders_mode = OrdersMode::Exact;
};

const char* to_string(OrdersMode m);

/// Per-profile observations behind a statistic; profile i and its orders
/// depend only on (seed, i), so two mechanisms evaluated with the same
/// config see identical profiles and orders and can be compared pairwise.
struct WelfareSamples {
  std::vector<double> values;
  OrdersMode orders_mode = OrdersMode::Exact;
};

WelfareSamples utilitarian_loss_samples(const Mechanism& mech, std::size_t n,
                                        const WelfareConfig& cfg);
/// Expected minimum normalized utility ("egal").
WelfareSamples egalitarian_samples(const Mechanism& mech, std::size_t n,
                                   const WelfareConfig& cfg);
/// Minimum over agents of expected normalized utility ("egal_min_exp").
WelfareSamples egalitarian_min_expected_samples(const Mechanism& mech, std::size_t n,
                                                const WelfareConfig& cfg);

WelfareStats summarize(const WelfareSamples& s, std::uint64_t seed);

/// Mean and standard error of a - b over paired observations.
struct PairedDifference {
  double mean = 0;
  double std_error = 0;
};
PairedDifference paired_difference(const WelfareSamples& a, const WelfareSamples& b);

WelfareStats utilitarian_loss(const Mechanism& mech, std::size_t n, const WelfareConfig& cfg);
WelfareStats egalitarian(const Mechanism& mech, std::size_t n, const WelfareConfig& cfg);

struct OrderBiasEstimate {
  std::vector<double> position_mean;  ///< mean Borda utility of the agent at each initial position
  std::vector<double> position_stderr;
  double bias = 0;                    ///< (max - min of position_mean) / n
  double std_error = 0;                  ///< standard error of the max-min pair's difference / n
  std::size_t samples = 0;
};

/// Runs the deterministic version of `mech` with the fixed order 1..n on
/// sampled profiles. Mechanisms that ignore the order report 0.
OrderBiasEstimate order_bias_estimate(const Mechanism& mech, std::size_t n,
                                      const WelfareConfig& cfg);
WelfareStats order_bias(const Mechanism& mech, std::size_t n, const WelfareConfig& cfg);

}  // namespace propmatch
