#pragma once

// Random assignments induced by a uniformly random initial agent order:
// exact enumeration of all n! orders, or seeded sampling.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "propmatch/core.hpp"
#include "propmatch/mechanism.hpp"
#include "propmatch/random.hpp"

namespace propmatch {

inline constexpr std::size_t kDefaultEnumerationLimit = 8;

struct LotteryResult {
  FractionalAssignment assignment;
  /// Distinct outcome matchings in increasing order, with their probabilities.
  std::vector<std::pair<Matching, Rational>> support;
  std::uint64_t order_count = 0;
};

struct SampleConfig {
  std::size_t sample_count = 1000;
  std::uint64_t seed = 0;
};

/// Runs `mech` (its "R-" flag is irrelevant) on every initial order in
/// lexicographic order. Throws Error(ErrorKind::LimitExceeded) when
/// n > limit and Error(ErrorKind::Mode) for PS.
LotteryResult exact_lottery(const Mechanism& mech, const Profile& profile,
                            std::size_t limit = kDefaultEnumerationLimit);

/// Like exact_lottery but only the matrix; skips building the support.
FractionalAssignment exact_assignment(const Mechanism& mech, const Profile& profile,
                                      std::size_t limit = kDefaultEnumerationLimit);

/// Empirical frequencies over cfg.sample_count uniformly drawn orders.
FractionalAssignment sampled_lottery(const Mechanism& mech, const Profile& profile,
                                     const SampleConfig& cfg);

/// The random assignment a mechanism produces: PS directly, an "R-"
/// mechanism by exact enumeration, a plain mechanism via the identity order.
FractionalAssignment random_assignment(const Mechanism& mech, const Profile& profile,
                                       std::size_t limit = kDefaultEnumerationLimit);

enum class OrderMode { All, Sampled };

struct OrderSpec {
  OrderMode mode = OrderMode::All;
  std::size_t samples = 0;  ///< orders per profile in Sampled mode
  std::uint64_t seed = 0;
};

struct Counterexample {
  Profile profile;
  std::optional<AgentOrder> order;  ///< absent when exact lotteries differ
  std::string detail;
};

struct EquivalenceVerdict {
  bool equal = true;
  std::uint64_t cases = 0;  ///< (profile, order) pairs or profiles compared
  std::optional<Counterexample> witness;
};

/// Compares two mechanisms on one profile. If either is randomized or PS the
/// exact random assignments are compared; otherwise the matchings are
/// compared order by order.
EquivalenceVerdict compare_on(const Mechanism& a, const Mechanism& b, const Profile& profile,
                              const OrderSpec& orders = {});

/// compare_on over a set of profiles; stops at the first difference.
EquivalenceVerdict equivalent_on(const Mechanism& a, const Mechanism& b,
                                 std::span<const Profile> profiles, const OrderSpec& orders = {});

}  // namespace propmatch
