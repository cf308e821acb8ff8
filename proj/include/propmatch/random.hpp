#pragma once

// Deterministic random streams. The bounded-integer and shuffle routines are
// written out here instead of using <random> distributions, whose output is
// implementation-defined, so a seed reproduces the same draws everywhere.

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "propmatch/core.hpp"

namespace propmatch {

/// SplitMix64 finalizer; used to derive independent sub-seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [0, bound), bound >= 1 (Lemire's multiply-shift with rejection).
  std::uint64_t below(std::uint64_t bound);

  template <typename T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

  std::vector<int> permutation(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

AgentOrder random_order(std::size_t n, Rng& rng);

/// Profiles whose agent orders are drawn i.i.d. uniformly from the n!
/// permutations. One-sided only.
class ProfileSampler {
 public:
  ProfileSampler(std::size_t n, std::uint64_t seed);
  Profile next();
  std::size_t n() const noexcept { return n_; }

 private:
  std::size_t n_;
  Rng rng_;
};

/// Calls fn on every one-sided profile of size n (n!^n of them) in
/// lexicographic order of the agents' rankings, agent 0 varying slowest.
/// Returning false from fn stops the enumeration.
void for_each_profile(std::size_t n, const std::function<bool(const Profile&)>& fn);

/// Calls fn on every permutation of 0..n-1 in lexicographic order.
void for_each_permutation(std::size_t n, const std::function<void(const std::vector<int>&)>& fn);

std::uint64_t factorial(std::size_t n);

}  // namespace propmatch
