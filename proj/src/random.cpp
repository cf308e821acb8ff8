#include "propmatch/random.hpp"

#include <algorithm>
#include <numeric>

namespace propmatch {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  __extension__ typedef unsigned __int128 u128;
  u128 m = static_cast<u128>(next()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<u128>(next()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

std::vector<int> Rng::permutation(std::size_t n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  shuffle(std::span<int>(p));
  return p;
}

AgentOrder random_order(std::size_t n, Rng& rng) { return AgentOrder(rng.permutation(n)); }

ProfileSampler::ProfileSampler(std::size_t n, std::uint64_t seed) : n_(n), rng_(seed) {
  if (n == 0) throw Error(ErrorKind::InvalidInstance, "profile size must be at least 1");
}

Profile ProfileSampler::next() {
  std::vector<PreferenceOrder> prefs;
  prefs.reserve(n_);
  for (std::size_t a = 0; a < n_; ++a) prefs.emplace_back(rng_.permutation(n_));
  return Profile(std::move(prefs));
}

void for_each_permutation(std::size_t n, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    fn(p);
  } while (std::next_permutation(p.begin(), p.end()));
}

void for_each_profile(std::size_t n, const std::function<bool(const Profile&)>& fn) {
  if (n == 0) throw Error(ErrorKind::InvalidInstance, "profile size must be at least 1");
  std::vector<PreferenceOrder> perms;
  for_each_permutation(n, [&](const std::vector<int>& p) { perms.emplace_back(p); });
  std::vector<std::size_t> digit(n, 0);
  while (true) {
    std::vector<PreferenceOrder> prefs;
    prefs.reserve(n);
    for (std::size_t a = 0; a < n; ++a) prefs.push_back(perms[digit[a]]);
    if (!fn(Profile(std::move(prefs)))) return;
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++digit[pos] < perms.size()) break;
      digit[pos] = 0;
      if (pos == 0) return;
    }
  }
}

std::uint64_t factorial(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace propmatch
