#include <doctest.h>

#include "propmatch/axioms.hpp"
#include "propmatch/classic.hpp"
#include "propmatch/random.hpp"
#include "support.hpp"

using namespace propmatch;

namespace {

std::vector<Rational> rat(std::initializer_list<const char*> xs) {
  std::vector<Rational> out;
  for (const char* x : xs) out.emplace_back(x);
  for (auto& q : out) q.canonicalize();
  return out;
}

// Random row with denominator 12 summing to 1.
std::vector<Rational> random_row(std::size_t n, Rng& rng) {
  std::vector<int> parts(n, 0);
  for (int k = 0; k < 12; ++k) ++parts[rng.below(n)];
  std::vector<Rational> row;
  for (int x : parts) {
    Rational q(x, 12);
    q.canonicalize();
    row.push_back(q);
  }
  return row;
}

}  // namespace

TEST_CASE("sd_dominates examples") {
  const PreferenceOrder abc({0, 1, 2});
  const auto p = rat({"1", "0", "0"});
  const auto q = rat({"0", "1", "0"});
  CHECK(sd_dominates(p, p, abc) == Dominance::Equal);
  CHECK(sd_dominates(p, q, abc) == Dominance::StrictlyDominates);
  CHECK(sd_dominates(q, p, abc) == Dominance::DominatedBy);
  const PreferenceOrder abcd({0, 1, 2, 3});
  CHECK(sd_dominates(rat({"1/4", "1/2", "1/4", "0"}), rat({"1/4", "0", "1/2", "1/4"}), abcd) ==
        Dominance::StrictlyDominates);
  CHECK(sd_dominates(rat({"1/2", "0", "1/2"}), rat({"0", "1", "0"}), abc) == Dominance::Incomparable);
  CHECK_THROWS_AS(sd_dominates(p, rat({"1", "0"}), abc), std::invalid_argument);
}

TEST_CASE("sd_dominates is a partial order") {
  Rng rng(13);
  for (int rep = 0; rep < 400; ++rep) {
    const std::size_t n = 2 + rng.below(4);
    const PreferenceOrder pref(rng.permutation(n));
    const auto x = random_row(n, rng);
    const auto y = random_row(n, rng);
    const auto z = random_row(n, rng);
    auto weakly = [&](const auto& a, const auto& b) {
      const auto d = sd_dominates(a, b, pref);
      return d == Dominance::StrictlyDominates || d == Dominance::Equal;
    };
    CHECK(sd_dominates(x, x, pref) == Dominance::Equal);
    if (weakly(x, y) && weakly(y, x)) CHECK(x == y);
    if (weakly(x, y) && weakly(y, z)) CHECK(weakly(x, z));
    const auto d = sd_dominates(x, y, pref);
    const auto e = sd_dominates(y, x, pref);
    if (d == Dominance::StrictlyDominates) CHECK(e == Dominance::DominatedBy);
    if (d == Dominance::Incomparable) CHECK(e == Dominance::Incomparable);
  }
}

TEST_CASE("Pareto efficiency examples") {
  const auto p = testing::ttc_profile();
  CHECK_FALSE(is_pareto_efficient(testing::parse_m("1:c 2:b 3:a", 3), p));
  CHECK(is_pareto_efficient(testing::parse_m("1:c 2:a 3:b", 3), p));
  const auto tops = Profile::from_rankings({{1, 0}, {0, 1}});
  CHECK(is_pareto_efficient(Matching({1, 0}), tops));
}

TEST_CASE("Pareto efficiency agrees with brute force") {
  const auto all3 = testing::all_matchings(3);
  std::size_t cases = 0;
  for_each_profile(3, [&](const Profile& p) {
    for (const auto& m : all3) {
      REQUIRE(is_pareto_efficient(m, p) == testing::brute_pareto(m, p));
      ++cases;
    }
    return true;
  });
  CHECK(cases == 1296);  // 216 profiles x 6 matchings
  Rng rng(3);
  for (std::size_t n : {4u, 5u}) {
    ProfileSampler sampler(n, n);
    for (int rep = 0; rep < 300; ++rep) {
      const auto p = sampler.next();
      const Matching m(rng.permutation(n));
      CHECK(is_pareto_efficient(m, p) == testing::brute_pareto(m, p));
    }
  }
}

TEST_CASE("ordinal efficiency: tau cycle on the four-agent counterexample") {
  const auto p = Profile::from_rankings({{0, 1, 2, 3}, {0, 1, 2, 3}, {0, 1, 3, 2}, {0, 1, 3, 2}});
  const auto rsd = random_assignment(Mechanism::parse("RSD"), p);
  const auto cycle = find_tau_cycle(rsd, p);
  REQUIRE(cycle.has_value());
  std::vector<ItemId> sorted = *cycle;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<ItemId>{2, 3});
  CHECK_FALSE(testing::lp_ordinally_efficient(rsd, p));
  CHECK(is_ordinally_efficient(probabilistic_serial(p), p));
  CHECK(is_ordinally_efficient(matching_to_assignment(testing::parse_m("1:a 2:b 3:c 4:d", 4)), p));
}

TEST_CASE("tau acyclicity agrees with the LP oracle (n <= 3 exhaustive)") {
  std::vector<Mechanism> mechs{Mechanism::parse("RSD"), Mechanism::parse("R-PLS"), Mechanism::parse("R-TLQ"),
                               Mechanism::parse("R-PFQ"), Mechanism::parse("PS")};
  for (std::size_t n : {2u, 3u}) {
    for_each_profile(n, [&](const Profile& p) {
      for (const auto& m : mechs) {
        const auto P = random_assignment(m, p);
        REQUIRE(is_ordinally_efficient(P, p) == testing::lp_ordinally_efficient(P, p));
      }
      return true;
    });
  }
  // A few n = 4 lotteries, where RSD can be inefficient.
  ProfileSampler sampler(4, 12);
  for (int rep = 0; rep < 30; ++rep) {
    const auto p = sampler.next();
    for (const auto& m : mechs) {
      const auto P = random_assignment(m, p);
      CHECK(is_ordinally_efficient(P, p) == testing::lp_ordinally_efficient(P, p));
    }
  }
}

TEST_CASE("PS is ordinally efficient (n <= 5)") {
  for (std::size_t n = 1; n <= 5; ++n) {
    ProfileSampler sampler(n, 500 + n);
    for (int rep = 0; rep < 200; ++rep) {
      const auto p = sampler.next();
      CHECK(is_ordinally_efficient(probabilistic_serial(p), p));
    }
  }
}

TEST_CASE("strategyproofness") {
  const auto rsd = Mechanism::parse("RSD");
  for_each_profile(3, [&](const Profile& p) {
    for (AgentId a = 0; a < 3; ++a) REQUIRE(check_strategyproofness(rsd, p, a).overall == SPVerdict::Strategyproof);
    return true;
  });
  const auto same = Profile::from_rankings({{0, 1, 2, 3}, {0, 1, 2, 3}, {0, 1, 2, 3}, {0, 1, 2, 3}});
  const auto rep = check_strategyproofness(Mechanism::parse("R-TLS"), same, 3);
  CHECK(rep.overall == SPVerdict::NotWeaklySP);
  CHECK(rep.truthful_row == std::vector<Rational>(4, Rational(1, 4)));
  CHECK(rep.misreports.size() == 23);
  bool found = false;
  for (const auto& m : rep.misreports) {
    if (m.report == PreferenceOrder({0, 2, 1, 3})) {
      found = true;
      CHECK(m.truthful_vs_report == Dominance::DominatedBy);
    }
  }
  CHECK(found);
}

TEST_CASE("feasible_top_k agrees with brute force") {
  CHECK(feasible_top_k(Profile::from_rankings({{1, 0, 2}, {2, 1, 0}, {0, 2, 1}}), 1));
  CHECK_FALSE(feasible_top_k(Profile::from_rankings({{0, 1}, {0, 1}}), 1));
  CHECK(feasible_top_k(Profile::from_rankings({{0, 1, 2}, {0, 1, 2}, {0, 2, 1}}), 2));
  CHECK_THROWS_AS(feasible_top_k(testing::ttc_profile(), 0), Error);
  for_each_profile(3, [&](const Profile& p) {
    for (std::size_t k = 1; k <= 3; ++k) REQUIRE(feasible_top_k(p, k) == testing::brute_top_k(p, k));
    return true;
  });
  ProfileSampler sampler(6, 4);
  for (int rep = 0; rep < 200; ++rep) {
    const auto p = sampler.next();
    for (std::size_t k = 1; k <= 3; ++k) CHECK(feasible_top_k(p, k) == testing::brute_top_k(p, k));
  }
}

TEST_CASE("conditional bound: k = 1 always holds") {
  std::vector<Mechanism> mechs{Mechanism::parse("SD"), Mechanism::parse("NB"), Mechanism::parse("PS")};
  for (auto config : EngineConfig::all()) mechs.push_back(Mechanism::engine(config));
  for_each_profile(3, [&](const Profile& p) {
    for (const auto& m : mechs) REQUIRE(satisfies_conditional_bound(m, p, 1));
    return true;
  });
}
