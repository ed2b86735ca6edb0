// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include <boost/math/distributions/hypergeometric.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

#include "pandora/hardness.hpp"
#include "pandora/instance.hpp"
#include "pandora/strategies.hpp"

namespace pandora {
namespace {

using Big = boost::multiprecision::cpp_bin_float_50;

int alpha_oracle(long n) {
  const Big x(n);
  return static_cast<int>(ceil(log(x) * sqrt(x) / 5));
}
int beta_oracle(long n) {
  const Big x(n);
  const Big l = log(x);
  return static_cast<int>(ceil(l * l / 5));
}

// E[min(K, cap)] with K the number of boxes opened by a strategy that stops
// at the first success among s boxes: sum_{i < min(s, cap)} q^i = (1 - q^k) / p.
double symmetric_oracle(const HardnessParams& p, long s, long cap) {
  const Big q = 1 - Big(1) / p.alpha;
  const long k = std::min(s, cap);
  const Big u = Big(p.m) * (1 - pow(q, s)) - (1 - pow(q, k)) * p.alpha;
  return static_cast<double>(u);
}

TEST(HardnessParams, MatchHighPrecisionRecomputation) {
  EXPECT_EQ(hardness_params(100000).alpha, 729);
  EXPECT_EQ(hardness_params(100000).beta, 27);
  EXPECT_EQ(hardness_params(4096).alpha, 107);
  EXPECT_EQ(hardness_params(4096).beta, 14);
  for (long n = 3; n < 3000; n += 7) {
    const HardnessParams p = hardness_params(n);
    EXPECT_EQ(p.alpha, alpha_oracle(n)) << n;
    EXPECT_EQ(p.beta, beta_oracle(n)) << n;
    EXPECT_EQ(p.m, 5 * p.beta);
  }
  for (long n : {10000L, 65536L, 99999L, 100000L, 1000000L, 123456789L}) {
    EXPECT_EQ(hardness_params(n).alpha, alpha_oracle(n)) << n;
    EXPECT_EQ(hardness_params(n).beta, beta_oracle(n)) << n;
  }
  const HardnessParams big = hardness_params(100000);
  EXPECT_GT(big.alpha, 20 * big.beta);
}

TEST(SymmetricUtility, PublishedBounds) {
  const HardnessParams p = hardness_params(100000);
  EXPECT_EQ(symmetric_impulsive_utility(p, 0, SymmetricVariant::kBaseline), 0);
  EXPECT_EQ(symmetric_impulsive_utility(p, 0, SymmetricVariant::kPlantedSubset), 0);
  const double planted = symmetric_impulsive_utility(p, p.alpha, SymmetricVariant::kPlantedSubset);
  EXPECT_GE(planted, 5.0 * p.beta * (1 - std::exp(-1.0)) - p.beta);
  EXPECT_GT(planted, 0);
  EXPECT_LE(symmetric_impulsive_utility(p, p.alpha, SymmetricVariant::kBaseline), p.m - p.alpha / 4.0);
}

TEST(SymmetricUtility, MatchesClosedFormOracle) {
  const HardnessParams p = hardness_params(100000);
  for (long s = 0; s <= p.n; s += (s < 2000 ? 1 : 997)) {
    const double base = symmetric_impulsive_utility(p, s, SymmetricVariant::kBaseline);
    const double want = symmetric_oracle(p, s, p.alpha);
    EXPECT_NEAR(base, want, 1e-9 * std::max(1.0, std::abs(want))) << s;
    if (s <= p.alpha) {
      const double planted = symmetric_impulsive_utility(p, s, SymmetricVariant::kPlantedSubset);
      const double want_p = symmetric_oracle(p, s, p.beta);
      EXPECT_NEAR(planted, want_p, 1e-9 * std::max(1.0, std::abs(want_p))) << s;
    }
  }
}

TEST(SymmetricUtility, ExactFormMatchesStrategyEvaluation) {
  const HardnessParams p = hardness_params_override(12, 6, 2);
  const BoxSet r{1, 3, 4, 7, 9, 10};
  const Instance planted = hardness_instance(12, r, {.alpha = 6, .beta = 2});
  const Instance baseline = hardness_instance(12, std::nullopt, {.alpha = 6, .beta = 2});
  const std::vector<int> members = r.elements();
  for (long s = 0; s <= 6; ++s) {
    std::vector<int> inside(members.begin(), members.begin() + s);
    EXPECT_EQ(symmetric_impulsive_utility_exact(p, s, SymmetricVariant::kPlantedSubset),
              eval_impulsive(planted, ImpulsiveStrategy{inside}));
  }
  for (long s = 0; s <= 12; ++s) {
    std::vector<int> first(s);
    for (int i = 0; i < s; ++i) first[i] = i;
    EXPECT_EQ(symmetric_impulsive_utility_exact(p, s, SymmetricVariant::kBaseline),
              eval_impulsive(baseline, ImpulsiveStrategy{first}));
  }
}

TEST(VerifyFamily, OneHundredThousand) {
  const FamilyReport r = verify_family(hardness_params(100000));
  EXPECT_TRUE(r.regime_reached);
  EXPECT_TRUE(r.pass);
  EXPECT_LT(r.baseline_max, 0);
  EXPECT_TRUE(r.positive_baseline_sizes.empty());
  EXPECT_TRUE(r.bound_violations.empty());
  const HardnessParams& p = r.params;
  EXPECT_NEAR(r.planted_utility, symmetric_oracle(p, p.alpha, p.beta), 1e-6);
  EXPECT_GE(r.planted_utility, r.planted_lower_bound);
  EXPECT_NEAR(r.planted_lower_bound, 5.0 * 27 * (1 - std::exp(-1.0)) - 27, 1e-9);
}

TEST(VerifyFamily, SmallNHasNoVerdict) {
  const FamilyReport r = verify_family(hardness_params(100));
  EXPECT_FALSE(r.regime_reached);
  EXPECT_FALSE(r.pass);
}

TEST(Hypergeometric, MatchesIndependentSums) {
  for (auto [n, r, s] : {std::tuple{4096L, 107L, 107L}, {60L, 12L, 20L}, {16L, 6L, 6L}}) {
    boost::math::hypergeometric_distribution<double> h(r, s, n);
    mpz_class total;
    mpz_bin_uiui(total.get_mpz_t(), n, r);
    for (long k = 0; k <= std::min(r, s); ++k) {
      mpz_class a, b;
      mpz_bin_uiui(a.get_mpz_t(), s, k);
      mpz_bin_uiui(b.get_mpz_t(), n - s, r - k);
      Rational pmf(mpz_class(a * b), total);
      pmf.canonicalize();
      EXPECT_EQ(hypergeometric_pmf(n, r, s, k), pmf);
      EXPECT_NEAR(to_double(hypergeometric_pmf(n, r, s, k)), boost::math::pdf(h, k), 1e-12);
    }
    for (long t = 0; t < std::min(r, s); ++t) {
      const double want = boost::math::cdf(boost::math::complement(h, t));
      EXPECT_NEAR(to_double(hypergeometric_tail(n, r, s, t)), want, 1e-12 + 1e-9 * want);
    }
  }
}

TEST(SampleSubset, SizeAndDeterminism) {
  const BoxSet a = sample_subset(4096, 107, 5);
  EXPECT_EQ(a.size(), 107);
  EXPECT_EQ(a, sample_subset(4096, 107, 5));
  EXPECT_LT(a.bound(), 4097);
}

TEST(Distinguish, PlantedSetItselfDistinguishes) {
  const BoxSet r = sample_subset(200, 20, 1);
  HardnessCost planted(200, 20, 4, r), baseline(200, 20, 4);
  EXPECT_EQ(planted.eval(r), 4);
  EXPECT_EQ(baseline.eval(r), 20);
}

TEST(Distinguish, SmallQueriesNeverDistinguish) {
  DistinguishConfig c;
  c.n = 512;
  c.alpha = 40;
  c.beta = 5;
  c.query_list = {BoxSet{0, 1, 2, 3, 4}, BoxSet{10, 20, 30}};
  c.budget = 2;
  c.trials = 500;
  const DistinguishReport r = distinguish_experiment(c);
  EXPECT_EQ(r.distinguishing_trials, 0);
  EXPECT_TRUE(r.counts_exact);
  EXPECT_EQ(r.total_queries, 1000u);
}

TEST(Distinguish, TailMatchesHypergeometric) {
  DistinguishConfig c;
  c.n = 4096;
  c.beta = 4;
  c.trials = 4000;
  c.seed = 3;
  const DistinguishReport r = distinguish_experiment(c);
  EXPECT_EQ(r.params.alpha, 107);
  EXPECT_NEAR(r.exact_tail, to_double(hypergeometric_tail(4096, 107, 107, 4)), 1e-15);
  EXPECT_TRUE(r.tail_within_3se);
  EXPECT_GT(r.tail_hits, 0);
  EXPECT_TRUE(r.counts_exact);
  EXPECT_EQ(r.total_queries, 4000u);
  // Every first query that meets R in more than beta boxes tells the costs apart.
  EXPECT_EQ(r.distinguishing_trials, r.tail_hits);
}

TEST(Distinguish, DefaultConfigurationCarriesTheBanner) {
  DistinguishConfig c;
  c.trials = 200;
  const DistinguishReport r = distinguish_experiment(c);
  EXPECT_EQ(r.params.beta, 14);
  EXPECT_FALSE(r.banner.empty());
  EXPECT_LT(r.exact_tail, 1e-6);
}

TEST(Agreement, ExhaustiveSmallN) {
  const AgreementReport r = exhaustive_agreement(16, 6, 2, BoxSet{0, 2, 5, 7, 11, 13});
  EXPECT_EQ(r.sets, 65536);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.agree_violations, 0);
  EXPECT_EQ(r.iff_violations, 0);
  const AgreementReport tiny = exhaustive_agreement(8, 3, 1, BoxSet{0, 1, 2});
  EXPECT_TRUE(tiny.pass());
  EXPECT_GT(tiny.disagreements, 0);
}

}  // namespace
}  // namespace pandora
