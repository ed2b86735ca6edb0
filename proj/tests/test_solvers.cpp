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

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pandora/random.hpp"
#include "pandora/solvers.hpp"

namespace pandora {
namespace {

Instance with_cost(std::vector<FiniteDistribution> boxes, CostPtr cost) {
  return Instance(std::move(boxes), std::move(cost));
}

CostPtr additive(std::vector<Rational> c) { return std::make_shared<AdditiveCost>(std::move(c)); }

TEST(OptimalAdaptive, ExampleOneHasTheUniquePublishedTree) {
  const AdaptiveResult r = optimal_adaptive(example1());
  EXPECT_EQ(r.utility, ratio(21, 2));
  EXPECT_TRUE(r.unique);
  PolicyNode on10{1, {{0, PolicyNode::halt()}, {12, PolicyNode::halt()}}};
  PolicyNode on0{2, {{10, PolicyNode::halt()}}};
  EXPECT_EQ(r.tree, (PolicyNode{0, {{0, on0}, {10, on10}}}));
  EXPECT_EQ(oracle::simulate_policy(example1(), r.tree), ratio(21, 2));
}

TEST(OptimalAdaptive, SmallCases) {
  EXPECT_EQ(optimal_adaptive(with_cost({FiniteDistribution::point(5)}, additive({3}))).utility, 2);
  const Instance free = random_instance("general_coverage", 4, 8);
  const Instance zero(free.boxes(), additive({0, 0, 0, 0}));
  FiniteDistribution mx = zero.box(0);
  for (int i = 1; i < 4; ++i) mx = max_of(mx, zero.box(i));
  EXPECT_EQ(optimal_adaptive(zero).utility, mx.mean());
}

TEST(OptimalAdaptive, MatchesHistoryRecursion) {
  int positive = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const auto& families = random_families();
    const std::string family = families[trial % families.size()];
    if (family == "bernoulli_hardness") continue;
    const int n = 2 + trial % 3;
    const Instance inst = random_instance(family, n, 100 + trial);
    const AdaptiveResult r = optimal_adaptive(inst);
    EXPECT_EQ(r.utility, oracle::adaptive_by_histories(inst)) << family << " n=" << n;
    EXPECT_EQ(oracle::simulate_policy(inst, r.tree), r.utility);
    positive += r.utility > 0;
  }
  EXPECT_GT(positive, 20);
}

TEST(OptimalAdaptive, CapabilityBound) {
  std::vector<FiniteDistribution> boxes(kAdaptiveBound + 1, FiniteDistribution::bernoulli(1, ratio(1, 2)));
  EXPECT_THROW(optimal_adaptive(with_cost(boxes, additive(std::vector<Rational>(boxes.size(), 0)))),
               CapabilityError);
}

TEST(OptimalThresholds, ExampleOneIdentityOrder) {
  const ThresholdResult r = optimal_thresholds(example1(), {0, 1, 2});
  EXPECT_EQ(r.utility, ratio(17, 2));
  EXPECT_EQ(oracle::simulate_fixed(example1(), r.strategy), ratio(17, 2));
}

// Off-grid thresholds never beat the on-grid optimum for the same order.
TEST(OptimalThresholds, PerturbationDoesNotHelp) {
  auto rng = make_rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    const Instance inst = random_instance(trial % 2 ? "general_tree" : "explicit_subadditive", 3, trial);
    std::vector<int> sigma{0, 1, 2};
    for (int i = 2; i > 0; --i) std::swap(sigma[i], sigma[uniform_below(rng, i + 1)]);
    const ThresholdResult best = optimal_thresholds(inst, sigma);
    EXPECT_EQ(oracle::simulate_fixed(inst, best.strategy), best.utility);
    const auto grid = support_union(inst);
    for (int k = 0; k < 20; ++k) {
      FixedOrderThresholds s{sigma, {}};
      for (int j = 0; j < 3; ++j) {
        const auto g = grid[uniform_below(rng, grid.size())];
        const Rational shift = ratio(static_cast<long>(uniform_below(rng, 7)) - 3, 1000);
        s.thresholds.push_back(Threshold(g + shift));
      }
      EXPECT_LE(oracle::simulate_fixed(inst, s), best.utility);
    }
  }
}

TEST(OptimalFixedOrder, Examples) {
  EXPECT_EQ(optimal_fixed_order(example1()).utility, 10);
  const FixedOrderResult u = optimal_fixed_order(unit_demand_pair());
  EXPECT_EQ(u.utility, ratio(1, 9));
  EXPECT_EQ(u.strategy.sigma, (std::vector<int>{0, 1}));
  const Instance s = subadditive4();
  const Rational fixed = optimal_fixed_order(s).utility;
  const Rational adaptive = optimal_adaptive(s).utility;
  EXPECT_EQ(fixed, ratio(1417, 40));
  EXPECT_EQ(adaptive, ratio(4253, 120));
  EXPECT_LT(fixed, adaptive);
}

TEST(OptimalFixedOrder, MatchesEnumeration) {
  for (int trial = 0; trial < 25; ++trial) {
    const std::string family = trial % 2 ? "general_xos" : "general_coverage";
    const Instance inst = random_instance(family, 2 + trial % 2, 300 + trial, {.max_atoms = 3, .max_value = 8});
    const FixedOrderResult r = optimal_fixed_order(inst);
    EXPECT_EQ(r.utility, oracle::fixed_by_enumeration(inst)) << family;
    EXPECT_EQ(oracle::simulate_fixed(inst, r.strategy), r.utility);
  }
}

TEST(OptimalFixedOrder, ParallelMatchesSerial) {
  for (int trial = 0; trial < 5; ++trial) {
    const Instance inst = random_instance("explicit_subadditive", 5, 50 + trial);
    const FixedOrderResult a = optimal_fixed_order(inst, 1);
    const FixedOrderResult b = optimal_fixed_order(inst, 3);
    EXPECT_EQ(a.utility, b.utility);
    EXPECT_EQ(a.strategy, b.strategy);
  }
}

TEST(OptimalFixedOrder, CapabilityBound) {
  std::vector<FiniteDistribution> boxes(kPermutationBound + 1, FiniteDistribution::point(1));
  EXPECT_THROW(optimal_fixed_order(with_cost(boxes, additive(std::vector<Rational>(boxes.size(), 1)))),
               CapabilityError);
}

TEST(OptimalImpulsive, Examples) {
  const ImpulsiveResult u = optimal_impulsive(unit_demand_pair());
  EXPECT_EQ(u.utility, ratio(1, 9));
  EXPECT_EQ(u.strategy.order, (std::vector<int>{0, 1}));
  auto flat = std::make_shared<ExplicitCost>(2, std::vector<Rational>{0, 1, 1, 1});
  const Instance hopeless = with_cost({FiniteDistribution::bernoulli(2, ratio(1, 5)),
                                       FiniteDistribution::bernoulli(2, ratio(1, 5))}, flat);
  const ImpulsiveResult h = optimal_impulsive(hopeless);
  EXPECT_EQ(h.utility, 0);
  EXPECT_TRUE(h.strategy.order.empty());
  EXPECT_THROW(optimal_impulsive(subadditive4()), DomainError);
}

TEST(OptimalImpulsive, MatchesEnumerationAndAdaptiveOnSubmodular) {
  for (int trial = 0; trial < 30; ++trial) {
    const std::string family = trial % 2 ? "bernoulli_tree" : "bernoulli_coverage";
    const Instance inst = random_instance(family, 2 + trial % 3, 500 + trial);
    const ImpulsiveResult r = optimal_impulsive(inst);
    EXPECT_EQ(r.utility, oracle::impulsive_by_enumeration(inst));
    EXPECT_EQ(r.utility, oracle::adaptive_by_histories(inst));
  }
}

TEST(ReservationValue, Examples) {
  const ReservationValue neg = reservation_value(FiniteDistribution::bernoulli(2, ratio(1, 3)), 1);
  EXPECT_EQ(neg.z, ratio(-1, 3));
  EXPECT_TRUE(neg.never_open);
  EXPECT_EQ(reservation_value(FiniteDistribution::point(7), 0).z, 7);
  EXPECT_EQ(reservation_value(FiniteDistribution::bernoulli(10, ratio(1, 2)), 1).z, 8);
}

TEST(ReservationValue, SolvesItsEquation) {
  for (int trial = 0; trial < 50; ++trial) {
    const Instance inst = random_instance("additive", 3, 900 + trial);
    for (int i = 0; i < 3; ++i) {
      const Rational c = inst.cost().eval(BoxSet{i});
      if (c == 0) continue;
      const ReservationValue z = reservation_value(inst.box(i), c);
      Rational excess = 0;
      for (const auto& a : inst.box(i).atoms()) excess += a.prob * positive_part(a.value - z.z);
      EXPECT_EQ(excess, c);
      EXPECT_EQ(z.never_open, z.z < 0);
    }
  }
}

TEST(Weitzman, Examples) {
  const Instance pair = with_cost(unit_demand_pair().boxes(), additive({1, 1}));
  const WeitzmanResult w = weitzman(pair);
  EXPECT_EQ(w.utility, 0);
  EXPECT_EQ(eval_fixed_order(pair, w.strategy), 0);
  EXPECT_THROW(weitzman(unit_demand_pair()), DomainError);
  const Instance single = with_cost({FiniteDistribution::bernoulli(10, ratio(1, 2))}, additive({1}));
  EXPECT_EQ(weitzman(single).utility, 4);
}

TEST(Weitzman, MatchesAdaptiveOnAdditive) {
  for (int trial = 0; trial < 40; ++trial) {
    const Instance inst = random_instance(trial % 2 ? "additive" : "bernoulli_additive",
                                          2 + trial % 5, 700 + trial);
    const WeitzmanResult w = weitzman(inst);
    EXPECT_EQ(w.utility, optimal_adaptive(inst).utility);
    EXPECT_EQ(oracle::simulate_fixed(inst, w.strategy), w.utility);
  }
}

TEST(AdaptivityGap, Examples) {
  const GapReport e = adaptivity_gap(example1());
  EXPECT_TRUE(e.strict_adaptive_vs_fixed);
  EXPECT_EQ(e.opt_adaptive, ratio(21, 2));
  EXPECT_EQ(e.opt_fixed_order, 10);
  const GapReport x = adaptivity_gap(xos_lift_of(example1()));
  EXPECT_TRUE(x.strict_adaptive_vs_fixed);
  EXPECT_EQ(x.opt_adaptive, ratio(69, 4));
  EXPECT_EQ(x.opt_fixed_order, 17);
  EXPECT_FALSE(x.opt_impulsive.has_value());
  for (int trial = 0; trial < 10; ++trial) {
    const GapReport g = adaptivity_gap(random_instance("bernoulli_coverage", 4, 40 + trial));
    EXPECT_FALSE(g.strict_adaptive_vs_fixed);
    EXPECT_FALSE(g.strict_fixed_vs_impulsive);
    EXPECT_FALSE(g.strict_adaptive_vs_impulsive);
  }
}

}  // namespace
}  // namespace pandora
