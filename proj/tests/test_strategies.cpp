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
#include "pandora/cost_classes.hpp"
#include "pandora/hardness.hpp"
#include "pandora/io.hpp"
#include "pandora/random.hpp"

namespace pandora {
namespace {

// ---- instances ------------------------------------------------------------

TEST(SupportUnion, Examples) {
  EXPECT_EQ(support_union(example1()), (std::vector<Rational>{0, 10, 12}));
  Instance one({FiniteDistribution::point(5)}, std::make_shared<AdditiveCost>(std::vector<Rational>{0}));
  EXPECT_EQ(support_union(one), (std::vector<Rational>{0, 5}));
  Instance two({FiniteDistribution::bernoulli(3, ratio(1, 2)), FiniteDistribution::bernoulli(3, ratio(1, 4))},
               std::make_shared<AdditiveCost>(std::vector<Rational>{0, 0}));
  EXPECT_EQ(support_union(two), (std::vector<Rational>{0, 3}));
}

TEST(Canonical, Instances) {
  const Instance e = canonical("example1");
  EXPECT_EQ(e.size(), 3);
  EXPECT_EQ(e.cost().eval(BoxSet{0, 1, 2}), 20);
  const Instance u = canonical("unit_demand_pair");
  for (int i = 0; i < 2; ++i) {
    EXPECT_EQ(u.bernoulli(i).value, 2);
    EXPECT_EQ(u.bernoulli(i).prob, ratio(1, 3));
  }
  EXPECT_EQ(u.cost().eval(BoxSet{0}), 1);
  EXPECT_EQ(u.cost().eval(BoxSet{0, 1}), 1);
  EXPECT_THROW(canonical("nonsense"), DomainError);
  EXPECT_THROW(canonical("hardness_baseline_12"), DomainError);  // beta >= alpha there
}

TEST(Canonical, HardnessAtOneHundredThousand) {
  const HardnessParams p = hardness_params(100000);
  EXPECT_EQ(p.alpha, 729);
  EXPECT_EQ(p.beta, 27);
  EXPECT_EQ(p.m, 135);
  const Instance h = hardness_instance(20, std::nullopt, {.alpha = 6, .beta = 2});
  EXPECT_EQ(h.bernoulli(0).value, 10);
  EXPECT_EQ(h.bernoulli(0).prob, ratio(1, 6));
  EXPECT_THROW(hardness_instance(20, std::nullopt, {.alpha = 3, .beta = 3}), DomainError);
}

TEST(XosLiftInstance, FirstBoxDominates) {
  const Instance x = xos_lift_of(example1());
  EXPECT_EQ(x.size(), 4);
  EXPECT_EQ(x.box(0).mean(), 72);
  EXPECT_GT(x.box(0).mean(), x.cost().eval(BoxSet{0}));
}

TEST(RandomInstance, DeterministicAndValid) {
  for (const auto& family : random_families()) {
    const Instance a = random_instance(family, 4, 17);
    const Instance b = random_instance(family, 4, 17);
    EXPECT_EQ(instance_to_json(a).dump(), instance_to_json(b).dump()) << family;
    for (const auto& box : a.boxes()) {
      Rational total = 0;
      for (const auto& atom : box.atoms()) {
        EXPECT_GE(atom.value, 0);
        EXPECT_GT(atom.prob, 0);
        total += atom.prob;
      }
      EXPECT_EQ(total, 1) << family;
    }
    EXPECT_TRUE(validate_class(a.cost(), CostClass::kMonotoneNormalized).pass) << family;
  }
  EXPECT_THROW(random_instance("nope", 3, 1), DomainError);
}

TEST(Distribution, Operations) {
  const auto x = FiniteDistribution::bernoulli(4, ratio(1, 2));
  const auto y = FiniteDistribution::bernoulli(2, ratio(1, 2));
  const auto m = max_of(x, y);
  EXPECT_EQ(m.mean(), ratio(5, 2));  // 4/2 + 2/4
  EXPECT_EQ(m.tail(2), 1);  // E[(V - 2)^+]
  EXPECT_EQ(m.cdf(2), ratio(1, 2));
  EXPECT_EQ(thin(x, ratio(1, 2)).as_bernoulli()->prob, ratio(1, 4));
  EXPECT_THROW(FiniteDistribution({{1, ratio(1, 2)}}), DomainError);
  EXPECT_THROW(FiniteDistribution({{-1, 1}}), DomainError);
}

TEST(Normalize, DropsDegenerateBoxes) {
  Instance inst({FiniteDistribution::point(0), FiniteDistribution::point(4)},
                std::make_shared<AdditiveCost>(std::vector<Rational>{1, 1}));
  const Normalized n = drop_degenerate(inst);
  EXPECT_EQ(n.kept, (std::vector<int>{1}));
  EXPECT_EQ(n.dropped, (std::vector<int>{0}));
  EXPECT_EQ(n.instance.size(), 1);
}

// ---- strategies -----------------------------------------------------------

Instance bernoulli_additive(std::vector<std::pair<Rational, Rational>> boxes,
                            std::vector<Rational> costs) {
  std::vector<FiniteDistribution> ds;
  for (auto& [v, p] : boxes) ds.push_back(FiniteDistribution::bernoulli(v, p));
  return Instance(std::move(ds), std::make_shared<AdditiveCost>(std::move(costs)));
}

TEST(PQ, Examples) {
  const Instance inst = bernoulli_additive({{1, ratio(1, 2)}, {1, ratio(1, 3)}}, {0, 0});
  const PQ empty = pq_of(ImpulsiveStrategy{}, inst);
  EXPECT_EQ(empty.p, 0);
  EXPECT_EQ(empty.q, 1);
  const PQ both = pq_of(ImpulsiveStrategy{{0, 1}}, inst);
  EXPECT_EQ(both.p, ratio(2, 3));
  EXPECT_EQ(both.q, ratio(1, 3));
  EXPECT_THROW(pq_of(ImpulsiveStrategy{}, subadditive4()), DomainError);
}

// Full-realization value of an impulsive strategy with dummies, measured
// against a root r and a conditioning set T.
Rational marginal_by_realizations(MarginalKind kind, const ImpulsiveWithDummies& s,
                                  const MarginalUtilityContext& ctx, const Instance& inst) {
  const Rational vr = inst.bernoulli(ctx.root).value;
  BoxSet base = ctx.conditioning;
  base.insert(ctx.root);
  Rational total = 0;
  for (const auto& r : oracle::realizations(inst)) {
    BoxSet opened;
    Rational gain = 0;
    for (int b : s.order) {
      const bool real = s.opened.contains(b);
      if (real) opened.insert(b);
      if (r.values[b] != 0) {
        if (real) {
          gain = r.values[b];
          if (kind == MarginalKind::kY) gain = positive_part(gain - vr);
          if (kind == MarginalKind::kM) gain = gain - vr;
        }
        break;
      }
    }
    total += r.prob * (gain - (inst.cost().eval(base | opened) - inst.cost().eval(base)));
  }
  return total;
}

TEST(MarginalUtility, HandExample) {
  const Instance inst = bernoulli_additive({{2, ratio(1, 2)}, {1, ratio(1, 2)}}, {0, 0});
  const auto s = ImpulsiveWithDummies::all_opened(ImpulsiveStrategy{{0}});
  const MarginalUtilityContext ctx{1, {}};
  EXPECT_EQ(marginal_utility(MarginalKind::kN, s, ctx, inst), 1);
  EXPECT_EQ(marginal_utility(MarginalKind::kY, s, ctx, inst), ratio(1, 2));
  EXPECT_EQ(marginal_utility(MarginalKind::kM, s, ctx, inst), ratio(1, 2));
  for (auto kind : {MarginalKind::kN, MarginalKind::kY, MarginalKind::kM})
    EXPECT_EQ(marginal_utility(kind, ImpulsiveWithDummies{}, ctx, inst), 0);
}

TEST(MarginalUtility, MatchesRealizationsAndIdentities) {
  auto rng = make_rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const Instance inst = random_instance(trial % 2 ? "bernoulli_coverage" : "bernoulli_tree", 6,
                                          static_cast<std::uint64_t>(trial));
    std::vector<int> boxes{0, 1, 2, 3, 4, 5};
    for (int i = 5; i > 0; --i) std::swap(boxes[i], boxes[uniform_below(rng, i + 1)]);
    const int root = boxes[0];
    MarginalUtilityContext ctx{root, {}};
    if (uniform_below(rng, 2)) ctx.conditioning.insert(boxes[1]);
    ImpulsiveWithDummies s;
    for (int k = 2; k < 6; ++k) {
      if (uniform_below(rng, 4) == 0) continue;
      s.order.push_back(boxes[k]);
      if (uniform_below(rng, 3)) s.opened.insert(boxes[k]);
    }
    for (auto kind : {MarginalKind::kN, MarginalKind::kY, MarginalKind::kM})
      EXPECT_EQ(marginal_utility(kind, s, ctx, inst), marginal_by_realizations(kind, s, ctx, inst));
    const Rational un = marginal_utility(MarginalKind::kN, s, ctx, inst);
    const Rational uy = marginal_utility(MarginalKind::kY, s, ctx, inst);
    const Rational um = marginal_utility(MarginalKind::kM, s, ctx, inst);
    EXPECT_EQ(um, un - pq_of(s, inst).p_opened * inst.bernoulli(root).value);
    EXPECT_LE(um, uy);
    EXPECT_LE(uy, un);

    // The dummy mixture reproduces the direct evaluation.
    Rational mixed = 0, mass = 0;
    for (const auto& [d, prob] : dummy_mixture(s, inst)) {
      mixed += prob * marginal_utility(MarginalKind::kN, ImpulsiveWithDummies::all_opened(d), ctx, inst);
      mass += prob;
    }
    EXPECT_EQ(mass, 1);
    EXPECT_EQ(mixed, un);
  }
}

TEST(MarginalUtility, RejectsOverlaps) {
  const Instance inst = bernoulli_additive({{2, ratio(1, 2)}, {1, ratio(1, 2)}}, {0, 0});
  const auto s = ImpulsiveWithDummies::all_opened(ImpulsiveStrategy{{0}});
  EXPECT_THROW(marginal_utility(MarginalKind::kN, s, {0, {}}, inst), DomainError);
  EXPECT_THROW(marginal_utility(MarginalKind::kN, s, {1, BoxSet{0}}, inst), DomainError);
}

TEST(DummyMixture, PublishedExample) {
  std::vector<std::pair<Rational, Rational>> boxes;
  for (int i = 0; i < 7; ++i) boxes.push_back({i + 1, ratio(1, i + 2)});
  const Instance inst = bernoulli_additive(boxes, std::vector<Rational>(7, 0));
  const ImpulsiveWithDummies s{{1, 0, 3, 6}, BoxSet{0, 6}};
  const auto mix = dummy_mixture(s, inst);
  const Rational p1 = ratio(1, 3), p3 = ratio(1, 5);
  ASSERT_EQ(mix.size(), 3u);
  EXPECT_EQ(mix[0].first.order, std::vector<int>{});
  EXPECT_EQ(mix[0].second, p1);
  EXPECT_EQ(mix[1].first.order, std::vector<int>{0});
  EXPECT_EQ(mix[1].second, (1 - p1) * p3);
  EXPECT_EQ(mix[2].first.order, (std::vector<int>{0, 6}));
  EXPECT_EQ(mix[2].second, (1 - p1) * (1 - p3));

  const auto plain = dummy_mixture(ImpulsiveWithDummies{{0, 6}, BoxSet{0, 6}}, inst);
  ASSERT_EQ(plain.size(), 1u);
  EXPECT_EQ(plain[0].second, 1);
  const auto none = dummy_mixture(ImpulsiveWithDummies{}, inst);
  ASSERT_EQ(none.size(), 1u);
  EXPECT_TRUE(none[0].first.order.empty());
}

TEST(EvalImpulsive, UnitDemandPair) {
  const Instance u = unit_demand_pair();
  EXPECT_EQ(eval_impulsive(u, ImpulsiveStrategy{{0, 1}}), ratio(1, 9));
  EXPECT_EQ(eval_impulsive(u, ImpulsiveStrategy{}), 0);
  EXPECT_THROW(eval_impulsive(subadditive4(), ImpulsiveStrategy{{0}}), DomainError);
}

TEST(EvalImpulsive, PlantedOrderDoesNotMatter) {
  const BoxSet r = sample_subset(12, 6, 3);
  const Instance h = hardness_instance(12, r, {.alpha = 6, .beta = 2});
  std::vector<int> order = r.elements();
  const Rational first = eval_impulsive(h, ImpulsiveStrategy{order});
  auto rng = make_rng(9);
  for (int k = 0; k < 20; ++k) {
    for (int i = static_cast<int>(order.size()) - 1; i > 0; --i)
      std::swap(order[i], order[uniform_below(rng, i + 1)]);
    EXPECT_EQ(eval_impulsive(h, ImpulsiveStrategy{order}), first);
  }
}

TEST(EvalFixedOrder, Examples) {
  Instance single({FiniteDistribution::point(5)}, std::make_shared<AdditiveCost>(std::vector<Rational>{1}));
  EXPECT_EQ(eval_fixed_order(single, {{0}, {Threshold(Rational(0))}}), 0);
  const Instance e = example1();
  FixedOrderThresholds box3{{2, 0, 1}, {Threshold::infinity(), Threshold(Rational(0)), Threshold(Rational(0))}};
  EXPECT_EQ(eval_fixed_order(e, box3), 10);
  // Opening everything under additive costs: E[max] minus the total cost.
  const Instance a = random_instance("additive", 4, 2);
  FixedOrderThresholds all{{0, 1, 2, 3}, std::vector<Threshold>(4)};
  FiniteDistribution mx = a.box(0);
  for (int i = 1; i < 4; ++i) mx = max_of(mx, a.box(i));
  EXPECT_EQ(eval_fixed_order(a, all), mx.mean() - a.cost().eval(BoxSet{0, 1, 2, 3}));
}

TEST(EvalPolicy, Examples) {
  const Instance e = example1();
  EXPECT_EQ(eval_policy(e, PolicyNode::halt()), 0);
  PolicyNode on10{1, {{0, PolicyNode::halt()}, {12, PolicyNode::halt()}}};
  PolicyNode on0{2, {{10, PolicyNode::halt()}}};
  PolicyNode root{0, {{0, on0}, {10, on10}}};
  EXPECT_EQ(eval_policy(e, root), ratio(21, 2));
  PolicyNode broken{0, {{0, PolicyNode::halt()}}};
  EXPECT_THROW(eval_policy(e, broken), DomainError);
}

TEST(Evaluators, AgreeWithRealizationSimulation) {
  auto rng = make_rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const std::string family = trial % 2 ? "general_coverage" : "explicit_subadditive";
    const Instance inst = random_instance(family, 4, static_cast<std::uint64_t>(trial));
    const auto grid = support_union(inst);
    FixedOrderThresholds s;
    s.sigma = {0, 1, 2, 3};
    for (int i = 3; i > 0; --i) std::swap(s.sigma[i], s.sigma[uniform_below(rng, i + 1)]);
    for (int k = 0; k < 4; ++k) {
      const auto pick = uniform_below(rng, grid.size() + 1);
      s.thresholds.push_back(pick == grid.size() ? Threshold::infinity() : Threshold(grid[pick]));
    }
    const Rational direct = eval_fixed_order(inst, s);
    EXPECT_EQ(direct, oracle::simulate_fixed(inst, s));
    const PolicyNode tree = policy_from_fixed_order(inst, s);
    EXPECT_EQ(eval_policy(inst, tree), direct);
    EXPECT_EQ(oracle::simulate_policy(inst, tree), direct);

    const Instance b = random_instance("bernoulli_tree", 4, static_cast<std::uint64_t>(trial));
    ImpulsiveStrategy pi{{3, 1, 0}};
    EXPECT_EQ(eval_impulsive(b, pi), oracle::simulate_impulsive(b, pi.order));
    EXPECT_EQ(eval_policy(b, policy_from_impulsive(b, pi)), eval_impulsive(b, pi));
  }
}

TEST(ValidateOrder, RejectsRepeatsAndRange) {
  EXPECT_THROW(validate_order({0, 0}, 3, false), DomainError);
  EXPECT_THROW(validate_order({3}, 3, false), DomainError);
  EXPECT_THROW(validate_order({0, 1}, 3, true), DomainError);
  EXPECT_NO_THROW(validate_order({2, 0, 1}, 3, true));
}

}  // namespace
}  // namespace pandora
