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

#include "pandora/corpus.hpp"
#include "pandora/io.hpp"

namespace pandora {
namespace {

// Same values on every subset: the strongest equality a cost oracle admits.
void expect_same_cost(const CostOracle& a, const CostOracle& b) {
  ASSERT_EQ(a.arity(), b.arity());
  ASSERT_LE(a.arity(), 14);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << a.arity()); ++m)
    ASSERT_EQ(a.eval(BoxSet::from_mask(m)), b.eval(BoxSet::from_mask(m))) << m;
}

void round_trip(const CostPtr& cost) {
  const Json j = cost_to_json(*cost);
  const CostPtr back = cost_from_json(parse_json(j.dump()));
  EXPECT_EQ(back->kind(), cost->kind());
  EXPECT_EQ(cost_to_json(*back).dump(), j.dump());
  expect_same_cost(*cost, *back);
}

TEST(CostJson, EveryKindRoundTrips) {
  round_trip(example1().cost_ptr());
  round_trip(std::make_shared<AdditiveCost>(std::vector<Rational>{1, ratio(1, 3), 0}));
  round_trip(std::make_shared<BudgetAdditiveCost>(std::vector<Rational>{1, 2, 3}, ratio(7, 2)));
  round_trip(std::make_shared<CoverageCost>(3, std::vector<Rational>{2, 1}, std::vector<BoxSet>{{0, 1}, {2}}));
  round_trip(std::make_shared<XosCost>(2, std::vector<std::vector<Rational>>{{1, 0}, {0, 2}}));
  round_trip(std::make_shared<TreeClosureCost>(std::vector<int>{-1, 0, 1, 1}, std::vector<Rational>{0, 1, 2, 3}));
  round_trip(std::make_shared<HardnessCost>(8, 3, 1, BoxSet{0, 4, 6}));
  round_trip(std::make_shared<HardnessCost>(8, 3, 1));
  round_trip(lift_cost(example1().cost_ptr(), 2));
  round_trip(std::make_shared<MarginalCost>(subadditive4().cost_ptr(), BoxSet{2}));
  round_trip(with_counter(example1().cost_ptr()));
}

TEST(CostJson, SchemaErrors) {
  EXPECT_THROW(cost_from_json(parse_json(R"({"kind": "additive"})")), ParseError);
  EXPECT_THROW(cost_from_json(parse_json(R"({"kind": "mystery"})")), ParseError);
  EXPECT_THROW(cost_from_json(parse_json(R"({"kind": "explicit", "n": 1, "table": {"": "0"}})")),
               ParseError);
  EXPECT_THROW(cost_from_json(parse_json(R"({"kind": "additive", "per_box": ["x"]})")), DomainError);
}

TEST(ParseJson, ReportsLineAndColumn) {
  try {
    parse_json("{\n  \"kind\": ,\n}", "cost.json");
    FAIL() << "no exception";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 11u);
    const std::string what = e.what();
    EXPECT_NE(what.find("cost.json"), std::string::npos);
    EXPECT_NE(what.find("line 2, column 11"), std::string::npos);
    EXPECT_EQ(what.find("line 2, column 11", what.find("line 2, column 11") + 1), std::string::npos);
  }
}

TEST(InstanceJson, RoundTrips) {
  std::vector<Instance> all;
  for (const auto& name : {"example1", "unit_demand_pair", "subadditive4", "xos_lift_example1"})
    all.push_back(canonical(name));
  for (const auto& family : random_families()) all.push_back(random_instance(family, 4, 3));
  all.push_back(bernoullify(example1()).instance);
  all.push_back(discretize(subadditive4(), ratio(1, 3)));
  for (const auto& inst : all) {
    const Json j = instance_to_json(inst);
    const Instance back = instance_from_json(parse_json(j.dump(2)));
    EXPECT_EQ(instance_to_json(back).dump(), j.dump());
    ASSERT_EQ(back.size(), inst.size());
    for (int i = 0; i < inst.size(); ++i) EXPECT_EQ(back.box(i), inst.box(i));
    EXPECT_EQ(back.declared_class(), inst.declared_class());
    expect_same_cost(back.cost(), inst.cost());
  }
}

TEST(InstanceJson, AcceptsWrapperAndRejectsBadDistributions) {
  Json wrapped;
  wrapped["instance"] = instance_to_json(example1());
  EXPECT_EQ(instance_to_json(instance_from_json(wrapped)).dump(), wrapped["instance"].dump());
  Json bad = instance_to_json(unit_demand_pair());
  bad["boxes"][0]["atoms"][0][1] = "1/2";
  EXPECT_THROW(instance_from_json(bad), DomainError);
}

TEST(StrategyJson, RoundTrips) {
  const FixedOrderThresholds f{{2, 0, 1}, {Threshold::infinity(), Threshold(ratio(21, 2)), Threshold(Rational(0))}};
  EXPECT_EQ(fixed_order_from_json(strategy_to_json(f)), f);
  const ImpulsiveWithDummies d{{3, 1, 2}, BoxSet{1, 2}};
  const ImpulsiveWithDummies d2 = impulsive_from_json(strategy_to_json(d));
  EXPECT_EQ(d2.order, d.order);
  EXPECT_EQ(d2.opened, d.opened);
  const PolicyNode tree = optimal_adaptive(example1()).tree;
  EXPECT_EQ(policy_from_json(parse_json(policy_to_json(tree).dump())), tree);
}

TEST(TransformJson, DiscretizedInstanceReloadsIdentically) {
  for (const Rational& eps : {ratio(1, 1000), ratio(1, 2), Rational(3)}) {
    const Instance d = discretize(subadditive4(), eps);
    const std::string first = instance_to_json(d).dump(2);
    const std::string second = instance_to_json(instance_from_json(parse_json(first))).dump(2);
    EXPECT_EQ(first, second);
  }
  const Json m = map_to_json(bernoullify(example1()).map);
  EXPECT_EQ(m["original_size"], 3);
  EXPECT_EQ(m["grid"].size(), 3u);
}

TEST(ReportJson, StableFieldOrder) {
  const Json g = gap_to_json(adaptivity_gap(example1()));
  std::vector<std::string> keys;
  for (auto it = g.begin(); it != g.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys.front(), "opt_adaptive");
  EXPECT_EQ(g["opt_adaptive"], "21/2");
  EXPECT_EQ(g.dump(), gap_to_json(adaptivity_gap(example1())).dump());
}

TEST(Corpus, EveryEntryPasses) {
  const CorpusReport r = run_corpus();
  EXPECT_EQ(r.entries.size(), corpus_names().size());
  for (const auto& e : r.entries) {
    EXPECT_TRUE(e.error.empty()) << e.name << ": " << e.error;
    for (const auto& c : e.checks) EXPECT_TRUE(c.pass) << e.name << "/" << c.name << " expected " << c.expected << " got " << c.got;
  }
  EXPECT_TRUE(r.pass());
  EXPECT_THROW(run_corpus_entry("missing"), DomainError);
}

TEST(Suites, SmallRunsPassAndAreDeterministic) {
  for (Suite s : all_suites()) {
    const SuiteReport a = run_theorem_suite(s, 12, 99, 1);
    EXPECT_TRUE(a.pass()) << to_string(s);
    EXPECT_EQ(a.trials, 12);
    const SuiteReport b = run_theorem_suite(s, 12, 99, 3);
    EXPECT_EQ(suite_to_json(a).dump(), suite_to_json(b).dump()) << to_string(s);
    EXPECT_EQ(parse_suite(to_string(s)), s);
  }
  EXPECT_THROW(parse_suite("T99"), DomainError);
}

}  // namespace
}  // namespace pandora
