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

#include "pandora/instance.hpp"

#include <algorithm>
#include <set>

#include "pandora/cost_classes.hpp"
#include "pandora/hardness.hpp"
#include "pandora/random.hpp"

namespace pandora {
namespace {

std::optional<CostClass> validator_class(const std::string& label) {
  try {
    return parse_cost_class(label);
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

}  // namespace

Instance::Instance(std::vector<FiniteDistribution> boxes, CostPtr cost, std::string declared_class)
    : boxes_(std::move(boxes)), cost_(std::move(cost)), declared_class_(std::move(declared_class)) {
  if (!cost_) throw DomainError("instance needs a cost oracle");
  if (cost_->arity() != size()) {
    throw DomainError("cost arity " + std::to_string(cost_->arity()) + " does not match " +
                      std::to_string(size()) + " boxes");
  }
  if (auto cls = validator_class(declared_class_)) {
    const int bound = *cls == CostClass::kGrossSubstitutes
                          ? enumeration_bound(kGrossSubstitutesBound)
                          : enumeration_bound(kExhaustiveBound);
    if (size() <= bound) {
      if (auto r = validate_class(*cost_, *cls); !r) {
        throw DomainError("declared class '" + declared_class_ + "' fails validation: " + r.detail);
      }
    }
  }
}

bool Instance::is_bernoulli() const {
  return std::all_of(boxes_.begin(), boxes_.end(),
                     [](const FiniteDistribution& d) { return d.as_bernoulli().has_value(); });
}

WeightedBernoulli Instance::bernoulli(int i) const {
  auto b = box(i).as_bernoulli();
  if (!b) throw DomainError("box " + std::to_string(i) + " is not weighted Bernoulli");
  return *b;
}

void Instance::require_bernoulli(const std::string& what) const {
  for (int i = 0; i < size(); ++i) {
    if (!box(i).as_bernoulli()) {
      throw DomainError(what + " needs a Bernoulli instance; box " + std::to_string(i) +
                        " has support of size " + std::to_string(box(i).size()));
    }
  }
}

std::vector<Rational> support_union(const Instance& instance) {
  std::set<Rational> values{Rational(0)};
  for (const auto& d : instance.boxes()) {
    for (const auto& a : d.atoms()) values.insert(a.value);
  }
  return {values.begin(), values.end()};
}

Normalized drop_degenerate(const Instance& instance) {
  std::vector<int> kept;
  std::vector<int> dropped;
  std::vector<FiniteDistribution> boxes;
  for (int i = 0; i < instance.size(); ++i) {
    if (instance.box(i).is_degenerate()) {
      dropped.push_back(i);
    } else {
      kept.push_back(i);
      boxes.push_back(instance.box(i));
    }
  }
  if (dropped.empty()) return {instance, kept, dropped};
  auto cost = std::make_shared<ProjectedCost>(instance.cost_ptr(), kept);
  return {Instance(std::move(boxes), std::move(cost), instance.declared_class()), kept, dropped};
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Rational> table_from(int n, const std::vector<std::pair<BoxSet, Rational>>& entries,
                                 const Rational& fallback = 0) {
  std::vector<Rational> t(std::size_t{1} << n, fallback);
  t[0] = 0;
  for (const auto& [s, v] : entries) t[s.to_mask()] = v;
  return t;
}

}  // namespace

Instance example1() {
  std::vector<FiniteDistribution> boxes{
      FiniteDistribution::bernoulli(10, Rational(1, 2)),
      FiniteDistribution::bernoulli(12, Rational(1, 2)),
      FiniteDistribution::point(10),
  };
  auto cost = std::make_shared<ExplicitCost>(
      3, table_from(3, {{BoxSet{1, 2}, Rational(20)}, {BoxSet{0, 1, 2}, Rational(20)}}));
  return Instance(std::move(boxes), std::move(cost), "monotone_normalized");
}

Instance unit_demand_pair() {
  std::vector<FiniteDistribution> boxes{
      FiniteDistribution::bernoulli(2, Rational(1, 3)),
      FiniteDistribution::bernoulli(2, Rational(1, 3)),
  };
  auto cost = std::make_shared<ExplicitCost>(2, table_from(2, {}, Rational(1)));
  return Instance(std::move(boxes), std::move(cost), "submodular");
}

Instance subadditive4() {
  std::vector<FiniteDistribution> boxes{
      FiniteDistribution({{0, Rational(1, 3)}, {Rational(5, 2), Rational(1, 3)},
                          {100, Rational(1, 3)}}),
      FiniteDistribution::point(2),
      FiniteDistribution::bernoulli(3, Rational(1, 2)),
      FiniteDistribution::bernoulli(6, Rational(1, 2)),
  };
  // Costs over boxes 1..3; box 0 never adds cost.
  const Rational hi(21, 10), mid(11, 10), lo(1);
  std::vector<std::pair<BoxSet, Rational>> core{
      {BoxSet{1, 2, 3}, hi}, {BoxSet{1, 2}, hi}, {BoxSet{2}, mid},     {BoxSet{2, 3}, mid},
      {BoxSet{1}, lo},       {BoxSet{3}, lo},    {BoxSet{1, 3}, lo},
  };
  std::vector<std::pair<BoxSet, Rational>> entries;
  for (const auto& [s, v] : core) {
    entries.push_back({s, v});
    entries.push_back({s | BoxSet{0}, v});
  }
  auto cost = std::make_shared<ExplicitCost>(4, table_from(4, entries));
  return Instance(std::move(boxes), std::move(cost), "subadditive");
}

Instance xos_lift_of(const Instance& base) {
  const int n = base.size();
  if (n == 0) throw DomainError("xos_lift_of needs at least one box");
  BoxSet everything;
  for (int i = 0; i < n; ++i) everything.insert(i);
  const Rational top = base.cost().eval(everything);
  FiniteDistribution best = base.box(0);
  for (int i = 1; i < n; ++i) best = max_of(best, base.box(i));
  // V0 = 2 b (1 + n c([n]) + max_i s_i) with b a fair coin.
  FiniteDistribution v0 = thin(affine(best, 2, 2 * (1 + Rational(n) * top)), Rational(1, 2));
  std::vector<FiniteDistribution> boxes{std::move(v0)};
  for (const auto& d : base.boxes()) boxes.push_back(d);
  return Instance(std::move(boxes), xos_lift(base.cost()), "xos");
}

Instance hardness_instance(int n, std::optional<BoxSet> planted, HardnessOverrides overrides) {
  HardnessParams params;
  if (overrides.alpha || overrides.beta) {
    HardnessParams formula = (overrides.alpha && overrides.beta) ? HardnessParams{}
                                                                 : hardness_params(n);
    params = hardness_params_override(n, overrides.alpha.value_or(formula.alpha),
                                      overrides.beta.value_or(formula.beta));
  } else {
    params = hardness_params(n);
  }
  if (params.beta >= params.alpha) throw DomainError("hardness instance needs beta < alpha");
  const FiniteDistribution box =
      FiniteDistribution::bernoulli(Rational(params.m), ratio(1, params.alpha));
  std::vector<FiniteDistribution> boxes(n, box);
  auto cost = std::make_shared<HardnessCost>(n, params.alpha, params.beta, std::move(planted));
  return Instance(std::move(boxes), std::move(cost), n <= kExhaustiveBound ? "matroid_rank" : "");
}

Instance canonical(const std::string& name) {
  if (name == "example1") return example1();
  if (name == "unit_demand_pair") return unit_demand_pair();
  if (name == "subadditive4") return subadditive4();
  if (name == "xos_lift_example1") return xos_lift_of(example1());
  const std::string prefix = "hardness_baseline_";
  if (name.rfind(prefix, 0) == 0) {
    const std::string digits = name.substr(prefix.size());
    if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos &&
        digits.size() < 9) {
      return hardness_instance(std::stoi(digits));
    }
  }
  throw DomainError("unknown canonical instance '" + name + "'");
}

std::vector<std::string> canonical_names() {
  return {"example1", "unit_demand_pair", "subadditive4", "xos_lift_example1",
          "hardness_baseline_<n>"};
}

// ---------------------------------------------------------------------------

namespace {

// FNV-1a, so the per-family stream does not depend on the standard library.
std::uint64_t family_stream(const std::string& family) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : family) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Rational random_prob(std::mt19937_64& rng, int denominator) {
  return ratio(uniform_int(rng, 1, denominator), denominator);
}

FiniteDistribution random_bernoulli(std::mt19937_64& rng, const RandomParams& p) {
  return FiniteDistribution::bernoulli(uniform_int(rng, 1, p.max_value),
                                       random_prob(rng, p.prob_denominator));
}

// Up to max_atoms distinct values (0 included with positive probability half
// the time), probabilities from a random composition of the denominator.
FiniteDistribution random_general(std::mt19937_64& rng, const RandomParams& p) {
  const int atoms = static_cast<int>(uniform_int(rng, 1, std::max(1, p.max_atoms)));
  std::set<long> values;
  if (uniform_int(rng, 0, 1) == 0) values.insert(0);
  while (static_cast<int>(values.size()) < atoms) values.insert(uniform_int(rng, 1, p.max_value));
  const int k = static_cast<int>(values.size());
  const int denom = std::max(p.prob_denominator, k);
  // k positive parts summing to denom.
  std::set<long> cuts;
  while (static_cast<int>(cuts.size()) < k - 1) cuts.insert(uniform_int(rng, 1, denom - 1));
  std::vector<long> bounds{0};
  bounds.insert(bounds.end(), cuts.begin(), cuts.end());
  bounds.push_back(denom);
  std::vector<Atom> out;
  auto it = values.begin();
  for (int j = 0; j < k; ++j, ++it) {
    out.push_back({Rational(*it), ratio(bounds[j + 1] - bounds[j], denom)});
  }
  return FiniteDistribution(std::move(out));
}

CostPtr random_coverage(std::mt19937_64& rng, int n, const RandomParams& p) {
  const int elements = static_cast<int>(uniform_int(rng, 1, n + 2));
  std::vector<Rational> weights;
  std::vector<BoxSet> covers;
  for (int e = 0; e < elements; ++e) {
    weights.push_back(Rational(uniform_int(rng, 1, p.max_cost)));
    BoxSet cover;
    for (int i = 0; i < n; ++i) {
      if (uniform_int(rng, 0, 2) == 0) cover.insert(i);
    }
    if (cover.empty() && n > 0) cover.insert(static_cast<int>(uniform_int(rng, 0, n - 1)));
    covers.push_back(cover);
  }
  return std::make_shared<CoverageCost>(n, std::move(weights), std::move(covers));
}

CostPtr random_xos(std::mt19937_64& rng, int n, const RandomParams& p) {
  const int count = static_cast<int>(uniform_int(rng, 1, n + 1));
  std::vector<std::vector<Rational>> clauses;
  for (int t = 0; t < count; ++t) {
    std::vector<Rational> a;
    for (int i = 0; i < n; ++i) a.push_back(Rational(uniform_int(rng, 0, p.max_cost)));
    clauses.push_back(std::move(a));
  }
  return std::make_shared<XosCost>(n, std::move(clauses));
}

CostPtr random_tree(std::mt19937_64& rng, int n, const RandomParams& p) {
  std::vector<int> parent(n + 1, 0);
  parent[0] = -1;
  for (int k = 1; k <= n; ++k) parent[k] = static_cast<int>(uniform_int(rng, 0, k - 1));
  std::vector<Rational> node_costs(n + 1, Rational(0));
  for (int k = 1; k <= n; ++k) node_costs[k] = Rational(uniform_int(rng, 0, p.max_cost));
  return std::make_shared<TreeClosureCost>(std::move(parent), std::move(node_costs));
}

std::vector<Rational> random_additive(std::mt19937_64& rng, int n, const RandomParams& p) {
  std::vector<Rational> c;
  for (int i = 0; i < n; ++i) c.push_back(ratio(uniform_int(rng, 0, 2 * p.max_cost), 2));
  return c;
}

// Weighted set cover over random "bundles": c(S) is the cheapest total weight
// of bundles whose union contains S. Monotone and subadditive by construction,
// and typically not submodular.
CostPtr random_set_cover(std::mt19937_64& rng, int n, const RandomParams& p) {
  std::vector<std::pair<std::uint64_t, Rational>> bundles;
  for (int i = 0; i < n; ++i) bundles.push_back({std::uint64_t{1} << i, Rational(uniform_int(rng, 1, p.max_cost))});
  const int extra = static_cast<int>(uniform_int(rng, 1, n + 1));
  for (int b = 0; b < extra; ++b) {
    std::uint64_t mask = 0;
    for (int i = 0; i < n; ++i) {
      if (uniform_int(rng, 0, 1) == 0) mask |= std::uint64_t{1} << i;
    }
    if (mask == 0) continue;
    bundles.push_back({mask, Rational(uniform_int(rng, 1, p.max_cost + 2))});
  }
  const std::uint64_t size = std::uint64_t{1} << n;
  std::vector<std::optional<Rational>> reach(size);
  reach[0] = Rational(0);
  for (std::uint64_t m = 0; m < size; ++m) {
    if (!reach[m]) continue;
    for (const auto& [bm, w] : bundles) {
      const std::uint64_t next = m | bm;
      const Rational cand = *reach[m] + w;
      if (!reach[next] || cand < *reach[next]) reach[next] = cand;
    }
  }
  // Cheapest cover of S is the cheapest reachable superset of S.
  for (int i = 0; i < n; ++i) {
    for (std::uint64_t m = size; m-- > 0;) {
      if (m & (std::uint64_t{1} << i)) continue;
      const auto& up = reach[m | (std::uint64_t{1} << i)];
      if (up && (!reach[m] || *up < *reach[m])) reach[m] = up;
    }
  }
  std::vector<Rational> table(size);
  for (std::uint64_t m = 0; m < size; ++m) table[m] = *reach[m];
  return std::make_shared<ExplicitCost>(n, std::move(table));
}

}  // namespace

Instance random_instance(const std::string& family, int n, std::uint64_t seed,
                         const RandomParams& params) {
  if (n < 0 || n > kExhaustiveBound) {
    throw DomainError("random instances need 0 <= n <= " + std::to_string(kExhaustiveBound));
  }
  auto rng = make_rng(seed, family_stream(family));
  std::vector<FiniteDistribution> boxes;
  const bool bernoulli = family.rfind("bernoulli_", 0) == 0;
  auto fill_boxes = [&] {
    for (int i = 0; i < n; ++i) {
      boxes.push_back(bernoulli ? random_bernoulli(rng, params) : random_general(rng, params));
    }
  };
  if (family == "bernoulli_coverage" || family == "general_coverage") {
    fill_boxes();
    return Instance(std::move(boxes), random_coverage(rng, n, params), "submodular");
  }
  if (family == "bernoulli_tree" || family == "general_tree") {
    fill_boxes();
    return Instance(std::move(boxes), random_tree(rng, n, params), "submodular");
  }
  if (family == "bernoulli_xos" || family == "general_xos") {
    fill_boxes();
    return Instance(std::move(boxes), random_xos(rng, n, params), "xos");
  }
  if (family == "bernoulli_hardness") {
    if (n < 2) throw DomainError("bernoulli_hardness needs n >= 2");
    const int alpha = params.alpha.value_or(static_cast<int>(uniform_int(rng, 2, n)));
    const int beta = params.beta.value_or(static_cast<int>(uniform_int(rng, 0, alpha - 1)));
    std::optional<BoxSet> planted;
    if (uniform_int(rng, 0, 3) != 0) {
      std::vector<int> order(n);
      for (int i = 0; i < n; ++i) order[i] = i;
      for (int i = 0; i < alpha; ++i) {
        std::swap(order[i], order[uniform_int(rng, i, n - 1)]);
      }
      planted = BoxSet(std::span<const int>(order.data(), alpha));
    }
    const Rational m(5 * std::max(beta, 1));
    for (int i = 0; i < n; ++i) {
      boxes.push_back(
          FiniteDistribution::bernoulli(m * uniform_int(rng, 1, 2), random_prob(rng, params.prob_denominator)));
    }
    return Instance(std::move(boxes), std::make_shared<HardnessCost>(n, alpha, beta, planted),
                    "matroid_rank");
  }
  if (family == "additive" || family == "bernoulli_additive") {
    fill_boxes();
    return Instance(std::move(boxes),
                    std::make_shared<AdditiveCost>(random_additive(rng, n, params)), "submodular");
  }
  if (family == "explicit_subadditive") {
    fill_boxes();
    return Instance(std::move(boxes), random_set_cover(rng, n, params), "subadditive");
  }
  throw DomainError("unknown random family '" + family + "'");
}

std::vector<std::string> random_families() {
  return {"bernoulli_coverage", "bernoulli_tree",  "bernoulli_hardness", "general_coverage",
          "general_tree",       "additive",        "bernoulli_additive", "explicit_subadditive",
          "bernoulli_xos",      "general_xos"};
}

}  // namespace pandora
