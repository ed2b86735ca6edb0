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

#include "pandora/transforms.hpp"

#include <algorithm>
#include <stdexcept>

#include "pandora/solvers.hpp"

namespace pandora {
namespace {

Rational total_tail(const Instance& instance, const Rational& x) {
  Rational t = 0;
  for (const auto& d : instance.boxes()) t += d.tail(x);
  return t;
}

// Sum over boxes of P(V_i > x).
Rational total_above(const Instance& instance, const Rational& x) {
  Rational t = 0;
  for (const auto& d : instance.boxes()) t += 1 - d.cdf(x);
  return t;
}

}  // namespace

Rational kappa_epsilon(const Instance& instance, const Rational& epsilon) {
  if (epsilon <= 0) throw DomainError("epsilon must be positive");
  if (total_tail(instance, 0) <= epsilon) return 0;
  // The tail sum is piecewise linear with breakpoints at the atoms and
  // vanishes at the largest one.
  const auto grid = support_union(instance);
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (total_tail(instance, grid[k]) > epsilon) continue;
    const Rational& lo = grid[k - 1];
    return lo + (total_tail(instance, lo) - epsilon) / total_above(instance, lo);
  }
  throw std::logic_error("kappa_epsilon: tail never drops below epsilon");
}

Instance discretize(const Instance& instance, const Rational& epsilon) {
  const Rational kappa = kappa_epsilon(instance, epsilon);
  std::vector<FiniteDistribution> boxes;
  for (const auto& d : instance.boxes()) {
    std::vector<Atom> atoms;
    for (const auto& a : d.atoms()) {
      const Rational capped = std::min(a.value, kappa);
      atoms.push_back({epsilon * floor_rational(capped / epsilon), a.prob});
    }
    boxes.emplace_back(std::move(atoms));
  }
  return Instance(std::move(boxes), instance.cost_ptr(), instance.declared_class());
}

int BernoullificationMap::lifted_index(int box, int atom) const {
  for (std::size_t k = 0; k < copies.size(); ++k) {
    if (copies[k].box == box && copies[k].atom == atom) return static_cast<int>(k);
  }
  throw DomainError("copy (" + std::to_string(box) + ", " + std::to_string(atom) +
                    ") does not exist in the lifted instance");
}

Bernoullified bernoullify(const Instance& instance) {
  BernoullificationMap map;
  map.original_size = instance.size();
  map.grid = support_union(instance);
  std::vector<FiniteDistribution> boxes;
  std::vector<int> owner;
  for (int i = 0; i < instance.size(); ++i) {
    const auto& d = instance.box(i);
    for (int j = 0; j < map.m(); ++j) {
      const Rational& v = map.grid[j];
      const Rational below = d.cdf(v);
      Rational weight = 0;
      if (below != 0) weight = (below - (j == 0 ? Rational(0) : d.cdf(map.grid[j - 1]))) / below;
      BernoulliCopy copy{i, j, v, weight};
      if (weight == 0 || v == 0) {
        map.dropped.push_back(copy);
        continue;
      }
      map.copies.push_back(copy);
      boxes.push_back(FiniteDistribution::bernoulli(v, weight));
      owner.push_back(i);
    }
  }
  auto cost = std::make_shared<ProjectedCost>(instance.cost_ptr(), std::move(owner));
  const std::string& label = instance.declared_class();
  const bool keep_label = label == "monotone_normalized" || label == "submodular" ||
                          label == "subadditive" || label == "matroid_rank";
  return {Instance(std::move(boxes), std::move(cost), keep_label ? label : ""), std::move(map)};
}

PullBack pull_back(const Instance& original, const Bernoullified& lifted,
                   const ImpulsiveStrategy& lifted_strategy) {
  validate_order(lifted_strategy.order, lifted.instance.size(), false);
  PullBack out;
  std::vector<bool> used(original.size(), false);
  for (int k : lifted_strategy.order) {
    const int box = lifted.map.copies[k].box;
    if (used[box]) continue;
    used[box] = true;
    out.first_copy_order.push_back(box);
  }
  std::vector<int> sigma = out.first_copy_order;
  for (int i = 0; i < original.size(); ++i) {
    if (!used[i]) sigma.push_back(i);
  }
  ThresholdResult best = optimal_thresholds(original, sigma);
  out.strategy = best.strategy;
  out.original_utility = best.utility;
  out.lifted_utility = eval_impulsive(lifted.instance, lifted_strategy);
  if (out.original_utility < out.lifted_utility) {
    throw std::logic_error("pull_back: original utility " + to_string(out.original_utility) +
                           " below lifted utility " + to_string(out.lifted_utility));
  }
  return out;
}

std::shared_ptr<ProjectedCost> lift_cost(CostPtr cost, int m) {
  if (m < 1) throw DomainError("lift needs m >= 1");
  std::vector<int> owner;
  for (int i = 0; i < cost->arity(); ++i) {
    for (int j = 0; j < m; ++j) owner.push_back(i);
  }
  return std::make_shared<ProjectedCost>(std::move(cost), std::move(owner));
}

PreservationResult check_preservation(const Instance& instance, CostClass cls) {
  return check_preservation(instance.cost_ptr(), static_cast<int>(support_union(instance).size()), cls);
}

PreservationResult check_preservation(const CostPtr& cost, int m, CostClass cls) {
  const int n = cost->arity();
  auto lifted = lift_cost(cost, m);
  PreservationResult out;
  out.lifted_size = lifted->arity();
  if (cls == CostClass::kCoverage) {
    auto cov = std::dynamic_pointer_cast<const CoverageCost>(cost);
    if (!cov) throw DomainError("coverage preservation needs a coverage certificate");
    out.original_in_class = check_coverage_certificate(*cost, cov->weights(), cov->covers()).pass;
    std::vector<BoxSet> covers;
    for (const auto& g : cov->covers()) {
      BoxSet lifted_cover;
      for (int i : g.elements()) {
        for (int j = 0; j < m; ++j) lifted_cover.insert(i * m + j);
      }
      covers.push_back(lifted_cover);
    }
    out.lifted = check_coverage_certificate(*lifted, cov->weights(), covers);
    return out;
  }
  if (cls == CostClass::kXos) {
    auto xos = std::dynamic_pointer_cast<const XosCost>(cost);
    if (!xos) throw DomainError("XOS preservation needs an XOS certificate");
    out.original_in_class = check_xos_certificate(*cost, xos->clauses()).pass;
    // a^{t,r}(i, j) = a^t(i) * 1{r_i = j} for every r in [m]^n.
    std::vector<std::vector<Rational>> clauses;
    std::vector<int> r(n, 0);
    for (;;) {
      for (const auto& a : xos->clauses()) {
        std::vector<Rational> clause(n * m, Rational(0));
        for (int i = 0; i < n; ++i) clause[i * m + r[i]] = a[i];
        clauses.push_back(std::move(clause));
      }
      int pos = 0;
      while (pos < n && ++r[pos] == m) r[pos++] = 0;
      if (pos == n) break;
    }
    out.lifted = check_xos_certificate(*lifted, clauses);
    return out;
  }
  out.original_in_class = validate_class(*cost, cls).pass;
  out.lifted = validate_class(*lifted, cls);
  return out;
}

}  // namespace pandora
