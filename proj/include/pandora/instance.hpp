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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pandora/cost.hpp"
#include "pandora/distribution.hpp"

namespace pandora {

/// n boxes with independent finite-support values and one cost oracle.
class Instance {
 public:
  /// `declared_class` is a free-form label. When it names a validator class
  /// and n is within the exhaustive bound, the cost is re-checked and a
  /// mismatch throws DomainError.
  Instance(std::vector<FiniteDistribution> boxes, CostPtr cost, std::string declared_class = "");

  int size() const { return static_cast<int>(boxes_.size()); }
  const std::vector<FiniteDistribution>& boxes() const { return boxes_; }
  const FiniteDistribution& box(int i) const { return boxes_.at(i); }
  const CostPtr& cost_ptr() const { return cost_; }
  const CostOracle& cost() const { return *cost_; }
  const std::string& declared_class() const { return declared_class_; }

  bool is_bernoulli() const;
  /// Throws DomainError when box i is not weighted Bernoulli.
  WeightedBernoulli bernoulli(int i) const;
  void require_bernoulli(const std::string& what) const;

 private:
  std::vector<FiniteDistribution> boxes_;
  CostPtr cost_;
  std::string declared_class_;
};

/// Sorted distinct values over all boxes, with 0 always present.
std::vector<Rational> support_union(const Instance& instance);

/// Removes constant-zero boxes, restricting the cost to the survivors.
/// `kept[k]` is the original index of surviving box k.
struct Normalized {
  Instance instance;
  std::vector<int> kept;
  std::vector<int> dropped;
};
Normalized drop_degenerate(const Instance& instance);

// Canonical instances. Box indices are 0-based; "box k" in the comments below
// is index k-1.

/// Boxes 10 w.p. 1/2, 12 w.p. 1/2, 10 w.p. 1; cost 20 on {2,3} and {1,2,3}, else 0.
Instance example1();
/// Two boxes with value 2 w.p. 1/3; any non-empty set costs 1.
Instance unit_demand_pair();
/// Four-box subadditive (not submodular) instance with a strict adaptivity gap.
Instance subadditive4();
/// Box 0 with V0 = 2 b (1 + n c([n]) + max_i s_i) prepended to `base`, under
/// the XOS lift of base's cost. Old box k becomes k+1.
Instance xos_lift_of(const Instance& base);

struct HardnessOverrides {
  std::optional<int> alpha;
  std::optional<int> beta;
};

/// I_0 (planted empty) or I_R: every box holds M = 5 beta w.p. 1/alpha.
/// alpha and beta come from the ceiling formulas unless overridden.
Instance hardness_instance(int n, std::optional<BoxSet> planted = std::nullopt,
                           HardnessOverrides overrides = {});

/// Names accepted by canonical(): example1, unit_demand_pair, subadditive4,
/// xos_lift_example1, hardness_baseline_<n>.
Instance canonical(const std::string& name);
std::vector<std::string> canonical_names();

// Random instances.

struct RandomParams {
  int max_atoms = 3;          // general families: atoms per box (incl. 0)
  int max_value = 12;         // values drawn from 1..max_value
  int max_cost = 6;           // per-element / per-node / per-box costs
  int prob_denominator = 6;   // probabilities are multiples of 1/denominator
  std::optional<int> alpha;   // bernoulli_hardness overrides
  std::optional<int> beta;
};

/// Families: bernoulli_coverage, bernoulli_tree, bernoulli_hardness,
/// general_coverage, general_tree, additive, bernoulli_additive,
/// explicit_subadditive, bernoulli_xos, general_xos. Fully determined by
/// (family, n, seed, params).
Instance random_instance(const std::string& family, int n, std::uint64_t seed,
                         const RandomParams& params = {});
std::vector<std::string> random_families();

}  // namespace pandora
