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

// Instance transformations: cap-and-floor discretization, and the lift of a
// finite-support instance to a weighted Bernoulli one.

#pragma once

#include <optional>
#include <vector>

#include "pandora/cost_classes.hpp"
#include "pandora/strategies.hpp"

namespace pandora {

/// Least kappa >= 0 with sum_i E[(V_i - kappa)^+] <= epsilon.
Rational kappa_epsilon(const Instance& instance, const Rational& epsilon);

/// V -> epsilon * floor(min(V, kappa) / epsilon). Cost and class label unchanged.
Instance discretize(const Instance& instance, const Rational& epsilon);

/// One lifted box: copy of original `box` at grid value `grid[atom]`, non-zero
/// with probability `weight` = P(V = v) / P(V <= v).
struct BernoulliCopy {
  int box = 0;
  int atom = 0;
  Rational value;
  Rational weight;

  bool operator==(const BernoulliCopy& other) const = default;
};

struct BernoullificationMap {
  int original_size = 0;
  std::vector<Rational> grid;          // support union; m = grid.size()
  std::vector<BernoulliCopy> copies;   // indexed by lifted box
  std::vector<BernoulliCopy> dropped;  // weight-0 copies, value-0 copies included

  int m() const { return static_cast<int>(grid.size()); }
  /// Lifted index of copy (box, atom); DomainError when that copy was dropped.
  int lifted_index(int box, int atom) const;
};

struct Bernoullified {
  Instance instance;
  BernoullificationMap map;
};

/// Lifted cost is c'(S) = c(boxes owning some copy in S).
Bernoullified bernoullify(const Instance& instance);

struct PullBack {
  std::vector<int> first_copy_order;  // original boxes in order of first lifted copy
  FixedOrderThresholds strategy;      // first_copy_order, then unused boxes; optimal thresholds
  Rational original_utility;
  Rational lifted_utility;
};

/// Fixed-order strategy on the original instance from an impulsive strategy on
/// the lifted one. Throws std::logic_error if the pulled-back strategy does
/// worse than the lifted one.
PullBack pull_back(const Instance& original, const Bernoullified& lifted,
                   const ImpulsiveStrategy& lifted_strategy);

/// Cost over n*m boxes where box i*m + j is copy j of box i.
std::shared_ptr<ProjectedCost> lift_cost(CostPtr cost, int m);

struct PreservationResult {
  bool original_in_class = false;
  ValidationResult lifted;
  int lifted_size = 0;
  bool pass() const { return original_in_class && lifted.pass; }
};

/// Lifts the cost to all n*m copies (none dropped) and validates the lifted
/// cost. Coverage and XOS use certificates lifted from the original ones; the
/// original cost must then be a CoverageCost or XosCost.
PreservationResult check_preservation(const Instance& instance, CostClass cls);
PreservationResult check_preservation(const CostPtr& cost, int m, CostClass cls);

}  // namespace pandora
