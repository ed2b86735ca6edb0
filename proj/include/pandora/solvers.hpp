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

// Exact optimal solvers, one per strategy class.
//
// Ties are broken the same way everywhere: halting beats any action of equal
// value, and among boxes or orders of equal value the lexicographically least wins.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pandora/strategies.hpp"

namespace pandora {

inline constexpr int kAdaptiveBound = 14;
inline constexpr int kPermutationBound = 8;

struct AdaptiveResult {
  Rational utility;
  PolicyNode tree;
  /// Every positive-probability node of `tree` has a single optimal action
  /// (halting included), so no other strategy attains `utility`.
  bool unique = true;
  std::uint64_t states = 0;
};

/// Backward induction over (opened set, running max):
///   W(S, x) = max(0, max_{i not in S} E[(V_i - x)^+ + W(S + i, max(x, V_i))] - c(i | S)).
AdaptiveResult optimal_adaptive(const Instance& instance);

struct ThresholdResult {
  FixedOrderThresholds strategy;
  Rational utility;
  std::vector<Rational> grid;               // support union
  std::vector<std::vector<Rational>> f;     // f[i][g]: extra utility from round i at best grid[g]
};

/// Per-order recursion f_i(x) = max(0, E[(V - x)^+ - c(i | prefix) + f_{i+1}(max(V, x))])
/// on the support grid; t_i is the least grid value where f_i vanishes.
/// On-grid thresholds lose nothing: the running max only ever takes grid
/// values, and f_i(x) = 0 exactly when x >= the true threshold.
ThresholdResult optimal_thresholds(const Instance& instance, const std::vector<int>& sigma);

struct FixedOrderResult {
  FixedOrderThresholds strategy;
  Rational utility;
  std::uint64_t permutations = 0;
};

/// Best order over all n! permutations. With jobs > 1 the permutation space is
/// split by first element and the chunks are reduced by exact maximum.
FixedOrderResult optimal_fixed_order(const Instance& instance, int jobs = 1);

struct ImpulsiveResult {
  ImpulsiveStrategy strategy;
  Rational utility;
  std::uint64_t evaluated = 0;
};

/// Best impulsive strategy over all ordered subsets, the empty one included.
ImpulsiveResult optimal_impulsive(const Instance& instance);

/// Solution z of E[(V - z)^+] = c. With c > E[V] the solution is negative and
/// the box is never worth opening. With c = 0 every z >= max V solves it; max V
/// is returned.
struct ReservationValue {
  Rational z;
  bool never_open = false;
};
ReservationValue reservation_value(const FiniteDistribution& box, const Rational& c);

struct WeitzmanResult {
  Rational utility;
  FixedOrderThresholds strategy;
  std::vector<ReservationValue> reservation;  // per box, original index
};

/// Descending reservation values (ties by index); t_i = max(z, 0).
/// Throws DomainError unless the cost is additive.
WeitzmanResult weitzman(const Instance& instance);

/// Per-box costs when the cost is additive, nullopt otherwise.
std::optional<std::vector<Rational>> additive_costs(const CostOracle& cost);

struct GapReport {
  Rational opt_adaptive;
  Rational opt_fixed_order;
  std::optional<Rational> opt_impulsive;
  PolicyNode adaptive_witness;
  FixedOrderThresholds fixed_witness;
  std::optional<ImpulsiveStrategy> impulsive_witness;
  bool adaptive_unique = false;
  bool strict_adaptive_vs_fixed = false;
  bool strict_fixed_vs_impulsive = false;
  bool strict_adaptive_vs_impulsive = false;
};

GapReport adaptivity_gap(const Instance& instance, int jobs = 1);

}  // namespace pandora
