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

// Strategy representations and their exact expected utilities.

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pandora/instance.hpp"

namespace pandora {

/// Opens boxes in `order` until the first non-zero value. Empty = halt at once.
struct ImpulsiveStrategy {
  std::vector<int> order;

  bool operator==(const ImpulsiveStrategy& other) const = default;
};

/// pi_P: walks `order`; boxes in `opened` are inspected, every other slot is
/// a dummy that halts with that box's probability without opening it.
struct ImpulsiveWithDummies {
  std::vector<int> order;
  BoxSet opened;

  static ImpulsiveWithDummies all_opened(const ImpulsiveStrategy& s);
};

/// Opens sigma[0], sigma[1], ... and halts before round i iff best >= thresholds[i].
struct FixedOrderThresholds {
  std::vector<int> sigma;
  std::vector<Threshold> thresholds;

  bool operator==(const FixedOrderThresholds& other) const = default;
};

/// Adaptive deterministic strategy. A node with no `open` halts; otherwise it
/// opens that box and branches on the observed value, children sorted by value.
struct PolicyNode {
  std::optional<int> open;
  std::vector<std::pair<Rational, PolicyNode>> children;

  static PolicyNode halt() { return {}; }
  bool is_halt() const { return !open.has_value(); }
  bool operator==(const PolicyNode& other) const;
  /// Boxes opened anywhere in the tree.
  int node_count() const;
};

struct PQ {
  Rational p;         // probability the strategy halts on a slot: 1 - q
  Rational q;         // product of q_i over every slot, dummy or opened
  Rational p_opened;  // probability that an inspected (non-dummy) box is non-zero
};

/// Both forms of p (sum of prefix-q times p_j, and 1 - product) are computed;
/// a mismatch throws std::logic_error.
PQ pq_of(const ImpulsiveWithDummies& strategy, const Instance& instance);
PQ pq_of(const ImpulsiveStrategy& strategy, const Instance& instance);

enum class MarginalKind { kN, kY, kM };

/// Marginal utility after the root box r was opened (its value is v_r, read
/// from the instance) and the boxes in `conditioning` are already paid for.
struct MarginalUtilityContext {
  int root = 0;
  BoxSet conditioning;
};

/// Slot expansion: each opened slot j adds
///   q_prefix * (p_j g(v_j) - c(j | {r} u T u earlier opened slots))
/// with g = id (N), (. - v_r)^+ (Y) or (. - v_r) (M); dummies only enter
/// through q_prefix. The empty strategy has every marginal utility 0.
Rational marginal_utility(MarginalKind kind, const ImpulsiveWithDummies& strategy,
                          const MarginalUtilityContext& ctx, const Instance& instance);

/// Deterministic impulsive strategies that pi_P realizes, with their
/// probabilities; identical outcomes are merged, first appearance order.
std::vector<std::pair<ImpulsiveStrategy, Rational>> dummy_mixture(
    const ImpulsiveWithDummies& strategy, const Instance& instance);

/// E[reward] - E[cost] of an impulsive strategy via the prefix-q expansion.
Rational eval_impulsive(const Instance& instance, const ImpulsiveStrategy& strategy);

/// Exact utility by forward propagation of the running-maximum law.
Rational eval_fixed_order(const Instance& instance, const FixedOrderThresholds& strategy);

/// Exact utility by traversing the tree.
Rational eval_policy(const Instance& instance, const PolicyNode& tree);

/// Tree that plays a fixed-order strategy.
PolicyNode policy_from_fixed_order(const Instance& instance, const FixedOrderThresholds& strategy);
PolicyNode policy_from_impulsive(const Instance& instance, const ImpulsiveStrategy& strategy);

void validate_order(const std::vector<int>& order, int n, bool permutation);

}  // namespace pandora
