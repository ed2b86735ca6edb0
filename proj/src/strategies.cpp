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

#include "pandora/strategies.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace pandora {

ImpulsiveWithDummies ImpulsiveWithDummies::all_opened(const ImpulsiveStrategy& s) {
  return {s.order, BoxSet(std::span<const int>(s.order))};
}

bool PolicyNode::operator==(const PolicyNode& other) const {
  if (open != other.open || children.size() != other.children.size()) return false;
  for (std::size_t k = 0; k < children.size(); ++k) {
    if (children[k].first != other.children[k].first) return false;
    if (!(children[k].second == other.children[k].second)) return false;
  }
  return true;
}

int PolicyNode::node_count() const {
  if (is_halt()) return 0;
  int total = 1;
  for (const auto& [v, child] : children) total += child.node_count();
  return total;
}

void validate_order(const std::vector<int>& order, int n, bool permutation) {
  std::vector<bool> seen(n, false);
  for (int b : order) {
    if (b < 0 || b >= n) {
      throw DomainError("box " + std::to_string(b) + " out of range for " + std::to_string(n) +
                        " boxes");
    }
    if (seen[b]) throw DomainError("box " + std::to_string(b) + " repeated in strategy");
    seen[b] = true;
  }
  if (permutation && static_cast<int>(order.size()) != n) {
    throw DomainError("order must be a permutation of all " + std::to_string(n) + " boxes");
  }
}

namespace {

void check_dummies(const ImpulsiveWithDummies& s, const Instance& instance) {
  validate_order(s.order, instance.size(), false);
  for (int b : s.opened.elements()) {
    if (std::find(s.order.begin(), s.order.end(), b) == s.order.end()) {
      throw DomainError("opened box " + std::to_string(b) + " is not in the strategy order");
    }
  }
}

}  // namespace

PQ pq_of(const ImpulsiveWithDummies& strategy, const Instance& instance) {
  instance.require_bernoulli("pq_of");
  check_dummies(strategy, instance);
  PQ out{0, 1, 0};
  Rational prefix_sum = 0;
  for (int b : strategy.order) {
    const auto box = instance.bernoulli(b);
    prefix_sum += out.q * box.prob;
    if (strategy.opened.contains(b)) out.p_opened += out.q * box.prob;
    out.q *= box.q();
  }
  out.p = 1 - out.q;
  if (out.p != prefix_sum) throw std::logic_error("pq_of: sum and product forms disagree");
  return out;
}

PQ pq_of(const ImpulsiveStrategy& strategy, const Instance& instance) {
  return pq_of(ImpulsiveWithDummies::all_opened(strategy), instance);
}

Rational marginal_utility(MarginalKind kind, const ImpulsiveWithDummies& strategy,
                          const MarginalUtilityContext& ctx, const Instance& instance) {
  instance.require_bernoulli("marginal_utility");
  check_dummies(strategy, instance);
  if (ctx.root < 0 || ctx.root >= instance.size()) throw DomainError("root box out of range");
  if (strategy.opened.contains(ctx.root)) throw DomainError("root box is opened by the strategy");
  if (strategy.opened.intersects(ctx.conditioning)) {
    throw DomainError("conditioning set overlaps the opened boxes");
  }
  if (ctx.conditioning.bound() > instance.size()) throw DomainError("conditioning set out of range");
  const Rational vr = instance.bernoulli(ctx.root).value;
  const CostOracle& c = instance.cost();
  BoxSet paid = ctx.conditioning;
  paid.insert(ctx.root);
  Rational base = c.eval(paid);
  Rational q = 1;
  Rational total = 0;
  for (int b : strategy.order) {
    const auto box = instance.bernoulli(b);
    if (strategy.opened.contains(b)) {
      Rational gain = box.value;
      if (kind == MarginalKind::kY) gain = positive_part(box.value - vr);
      if (kind == MarginalKind::kM) gain = box.value - vr;
      paid.insert(b);
      Rational next = c.eval(paid);
      total += q * (box.prob * gain - (next - base));
      base = next;
    }
    q *= box.q();
  }
  return total;
}

std::vector<std::pair<ImpulsiveStrategy, Rational>> dummy_mixture(
    const ImpulsiveWithDummies& strategy, const Instance& instance) {
  instance.require_bernoulli("dummy_mixture");
  check_dummies(strategy, instance);
  std::vector<std::pair<ImpulsiveStrategy, Rational>> out;
  auto emit = [&](const std::vector<int>& order, const Rational& prob) {
    if (prob == 0) return;
    for (auto& [s, p] : out) {
      if (s.order == order) {
        p += prob;
        return;
      }
    }
    out.push_back({ImpulsiveStrategy{order}, prob});
  };
  // Walk the slots carrying the probability that no dummy has halted yet.
  std::vector<int> opened;
  Rational alive = 1;
  for (int b : strategy.order) {
    if (strategy.opened.contains(b)) {
      opened.push_back(b);
      continue;
    }
    const auto box = instance.bernoulli(b);
    emit(opened, alive * box.prob);
    alive *= box.q();
  }
  emit(opened, alive);
  return out;
}

Rational eval_impulsive(const Instance& instance, const ImpulsiveStrategy& strategy) {
  instance.require_bernoulli("eval_impulsive");
  validate_order(strategy.order, instance.size(), false);
  const CostOracle& c = instance.cost();
  BoxSet paid;
  Rational base = 0;
  Rational q = 1;
  Rational total = 0;
  for (int b : strategy.order) {
    const auto box = instance.bernoulli(b);
    paid.insert(b);
    Rational next = c.eval(paid);
    total += q * (box.prob * box.value - (next - base));
    base = next;
    q *= box.q();
  }
  return total;
}

Rational eval_fixed_order(const Instance& instance, const FixedOrderThresholds& strategy) {
  validate_order(strategy.sigma, instance.size(), true);
  if (strategy.thresholds.size() != strategy.sigma.size()) {
    throw DomainError("need one threshold per round");
  }
  const CostOracle& c = instance.cost();
  std::map<Rational, Rational> running{{Rational(0), Rational(1)}};
  Rational reward = 0;
  Rational cost = 0;
  BoxSet prefix;
  Rational prefix_cost = 0;
  for (std::size_t round = 0; round < strategy.sigma.size(); ++round) {
    const int b = strategy.sigma[round];
    const Threshold& t = strategy.thresholds[round];
    std::map<Rational, Rational> next;
    Rational continuing = 0;
    for (const auto& [best, w] : running) {
      if (t.halts_at(best)) {
        reward += best * w;
        continue;
      }
      continuing += w;
      for (const auto& a : instance.box(b).atoms()) next[std::max(best, a.value)] += w * a.prob;
    }
    if (continuing == 0) {
      running.clear();
      break;
    }
    prefix.insert(b);
    const Rational after = c.eval(prefix);
    cost += continuing * (after - prefix_cost);
    prefix_cost = after;
    running = std::move(next);
  }
  for (const auto& [best, w] : running) reward += best * w;
  return reward - cost;
}

namespace {

Rational eval_node(const Instance& instance, const PolicyNode& node, BoxSet& opened,
                   const Rational& cost_so_far, const Rational& best) {
  if (node.is_halt()) return best;
  const int b = *node.open;
  if (b < 0 || b >= instance.size()) throw DomainError("policy opens out-of-range box");
  if (opened.contains(b)) throw DomainError("policy opens box " + std::to_string(b) + " twice");
  const auto& atoms = instance.box(b).atoms();
  if (node.children.size() != atoms.size()) {
    throw DomainError("policy node for box " + std::to_string(b) + " has " +
                      std::to_string(node.children.size()) + " children, expected " +
                      std::to_string(atoms.size()));
  }
  opened.insert(b);
  const Rational cost_now = instance.cost().eval(opened);
  const Rational step = cost_now - cost_so_far;
  Rational total = -step;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    if (node.children[k].first != atoms[k].value) {
      opened.erase(b);
      throw DomainError("policy node for box " + std::to_string(b) + " lacks a child for value " +
                        to_string(atoms[k].value));
    }
    total += atoms[k].prob *
             eval_node(instance, node.children[k].second, opened, cost_now,
                       std::max(best, atoms[k].value));
  }
  opened.erase(b);
  return total;
}

PolicyNode fixed_subtree(const Instance& instance, const FixedOrderThresholds& s, std::size_t round,
                         const Rational& best) {
  if (round == s.sigma.size() || s.thresholds[round].halts_at(best)) return PolicyNode::halt();
  PolicyNode node;
  node.open = s.sigma[round];
  for (const auto& a : instance.box(s.sigma[round]).atoms()) {
    node.children.push_back({a.value, fixed_subtree(instance, s, round + 1, std::max(best, a.value))});
  }
  return node;
}

}  // namespace

Rational eval_policy(const Instance& instance, const PolicyNode& tree) {
  BoxSet opened;
  return eval_node(instance, tree, opened, 0, 0);
}

PolicyNode policy_from_fixed_order(const Instance& instance, const FixedOrderThresholds& strategy) {
  validate_order(strategy.sigma, instance.size(), true);
  if (strategy.thresholds.size() != strategy.sigma.size()) {
    throw DomainError("need one threshold per round");
  }
  return fixed_subtree(instance, strategy, 0, 0);
}

PolicyNode policy_from_impulsive(const Instance& instance, const ImpulsiveStrategy& strategy) {
  validate_order(strategy.order, instance.size(), false);
  PolicyNode root;
  PolicyNode* cur = &root;
  for (int b : strategy.order) {
    cur->open = b;
    for (const auto& a : instance.box(b).atoms()) cur->children.push_back({a.value, PolicyNode{}});
    // Only the zero branch continues.
    if (cur->children.front().first != 0) break;
    cur = &cur->children.front().second;
  }
  return root;
}

}  // namespace pandora
