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

#include "pandora/cost.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace pandora {

CostOracle::CostOracle(int arity) : arity_(arity) {
  if (arity < 0) throw DomainError("negative arity");
}

Rational CostOracle::eval(const BoxSet& s) const {
  if (s.bound() > arity_) {
    throw DomainError("box index " + std::to_string(s.bound() - 1) +
                      " out of range for arity " + std::to_string(arity_));
  }
  return evaluate(s);
}

// ---------------------------------------------------------------------------

ExplicitCost::ExplicitCost(int arity, std::vector<Rational> table)
    : CostOracle(arity), table_(std::move(table)) {
  if (arity > 24) throw CapabilityError("explicit tables are limited to 24 boxes");
  const std::uint64_t size = std::uint64_t{1} << arity;
  if (table_.size() != size) {
    throw DomainError("explicit table needs " + std::to_string(size) + " entries, got " +
                      std::to_string(table_.size()));
  }
  if (table_[0] != 0) throw DomainError("explicit table is not normalized: c({}) != 0");
  for (std::uint64_t mask = 1; mask < size; ++mask) {
    for (int b = 0; b < arity; ++b) {
      if (!((mask >> b) & 1U)) continue;
      if (table_[mask ^ (std::uint64_t{1} << b)] > table_[mask]) {
        throw DomainError("explicit table is not monotone at {" +
                          BoxSet::from_mask(mask).key() + "} minus box " + std::to_string(b));
      }
    }
  }
}

Rational ExplicitCost::evaluate(const BoxSet& s) const { return table_[s.to_mask()]; }

// ---------------------------------------------------------------------------

AdditiveCost::AdditiveCost(std::vector<Rational> per_box)
    : CostOracle(static_cast<int>(per_box.size())), per_box_(std::move(per_box)) {
  for (const auto& c : per_box_) {
    if (c < 0) throw DomainError("additive cost entries must be non-negative");
  }
}

Rational AdditiveCost::evaluate(const BoxSet& s) const {
  Rational total = 0;
  for (int b : s.elements()) total += per_box_[b];
  return total;
}

BudgetAdditiveCost::BudgetAdditiveCost(std::vector<Rational> per_box, Rational budget)
    : CostOracle(static_cast<int>(per_box.size())),
      per_box_(std::move(per_box)),
      budget_(std::move(budget)) {
  if (budget_ < 0) throw DomainError("budget must be non-negative");
  for (const auto& c : per_box_) {
    if (c < 0) throw DomainError("budget-additive entries must be non-negative");
  }
}

Rational BudgetAdditiveCost::evaluate(const BoxSet& s) const {
  Rational total = 0;
  for (int b : s.elements()) total += per_box_[b];
  return std::min(total, budget_);
}

// ---------------------------------------------------------------------------

CoverageCost::CoverageCost(int arity, std::vector<Rational> weights, std::vector<BoxSet> covers)
    : CostOracle(arity), weights_(std::move(weights)), covers_(std::move(covers)) {
  if (weights_.size() != covers_.size()) {
    throw DomainError("coverage needs one cover set per weighted element");
  }
  for (std::size_t e = 0; e < weights_.size(); ++e) {
    if (weights_[e] < 0) throw DomainError("coverage weights must be non-negative");
    if (covers_[e].bound() > arity) throw DomainError("coverage cover set out of range");
  }
}

Rational CoverageCost::evaluate(const BoxSet& s) const {
  Rational total = 0;
  for (std::size_t e = 0; e < weights_.size(); ++e) {
    if (s.intersects(covers_[e])) total += weights_[e];
  }
  return total;
}

// ---------------------------------------------------------------------------

XosCost::XosCost(int arity, std::vector<std::vector<Rational>> clauses)
    : CostOracle(arity), clauses_(std::move(clauses)) {
  for (const auto& clause : clauses_) {
    if (static_cast<int>(clause.size()) != arity) {
      throw DomainError("every XOS clause must have one entry per box");
    }
    for (const auto& a : clause) {
      if (a < 0) throw DomainError("XOS clauses must be non-negative");
    }
  }
}

Rational XosCost::clause_value(std::size_t t, const BoxSet& s) const {
  Rational total = 0;
  for (int b : s.elements()) total += clauses_[t][b];
  return total;
}

Rational XosCost::evaluate(const BoxSet& s) const {
  Rational best = 0;
  for (std::size_t t = 0; t < clauses_.size(); ++t) best = std::max(best, clause_value(t, s));
  return best;
}

// ---------------------------------------------------------------------------

TreeClosureCost::TreeClosureCost(std::vector<int> parent, std::vector<Rational> node_costs)
    : CostOracle(static_cast<int>(parent.size()) - 1),
      parent_(std::move(parent)),
      node_costs_(std::move(node_costs)) {
  const int nodes = static_cast<int>(parent_.size());
  if (nodes < 1 || parent_[0] != -1) throw DomainError("tree needs root node 0 with parent -1");
  if (static_cast<int>(node_costs_.size()) != nodes) {
    throw DomainError("tree needs one cost per node");
  }
  if (node_costs_[0] != 0) throw DomainError("tree root must have cost 0");
  for (int k = 1; k < nodes; ++k) {
    if (parent_[k] < 0 || parent_[k] >= nodes) throw DomainError("tree parent out of range");
    if (node_costs_[k] < 0) throw DomainError("tree node costs must be non-negative");
  }
  // Every node must reach the root within `nodes` steps, otherwise there is a cycle.
  for (int k = 1; k < nodes; ++k) {
    int cur = k;
    int steps = 0;
    while (cur != 0) {
      cur = parent_[cur];
      if (++steps > nodes) throw DomainError("tree parent map contains a cycle");
    }
  }
}

BoxSet TreeClosureCost::closure(const BoxSet& nodes) const {
  const int count = static_cast<int>(parent_.size());
  if (nodes.bound() > count) throw DomainError("closure: node not in tree");
  BoxSet out{0};
  for (int k : nodes.elements()) {
    for (int cur = k; cur != 0 && !out.contains(cur); cur = parent_[cur]) out.insert(cur);
  }
  return out;
}

Rational TreeClosureCost::evaluate(const BoxSet& s) const {
  BoxSet nodes;
  for (int b : s.elements()) nodes.insert(b + 1);
  Rational total = 0;
  for (int k : closure(nodes).elements()) total += node_costs_[k];
  return total;
}

// ---------------------------------------------------------------------------

HardnessCost::HardnessCost(int arity, int alpha, int beta, std::optional<BoxSet> planted)
    : CostOracle(arity), alpha_(alpha), beta_(beta), planted_(std::move(planted)) {
  if (alpha < 1 || beta < 0) throw DomainError("hardness cost needs alpha >= 1 and beta >= 0");
  if (beta >= alpha) throw DomainError("hardness cost needs beta < alpha");
  if (alpha > arity) throw DomainError("hardness cost needs alpha <= n");
  if (planted_) {
    if (planted_->size() != alpha) throw DomainError("planted set must have exactly alpha boxes");
    if (planted_->bound() > arity) throw DomainError("planted set out of range");
  }
}

Rational HardnessCost::evaluate(const BoxSet& s) const {
  long value = std::min(s.size(), alpha_);
  if (planted_) {
    long outside = (s - *planted_).size();
    value = std::min(value, beta_ + outside);
  }
  return Rational(value);
}

// ---------------------------------------------------------------------------

MarginalCost::MarginalCost(CostPtr base, BoxSet conditioning)
    : CostOracle(base->arity()), base_(std::move(base)), conditioning_(std::move(conditioning)) {
  base_offset_ = base_->eval(conditioning_);
}

Rational MarginalCost::evaluate(const BoxSet& s) const {
  return base_->eval(s | conditioning_) - base_offset_;
}

ProjectedCost::ProjectedCost(CostPtr base, std::vector<int> owner)
    : CostOracle(static_cast<int>(owner.size())), base_(std::move(base)), owner_(std::move(owner)) {
  for (int o : owner_) {
    if (o < 0 || o >= base_->arity()) throw DomainError("projection owner out of range");
  }
}

BoxSet ProjectedCost::project(const BoxSet& s) const {
  BoxSet out;
  for (int k : s.elements()) out.insert(owner_[k]);
  return out;
}

Rational ProjectedCost::evaluate(const BoxSet& s) const { return base_->eval(project(s)); }

QueryCountingOracle::QueryCountingOracle(CostPtr inner)
    : CostOracle(inner->arity()), inner_(std::move(inner)) {}

Rational QueryCountingOracle::evaluate(const BoxSet& s) const {
  counter_.fetch_add(1, std::memory_order_relaxed);
  return inner_->eval(s);
}

std::shared_ptr<QueryCountingOracle> with_counter(CostPtr oracle) {
  return std::make_shared<QueryCountingOracle>(std::move(oracle));
}

Rational marginal_cost(const CostOracle& oracle, const BoxSet& s, const BoxSet& t) {
  if (s.intersects(t)) throw DomainError("marginal_cost needs disjoint S and T");
  return oracle.eval(s | t) - oracle.eval(t);
}

CostTable tabulate(const CostOracle& oracle, int max_arity) {
  const int n = oracle.arity();
  if (n > max_arity || n > 30) {
    throw CapabilityError("cannot tabulate a cost over " + std::to_string(n) +
                          " boxes (limit " + std::to_string(std::min(max_arity, 30)) + ")");
  }
  CostTable table;
  table.arity = n;
  const std::uint64_t size = std::uint64_t{1} << n;
  table.values.reserve(size);
  for (std::uint64_t mask = 0; mask < size; ++mask) {
    table.values.push_back(oracle.eval(BoxSet::from_mask(mask)));
  }
  return table;
}

int enumeration_bound(int default_bound) {
  if (const char* env = std::getenv("PANDORA_MAX_N"); env != nullptr && *env != '\0') {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      return default_bound;
    }
  }
  return default_bound;
}

}  // namespace pandora
