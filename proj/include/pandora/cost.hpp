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

// Cost oracles: set functions c: 2^[n] -> Q>=0 answered one query at a time.
//
// Every oracle is immutable after construction and may be evaluated from
// several threads at once. Box indices are 0-based.

#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pandora/box_set.hpp"
#include "pandora/rational.hpp"

namespace pandora {

class CostOracle {
 public:
  virtual ~CostOracle() = default;

  int arity() const { return arity_; }

  /// c(S). Throws DomainError when S mentions a box >= arity().
  Rational eval(const BoxSet& s) const;

  /// Short family tag used by the JSON schema ("explicit", "coverage", ...).
  virtual std::string kind() const = 0;

 protected:
  explicit CostOracle(int arity);
  virtual Rational evaluate(const BoxSet& s) const = 0;

 private:
  int arity_;
};

using CostPtr = std::shared_ptr<const CostOracle>;

/// Full table indexed by bitmask. Rejects non-normalized or non-monotone
/// tables at construction.
class ExplicitCost final : public CostOracle {
 public:
  ExplicitCost(int arity, std::vector<Rational> table);

  std::string kind() const override { return "explicit"; }
  const std::vector<Rational>& table() const { return table_; }

 protected:
  Rational evaluate(const BoxSet& s) const override;

 private:
  std::vector<Rational> table_;
};

class AdditiveCost final : public CostOracle {
 public:
  explicit AdditiveCost(std::vector<Rational> per_box);

  std::string kind() const override { return "additive"; }
  const std::vector<Rational>& per_box() const { return per_box_; }

 protected:
  Rational evaluate(const BoxSet& s) const override;

 private:
  std::vector<Rational> per_box_;
};

/// min(B, sum of a_i over S).
class BudgetAdditiveCost final : public CostOracle {
 public:
  BudgetAdditiveCost(std::vector<Rational> per_box, Rational budget);

  std::string kind() const override { return "budget_additive"; }
  const std::vector<Rational>& per_box() const { return per_box_; }
  const Rational& budget() const { return budget_; }

 protected:
  Rational evaluate(const BoxSet& s) const override;

 private:
  std::vector<Rational> per_box_;
  Rational budget_;
};

/// Weighted coverage: element e contributes w(e) once S touches covers(e).
class CoverageCost final : public CostOracle {
 public:
  CoverageCost(int arity, std::vector<Rational> weights, std::vector<BoxSet> covers);

  std::string kind() const override { return "coverage"; }
  const std::vector<Rational>& weights() const { return weights_; }
  const std::vector<BoxSet>& covers() const { return covers_; }

 protected:
  Rational evaluate(const BoxSet& s) const override;

 private:
  std::vector<Rational> weights_;
  std::vector<BoxSet> covers_;
};

/// Max over a list of non-negative additive clauses. The clause list is the
/// XOS certificate; recognition from a bare table is never attempted.
class XosCost final : public CostOracle {
 public:
  XosCost(int arity, std::vector<std::vector<Rational>> clauses);

  std::string kind() const override { return "xos"; }
  const std::vector<std::vector<Rational>>& clauses() const { return clauses_; }

  /// Value of clause `t` on S.
  Rational clause_value(std::size_t t, const BoxSet& s) const;

 protected:
  Rational evaluate(const BoxSet& s) const override;

 private:
  std::vector<std::vector<Rational>> clauses_;
};

/// Precedence-tree cost: node 0 is an auxiliary zero-cost root and node k
/// (k >= 1) is box k-1. c(S) sums node costs over the root-connected closure.
class TreeClosureCost final : public CostOracle {
 public:
  /// parent[0] must be -1; for k >= 1 parent[k] is a node index in [0, n].
  TreeClosureCost(std::vector<int> parent, std::vector<Rational> node_costs);

  std::string kind() const override { return "tree"; }
  const std::vector<int>& parent() const { return parent_; }
  const std::vector<Rational>& node_costs() const { return node_costs_; }

  /// Union of root-to-node paths, in node labels (always contains 0).
  BoxSet closure(const BoxSet& nodes) const;

 protected:
  Rational evaluate(const BoxSet& s) const override;

 private:
  std::vector<int> parent_;
  std::vector<Rational> node_costs_;
};

/// min(|S|, alpha) for the baseline, or min(|S|, alpha, beta + |S \ R|) when
/// a planted set R with |R| = alpha is present.
class HardnessCost final : public CostOracle {
 public:
  HardnessCost(int arity, int alpha, int beta, std::optional<BoxSet> planted = std::nullopt);

  std::string kind() const override { return "hardness"; }
  int alpha() const { return alpha_; }
  int beta() const { return beta_; }
  const std::optional<BoxSet>& planted() const { return planted_; }

 protected:
  Rational evaluate(const BoxSet& s) const override;

 private:
  int alpha_;
  int beta_;
  std::optional<BoxSet> planted_;
};

/// c(. | T): S -> c(S u T) - c(T) on the same ground set.
class MarginalCost final : public CostOracle {
 public:
  MarginalCost(CostPtr base, BoxSet conditioning);

  std::string kind() const override { return "marginal"; }
  const CostPtr& base() const { return base_; }
  const BoxSet& conditioning() const { return conditioning_; }

 protected:
  Rational evaluate(const BoxSet& s) const override;

 private:
  CostPtr base_;
  BoxSet conditioning_;
  Rational base_offset_;
};

/// c'(S) = c({owner[k] : k in S}). Covers both the lifted cost of the
/// Bernoulli transformation (many copies per box) and plain restriction to a
/// subset of boxes (injective owner map).
class ProjectedCost final : public CostOracle {
 public:
  ProjectedCost(CostPtr base, std::vector<int> owner);

  std::string kind() const override { return "projected"; }
  const CostPtr& base() const { return base_; }
  const std::vector<int>& owner() const { return owner_; }

  BoxSet project(const BoxSet& s) const;

 protected:
  Rational evaluate(const BoxSet& s) const override;

 private:
  CostPtr base_;
  std::vector<int> owner_;
};

/// Forwards every query to `inner` and tallies it. The tally is atomic, so
/// counts stay exact under concurrent evaluation.
class QueryCountingOracle final : public CostOracle {
 public:
  explicit QueryCountingOracle(CostPtr inner);

  std::string kind() const override { return inner_->kind(); }
  const CostPtr& inner() const { return inner_; }
  std::uint64_t count() const { return counter_.load(std::memory_order_relaxed); }

 protected:
  Rational evaluate(const BoxSet& s) const override;

 private:
  CostPtr inner_;
  mutable std::atomic<std::uint64_t> counter_{0};
};

std::shared_ptr<QueryCountingOracle> with_counter(CostPtr oracle);

/// c(S u T) - c(T) for disjoint S and T.
Rational marginal_cost(const CostOracle& oracle, const BoxSet& s, const BoxSet& t);

/// Evaluates the oracle on all 2^n subsets. Index = bitmask.
struct CostTable {
  int arity = 0;
  std::vector<Rational> values;

  const Rational& operator[](std::uint64_t mask) const { return values[mask]; }
  Rational marginal(int box, std::uint64_t mask) const {
    return values[mask | (std::uint64_t{1} << box)] - values[mask];
  }
};

CostTable tabulate(const CostOracle& oracle, int max_arity = 24);

/// Size bound for exhaustive routines; PANDORA_MAX_N overrides the default.
int enumeration_bound(int default_bound);

}  // namespace pandora
