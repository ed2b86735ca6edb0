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

// Exhaustive cost-class validators and certificate checks.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pandora/cost.hpp"

namespace pandora {

enum class CostClass {
  kMonotoneNormalized,
  kSubmodular,
  kSubadditive,
  kMatroidRank,
  kGrossSubstitutes,
  kCoverage,
  kXos,
  kBudgetAdditive,
};

std::string to_string(CostClass c);
CostClass parse_cost_class(const std::string& name);

/// Outcome of a validator. On failure `sets` and `boxes` hold the violating
/// tuple; `detail` names the broken condition with the offending values.
struct ValidationResult {
  bool pass = true;
  CostClass cost_class = CostClass::kMonotoneNormalized;
  std::vector<BoxSet> sets;
  std::vector<int> boxes;
  std::string detail;

  explicit operator bool() const { return pass; }
};

/// Default exhaustive bounds; PANDORA_MAX_N replaces them.
inline constexpr int kExhaustiveBound = 14;
inline constexpr int kGrossSubstitutesBound = 10;

/// Exhaustive check of `c` against `cls`.
///
/// Coverage and XOS are certificate classes: they pass only for oracles that
/// carry a certificate (CoverageCost, XosCost) and the certificate is checked
/// against every subset. Budget-additive runs the bounded representation search.
ValidationResult validate_class(const CostOracle& c, CostClass cls);

/// c(S) == sum of weights of elements whose cover meets S, for every S.
ValidationResult check_coverage_certificate(const CostOracle& c,
                                            const std::vector<Rational>& weights,
                                            const std::vector<BoxSet>& covers);

/// c(S) == max over clauses of the clause sum on S, for every S; clauses
/// must be non-negative.
ValidationResult check_xos_certificate(const CostOracle& c,
                                       const std::vector<std::vector<Rational>>& clauses);

/// A budget-additive representation (a, B); an empty budget means B = +inf.
struct BudgetAdditiveFit {
  std::vector<Rational> per_box;
  std::optional<Rational> budget;
};

/// Singleton costs force a_i = c({i}); B ranges over the distinct table values
/// and +inf. Returns the first representation that reproduces every subset.
std::optional<BudgetAdditiveFit> fit_budget_additive(const CostOracle& c);

/// The lift of a monotone normalized f over boxes 0..n-1 to boxes 0..n, where
/// new box 0 is prepended and old box k becomes k+1:
///   g(S) = n f(X) 1{S != {}} + f(S \ {0}).
/// Returned with its explicit XOS certificate (one clause per subset of X).
std::shared_ptr<XosCost> xos_lift(const CostOracle& f);

}  // namespace pandora
