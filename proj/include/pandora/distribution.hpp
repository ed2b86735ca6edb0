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

#include <optional>
#include <vector>

#include "pandora/rational.hpp"

namespace pandora {

struct Atom {
  Rational value;
  Rational prob;

  bool operator==(const Atom& other) const = default;
};

/// A box that holds v with probability p and 0 otherwise; v > 0, p in (0, 1].
struct WeightedBernoulli {
  Rational value;
  Rational prob;

  Rational q() const { return 1 - prob; }
};

/// Finite-support law over non-negative rationals. Atoms are kept sorted by
/// value with duplicates merged; probabilities are positive and sum to 1.
class FiniteDistribution {
 public:
  explicit FiniteDistribution(std::vector<Atom> atoms);

  static FiniteDistribution point(const Rational& v);
  /// v w.p. p, 0 otherwise.
  static FiniteDistribution bernoulli(const Rational& v, const Rational& p);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

  Rational mean() const;
  Rational max_value() const { return atoms_.back().value; }
  /// E[(V - x)^+].
  Rational tail(const Rational& x) const;
  /// P(V <= x).
  Rational cdf(const Rational& x) const;

  /// Always zero. Such a box can be skipped without loss.
  bool is_degenerate() const { return atoms_.size() == 1 && atoms_[0].value == 0; }

  /// Support is {v} or {0, v} with v > 0.
  std::optional<WeightedBernoulli> as_bernoulli() const;

  bool operator==(const FiniteDistribution& other) const { return atoms_ == other.atoms_; }

 private:
  std::vector<Atom> atoms_;
};

/// Law of max(X, Y) for independent X, Y.
FiniteDistribution max_of(const FiniteDistribution& x, const FiniteDistribution& y);

/// Law of a*X + b for a >= 0.
FiniteDistribution affine(const FiniteDistribution& x, const Rational& a, const Rational& b);

/// Law of X * B where B ~ Bernoulli(p) is independent of X.
FiniteDistribution thin(const FiniteDistribution& x, const Rational& p);

}  // namespace pandora
