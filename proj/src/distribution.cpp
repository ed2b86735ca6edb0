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

#include "pandora/distribution.hpp"

#include <algorithm>
#include <map>

namespace pandora {

FiniteDistribution::FiniteDistribution(std::vector<Atom> atoms) {
  if (atoms.empty()) throw DomainError("distribution needs at least one atom");
  std::map<Rational, Rational> merged;
  Rational total = 0;
  for (auto& a : atoms) {
    a.value.canonicalize();
    a.prob.canonicalize();
    if (a.value < 0) throw DomainError("atom value " + to_string(a.value) + " is negative");
    if (a.prob < 0) throw DomainError("atom probability " + to_string(a.prob) + " is negative");
    total += a.prob;
    if (a.prob == 0) continue;
    merged[a.value] += a.prob;
  }
  if (total != 1) throw DomainError("atom probabilities sum to " + to_string(total) + ", not 1");
  atoms_.reserve(merged.size());
  for (auto& [v, p] : merged) atoms_.push_back({v, p});
}

FiniteDistribution FiniteDistribution::point(const Rational& v) {
  return FiniteDistribution({{v, Rational(1)}});
}

FiniteDistribution FiniteDistribution::bernoulli(const Rational& v, const Rational& p) {
  if (p < 0 || p > 1) throw DomainError("Bernoulli probability outside [0, 1]");
  return FiniteDistribution({{Rational(0), 1 - p}, {v, p}});
}

Rational FiniteDistribution::mean() const {
  Rational m = 0;
  for (const auto& a : atoms_) m += a.value * a.prob;
  return m;
}

Rational FiniteDistribution::tail(const Rational& x) const {
  Rational t = 0;
  for (const auto& a : atoms_) {
    if (a.value > x) t += (a.value - x) * a.prob;
  }
  return t;
}

Rational FiniteDistribution::cdf(const Rational& x) const {
  Rational c = 0;
  for (const auto& a : atoms_) {
    if (a.value <= x) c += a.prob;
  }
  return c;
}

std::optional<WeightedBernoulli> FiniteDistribution::as_bernoulli() const {
  if (atoms_.size() == 1 && atoms_[0].value > 0) return WeightedBernoulli{atoms_[0].value, 1};
  if (atoms_.size() == 2 && atoms_[0].value == 0) {
    return WeightedBernoulli{atoms_[1].value, atoms_[1].prob};
  }
  return std::nullopt;
}

FiniteDistribution max_of(const FiniteDistribution& x, const FiniteDistribution& y) {
  std::vector<Atom> out;
  out.reserve(x.size() * y.size());
  for (const auto& a : x.atoms()) {
    for (const auto& b : y.atoms()) out.push_back({std::max(a.value, b.value), a.prob * b.prob});
  }
  return FiniteDistribution(std::move(out));
}

FiniteDistribution affine(const FiniteDistribution& x, const Rational& a, const Rational& b) {
  if (a < 0) throw DomainError("affine map needs a non-negative slope");
  std::vector<Atom> out;
  for (const auto& atom : x.atoms()) out.push_back({a * atom.value + b, atom.prob});
  return FiniteDistribution(std::move(out));
}

FiniteDistribution thin(const FiniteDistribution& x, const Rational& p) {
  if (p < 0 || p > 1) throw DomainError("thinning probability outside [0, 1]");
  std::vector<Atom> out{{Rational(0), 1 - p}};
  for (const auto& atom : x.atoms()) out.push_back({atom.value, atom.prob * p});
  return FiniteDistribution(std::move(out));
}

}  // namespace pandora
