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

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pandora {

/// Exact rational scalar used for every cost, probability and utility.
using Rational = mpq_class;

/// Raised when an argument violates an operation's precondition.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an exhaustive routine is asked to run beyond its size bound.
class CapabilityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// num/den in lowest terms. mpq_class(num, den) alone does not reduce, and
/// unreduced values compare unequal to their reduced forms.
Rational ratio(long num, long den);

/// Parses "p/q", an integer, or a finite decimal such as "2.5" or "-0.125".
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form; integers print without a denominator.
std::string to_string(const Rational& value);

Rational positive_part(const Rational& value);

/// floor(value) as a rational with unit denominator.
Rational floor_rational(const Rational& value);

double to_double(const Rational& value);

/// Halting threshold of a fixed-order strategy: a rational or +infinity.
/// "Halt at round i iff best >= t_i", so infinity means "never halt here".
class Threshold {
 public:
  Threshold() = default;  // +infinity
  explicit Threshold(Rational value) : value_(std::move(value)) {}

  static Threshold infinity() { return Threshold(); }

  bool is_infinite() const { return !value_.has_value(); }
  const Rational& value() const;

  /// True when a running best of `best` stops the strategy.
  bool halts_at(const Rational& best) const {
    return value_.has_value() && best >= *value_;
  }

  bool operator==(const Threshold& other) const;

 private:
  std::optional<Rational> value_;
};

/// "inf" for infinity, otherwise the rational string.
std::string to_string(const Threshold& threshold);
Threshold parse_threshold(std::string_view text);

}  // namespace pandora
