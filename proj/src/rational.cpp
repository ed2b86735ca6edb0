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

#include "pandora/rational.hpp"

#include <cctype>

namespace pandora {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace

Rational ratio(long num, long den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational result;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash);
    std::string_view den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw DomainError("malformed rational: '" + std::string(text) + "'");
    }
    mpz_class d{std::string(den)};
    if (d == 0) throw DomainError("zero denominator: '" + std::string(text) + "'");
    result = Rational(mpz_class(std::string(num)), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view whole = body.substr(0, dot);
    std::string_view frac = body.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac)) {
      throw DomainError("malformed decimal: '" + std::string(text) + "'");
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class w(whole.empty() ? std::string("0") : std::string(whole));
    result = Rational(w * scale + mpz_class(std::string(frac)), scale);
  } else {
    if (!all_digits(body)) {
      throw DomainError("malformed rational: '" + std::string(text) + "'");
    }
    result = Rational(mpz_class(std::string(body)));
  }
  result.canonicalize();
  return negative ? Rational(-result) : result;
}

std::string to_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  return v.get_str();
}

Rational positive_part(const Rational& value) {
  return value > 0 ? value : Rational(0);
}

Rational floor_rational(const Rational& value) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return Rational(q);
}

double to_double(const Rational& value) { return value.get_d(); }

const Rational& Threshold::value() const {
  if (!value_) throw DomainError("infinite threshold has no finite value");
  return *value_;
}

bool Threshold::operator==(const Threshold& other) const {
  if (is_infinite() || other.is_infinite()) {
    return is_infinite() == other.is_infinite();
  }
  return *value_ == *other.value_;
}

std::string to_string(const Threshold& threshold) {
  return threshold.is_infinite() ? "inf" : to_string(threshold.value());
}

Threshold parse_threshold(std::string_view text) {
  if (text == "inf" || text == "+inf" || text == "infinity") {
    return Threshold::infinity();
  }
  return Threshold(parse_rational(text));
}

}  // namespace pandora
