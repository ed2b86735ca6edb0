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

#include "pandora/cost_classes.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace pandora {
namespace {

using Mask = std::uint64_t;

std::string braces(Mask m) { return "{" + BoxSet::from_mask(m).key() + "}"; }

Mask bit(int b) { return Mask{1} << b; }

void require_bound(const CostOracle& c, int bound, const std::string& what) {
  if (c.arity() > bound) {
    throw CapabilityError(what + " check is exhaustive and limited to n <= " +
                          std::to_string(bound) + " (got n = " + std::to_string(c.arity()) +
                          "); set PANDORA_MAX_N to override");
  }
}

ValidationResult fail(CostClass cls, std::vector<BoxSet> sets, std::vector<int> boxes,
                      std::string detail) {
  ValidationResult r;
  r.pass = false;
  r.cost_class = cls;
  r.sets = std::move(sets);
  r.boxes = std::move(boxes);
  r.detail = std::move(detail);
  return r;
}

ValidationResult ok(CostClass cls) {
  ValidationResult r;
  r.cost_class = cls;
  return r;
}

ValidationResult check_monotone(const CostTable& t, CostClass cls) {
  if (t[0] != 0) return fail(cls, {BoxSet{}}, {}, "c({}) = " + to_string(t[0]) + " != 0");
  const Mask size = Mask{1} << t.arity;
  for (Mask s = 0; s < size; ++s) {
    for (int x = 0; x < t.arity; ++x) {
      if (s & bit(x)) continue;
      if (t.marginal(x, s) < 0) {
        return fail(cls, {BoxSet::from_mask(s), BoxSet::from_mask(s | bit(x))}, {x},
                    "c(" + braces(s) + ") = " + to_string(t[s]) + " > c(" +
                        braces(s | bit(x)) + ") = " + to_string(t[s | bit(x)]));
      }
    }
  }
  return ok(cls);
}

// Diminishing marginals between S and S + y imply the general A <= B form by
// chaining single-element steps, so the local check is exhaustive.
ValidationResult check_submodular(const CostTable& t, CostClass cls) {
  const Mask size = Mask{1} << t.arity;
  for (Mask s = 0; s < size; ++s) {
    for (int x = 0; x < t.arity; ++x) {
      if (s & bit(x)) continue;
      const Rational base = t.marginal(x, s);
      for (int y = 0; y < t.arity; ++y) {
        if (y == x || (s & bit(y))) continue;
        const Rational larger = t.marginal(x, s | bit(y));
        if (larger > base) {
          return fail(cls, {BoxSet::from_mask(s), BoxSet::from_mask(s | bit(y))}, {x},
                      "c(" + std::to_string(x) + " | " + braces(s | bit(y)) + ") = " +
                          to_string(larger) + " > c(" + std::to_string(x) + " | " + braces(s) +
                          ") = " + to_string(base));
        }
      }
    }
  }
  return ok(cls);
}

// Disjoint pairs suffice: c(A u B) <= c(A \ B) + c(B) <= c(A) + c(B) by monotonicity.
ValidationResult check_subadditive(const CostTable& t, CostClass cls) {
  const Mask size = Mask{1} << t.arity;
  for (Mask u = 1; u < size; ++u) {
    for (Mask b = u;; b = (b - 1) & u) {
      const Mask a = u ^ b;
      if (t[u] > t[a] + t[b]) {
        return fail(cls, {BoxSet::from_mask(a), BoxSet::from_mask(b)}, {},
                    "c(" + braces(u) + ") = " + to_string(t[u]) + " > c(" + braces(a) +
                        ") + c(" + braces(b) + ") = " + to_string(t[a] + t[b]));
      }
      if (b == 0) break;
    }
  }
  return ok(cls);
}

ValidationResult check_matroid_rank(const CostTable& t, CostClass cls) {
  const Mask size = Mask{1} << t.arity;
  for (Mask u = 0; u < size; ++u) {
    if (t[u].get_den() != 1) {
      return fail(cls, {BoxSet::from_mask(u)}, {},
                  "r(" + braces(u) + ") = " + to_string(t[u]) + " is not an integer");
    }
    if (t[u] > std::popcount(u)) {
      return fail(cls, {BoxSet::from_mask(u)}, {},
                  "r(" + braces(u) + ") = " + to_string(t[u]) + " exceeds |U|");
    }
  }
  if (auto r = check_monotone(t, cls); !r) return r;
  return check_submodular(t, cls);
}

ValidationResult check_gross_substitutes(const CostTable& t, CostClass cls) {
  if (auto r = check_submodular(t, cls); !r) return r;
  const Mask size = Mask{1} << t.arity;
  auto m = [&](Mask add, Mask s) { return t[s | add] - t[s]; };
  for (Mask s = 0; s < size; ++s) {
    for (int i = 0; i < t.arity; ++i) {
      if (s & bit(i)) continue;
      for (int j = i + 1; j < t.arity; ++j) {
        if (s & bit(j)) continue;
        for (int k = j + 1; k < t.arity; ++k) {
          if (s & bit(k)) continue;
          Rational v[3] = {m(bit(i) | bit(j), s) + m(bit(k), s),
                           m(bit(i), s) + m(bit(j) | bit(k), s),
                           m(bit(j), s) + m(bit(i) | bit(k), s)};
          Rational top = std::max({v[0], v[1], v[2]});
          int hits = static_cast<int>(std::count(std::begin(v), std::end(v), top));
          if (hits == 1) {
            return fail(cls, {BoxSet::from_mask(s)}, {i, j, k},
                        "unique max in {" + to_string(v[0]) + ", " + to_string(v[1]) + ", " +
                            to_string(v[2]) + "} at S = " + braces(s));
          }
        }
      }
    }
  }
  return ok(cls);
}

ValidationResult check_budget_additive(const CostOracle& c, CostClass cls) {
  if (fit_budget_additive(c)) return ok(cls);
  return fail(cls, {}, {},
              "no (a, B) with a_i = c({i}) and B in the table values or +inf reproduces c");
}

}  // namespace

std::string to_string(CostClass c) {
  switch (c) {
    case CostClass::kMonotoneNormalized: return "monotone_normalized";
    case CostClass::kSubmodular: return "submodular";
    case CostClass::kSubadditive: return "subadditive";
    case CostClass::kMatroidRank: return "matroid_rank";
    case CostClass::kGrossSubstitutes: return "gross_substitutes";
    case CostClass::kCoverage: return "coverage";
    case CostClass::kXos: return "xos";
    case CostClass::kBudgetAdditive: return "budget_additive";
  }
  return "unknown";
}

CostClass parse_cost_class(const std::string& name) {
  for (auto c : {CostClass::kMonotoneNormalized, CostClass::kSubmodular, CostClass::kSubadditive,
                 CostClass::kMatroidRank, CostClass::kGrossSubstitutes, CostClass::kCoverage,
                 CostClass::kXos, CostClass::kBudgetAdditive}) {
    if (to_string(c) == name) return c;
  }
  if (name == "mrf") return CostClass::kMatroidRank;
  if (name == "gs") return CostClass::kGrossSubstitutes;
  throw DomainError("unknown cost class '" + name + "'");
}

ValidationResult validate_class(const CostOracle& c, CostClass cls) {
  const int bound = cls == CostClass::kGrossSubstitutes
                        ? enumeration_bound(kGrossSubstitutesBound)
                        : enumeration_bound(kExhaustiveBound);
  require_bound(c, bound, to_string(cls));
  const CostOracle* inner = &c;
  while (auto counted = dynamic_cast<const QueryCountingOracle*>(inner)) {
    inner = counted->inner().get();
  }
  switch (cls) {
    case CostClass::kCoverage:
      if (auto cov = dynamic_cast<const CoverageCost*>(inner)) {
        return check_coverage_certificate(c, cov->weights(), cov->covers());
      }
      return fail(cls, {}, {}, "no coverage certificate attached to a '" + c.kind() + "' oracle");
    case CostClass::kXos:
      if (auto xos = dynamic_cast<const XosCost*>(inner)) {
        return check_xos_certificate(c, xos->clauses());
      }
      return fail(cls, {}, {}, "no XOS certificate attached to a '" + c.kind() + "' oracle");
    case CostClass::kBudgetAdditive:
      return check_budget_additive(c, cls);
    default:
      break;
  }
  const CostTable t = tabulate(c, bound);
  switch (cls) {
    case CostClass::kMonotoneNormalized: return check_monotone(t, cls);
    case CostClass::kSubmodular: return check_submodular(t, cls);
    case CostClass::kSubadditive: return check_subadditive(t, cls);
    case CostClass::kMatroidRank: return check_matroid_rank(t, cls);
    case CostClass::kGrossSubstitutes: return check_gross_substitutes(t, cls);
    default: break;
  }
  throw DomainError("unhandled cost class");
}

ValidationResult check_coverage_certificate(const CostOracle& c,
                                            const std::vector<Rational>& weights,
                                            const std::vector<BoxSet>& covers) {
  constexpr auto cls = CostClass::kCoverage;
  if (weights.size() != covers.size()) {
    return fail(cls, {}, {}, "certificate has mismatched weights and covers");
  }
  for (std::size_t e = 0; e < weights.size(); ++e) {
    if (weights[e] < 0) return fail(cls, {}, {}, "negative coverage weight");
    if (covers[e].bound() > c.arity()) return fail(cls, {covers[e]}, {}, "cover out of range");
  }
  require_bound(c, enumeration_bound(kExhaustiveBound), "coverage certificate");
  const Mask size = Mask{1} << c.arity();
  for (Mask m = 0; m < size; ++m) {
    BoxSet s = BoxSet::from_mask(m);
    Rational expect = 0;
    for (std::size_t e = 0; e < weights.size(); ++e) {
      if (s.intersects(covers[e])) expect += weights[e];
    }
    Rational got = c.eval(s);
    if (got != expect) {
      return fail(cls, {s}, {},
                  "c(" + braces(m) + ") = " + to_string(got) + " but certificate gives " +
                      to_string(expect));
    }
  }
  return ok(cls);
}

ValidationResult check_xos_certificate(const CostOracle& c,
                                       const std::vector<std::vector<Rational>>& clauses) {
  constexpr auto cls = CostClass::kXos;
  for (const auto& clause : clauses) {
    if (static_cast<int>(clause.size()) != c.arity()) {
      return fail(cls, {}, {}, "clause length differs from arity");
    }
    for (const auto& a : clause) {
      if (a < 0) return fail(cls, {}, {}, "negative clause entry");
    }
  }
  require_bound(c, enumeration_bound(kExhaustiveBound), "XOS certificate");
  const Mask size = Mask{1} << c.arity();
  for (Mask m = 0; m < size; ++m) {
    Rational expect = 0;
    for (const auto& clause : clauses) {
      Rational sum = 0;
      for (Mask w = m; w; w &= w - 1) sum += clause[std::countr_zero(w)];
      expect = std::max(expect, sum);
    }
    Rational got = c.eval(BoxSet::from_mask(m));
    if (got != expect) {
      return fail(cls, {BoxSet::from_mask(m)}, {},
                  "c(" + braces(m) + ") = " + to_string(got) + " but clauses give " +
                      to_string(expect));
    }
  }
  return ok(cls);
}

std::optional<BudgetAdditiveFit> fit_budget_additive(const CostOracle& c) {
  const int bound = enumeration_bound(kExhaustiveBound);
  require_bound(c, bound, "budget-additive");
  const CostTable t = tabulate(c, bound);
  std::vector<Rational> a(c.arity());
  for (int i = 0; i < c.arity(); ++i) a[i] = t[bit(i)];
  std::set<Rational> distinct(t.values.begin(), t.values.end());
  std::vector<std::optional<Rational>> budgets(distinct.begin(), distinct.end());
  budgets.push_back(std::nullopt);
  const Mask size = Mask{1} << c.arity();
  for (const auto& b : budgets) {
    bool good = true;
    for (Mask m = 0; m < size && good; ++m) {
      Rational sum = 0;
      for (Mask w = m; w; w &= w - 1) sum += a[std::countr_zero(w)];
      if (b && *b < sum) sum = *b;
      good = sum == t[m];
    }
    if (good) return BudgetAdditiveFit{a, b};
  }
  return std::nullopt;
}

std::shared_ptr<XosCost> xos_lift(const CostOracle& f) {
  const int n = f.arity();
  const CostTable t = tabulate(f, 20);
  if (auto r = check_monotone(t, CostClass::kMonotoneNormalized); !r) {
    throw DomainError("xos_lift needs a monotone normalized f: " + r.detail);
  }
  const Mask size = Mask{1} << n;
  const Rational top = Rational(n) * t[size - 1];
  std::vector<std::vector<Rational>> clauses;
  clauses.reserve(size);
  std::vector<Rational> empty_clause(n + 1, Rational(0));
  empty_clause[0] = top;
  clauses.push_back(std::move(empty_clause));
  for (Mask s = 1; s < size; ++s) {
    const Rational share = (top + t[s]) / std::popcount(s);
    std::vector<Rational> clause(n + 1, Rational(0));
    for (Mask w = s; w; w &= w - 1) clause[std::countr_zero(w) + 1] = share;
    clauses.push_back(std::move(clause));
  }
  return std::make_shared<XosCost>(n + 1, std::move(clauses));
}

}  // namespace pandora
