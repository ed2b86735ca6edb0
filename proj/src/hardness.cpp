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

#include "pandora/hardness.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "pandora/cost.hpp"
#include "pandora/random.hpp"

namespace pandora {
namespace {

class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

// Directed-rounding enclosure of ln(n) * sqrt(n) / 5 (alpha) or ln(n)^2 / 5.
// Every operation is monotone in its inputs for n >= 3, so rounding every
// step down (up) yields a lower (upper) bound.
long certified_ceiling(long n, bool alpha) {
  for (mpfr_prec_t prec = 128; prec <= 8192; prec *= 2) {
    long ceilings[2];
    for (int side = 0; side < 2; ++side) {
      const mpfr_rnd_t rnd = side == 0 ? MPFR_RNDD : MPFR_RNDU;
      Mpfr x(prec), y(prec);
      mpfr_set_si(x.get(), n, MPFR_RNDN);
      mpfr_log(y.get(), x.get(), rnd);
      if (alpha) {
        mpfr_sqrt(x.get(), x.get(), rnd);
        mpfr_mul(y.get(), y.get(), x.get(), rnd);
      } else {
        mpfr_sqr(y.get(), y.get(), rnd);
      }
      mpfr_div_ui(y.get(), y.get(), 5, rnd);
      mpfr_ceil(y.get(), y.get());
      ceilings[side] = mpfr_get_si(y.get(), MPFR_RNDN);
    }
    if (ceilings[0] == ceilings[1]) return ceilings[0];
  }
  throw DomainError("could not certify hardness parameter ceiling for n = " + std::to_string(n));
}

struct Kahan {
  double sum = 0;
  double carry = 0;
  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

long cost_cap(const HardnessParams& params, long s, SymmetricVariant variant) {
  const long cap = variant == SymmetricVariant::kBaseline ? params.alpha : params.beta;
  return std::min(s, cap);
}

// Expected cost p * sum_{i<=k} i q^{i-1} + k q^k for k = 0..kmax.
std::vector<double> expected_costs(double p, long kmax) {
  std::vector<double> out(kmax + 1, 0.0);
  const double q = 1.0 - p;
  Kahan series;
  double qpow = 1.0;  // q^{i-1}
  for (long i = 1; i <= kmax; ++i) {
    series.add(p * static_cast<double>(i) * qpow);
    qpow *= q;
    out[i] = series.sum + static_cast<double>(i) * qpow;
  }
  return out;
}

double reward(const HardnessParams& params, long s) {
  // M (1 - q^s) with 1 - q^s = -expm1(s log1p(-p)).
  return params.m * -std::expm1(static_cast<double>(s) * std::log1p(-params.p));
}

Rational binomial(long n, long k) {
  if (k < 0 || k > n) return Rational(0);
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(b);
}

}  // namespace

HardnessParams hardness_params(long n) {
  if (n < 3) throw DomainError("hardness parameters need n >= 3");
  HardnessParams p;
  p.n = n;
  p.alpha = static_cast<int>(certified_ceiling(n, true));
  p.beta = static_cast<int>(certified_ceiling(n, false));
  p.m = 5 * p.beta;
  p.p = 1.0 / p.alpha;
  return p;
}

HardnessParams hardness_params_override(long n, int alpha, int beta) {
  if (alpha < 1 || beta < 0 || beta >= alpha) {
    throw DomainError("hardness overrides need 0 <= beta < alpha");
  }
  if (alpha > n) throw DomainError("hardness overrides need alpha <= n");
  HardnessParams p;
  p.n = n;
  p.alpha = alpha;
  p.beta = beta;
  p.m = 5 * beta;
  p.p = 1.0 / alpha;
  p.overridden = true;
  return p;
}

double symmetric_impulsive_utility(const HardnessParams& params, long s,
                                   SymmetricVariant variant) {
  if (s < 0 || s > params.n) throw DomainError("subset size outside [0, n]");
  const long k = cost_cap(params, s, variant);
  return reward(params, s) - expected_costs(params.p, k)[k];
}

Rational symmetric_impulsive_utility_exact(const HardnessParams& params, long s,
                                           SymmetricVariant variant) {
  if (s < 0 || s > params.n) throw DomainError("subset size outside [0, n]");
  const Rational p = ratio(1, params.alpha);
  const Rational q = 1 - p;
  const long k = cost_cap(params, s, variant);
  Rational qpow = 1;
  Rational cost = 0;
  for (long i = 1; i <= k; ++i) {
    cost += p * i * qpow;
    qpow *= q;
  }
  cost += Rational(k) * qpow;
  Rational qs = 1;
  for (long i = 0; i < s; ++i) qs *= q;
  return Rational(params.m) * (1 - qs) - cost;
}

CaseMargin case_margin(const HardnessParams& params, long s) {
  CaseMargin c;
  const double m = params.m;
  const double a = params.alpha;
  const double b = params.beta;
  if (s == 0) {
    c.proof_case = 4;
    c.bound = 0;
    c.bound_negative = false;
  } else if (s >= params.alpha) {
    c.proof_case = 1;
    c.bound = m - a / 4;
  } else if (s >= 21L * params.beta) {
    c.proof_case = 2;
    c.bound = m - static_cast<double>(s) / 4;
  } else {
    c.proof_case = 3;
    c.bound = static_cast<double>(s) / a * (26 * b - a);
  }
  if (s != 0) c.bound_negative = c.bound < 0;
  return c;
}

FamilyReport verify_family(const HardnessParams& params) {
  FamilyReport r;
  r.params = params;
  r.regime_reached = params.alpha > 26L * params.beta;
  const std::vector<double> costs = expected_costs(params.p, params.alpha);
  r.baseline_max = -std::numeric_limits<double>::infinity();
  for (long s = 1; s <= params.n; ++s) {
    const double u = reward(params, s) - costs[std::min<long>(s, params.alpha)];
    if (u > r.baseline_max) {
      r.baseline_max = u;
      r.baseline_argmax = s;
    }
    if (u > 0) r.positive_baseline_sizes.push_back(s);
    const CaseMargin c = case_margin(params, s);
    r.case_counts[c.proof_case]++;
    if (r.regime_reached && u > c.bound + 1e-9 * std::max(1.0, std::fabs(c.bound))) {
      r.bound_violations.push_back(s);
    }
  }
  r.case_counts[4] = 1;
  r.planted_utility =
      symmetric_impulsive_utility(params, params.alpha, SymmetricVariant::kPlantedSubset);
  r.planted_lower_bound = params.m * (1.0 - std::exp(-1.0)) - params.beta;

  const long exact_limit = std::min<long>(30, params.n);
  for (long s = 0; s <= exact_limit; ++s) {
    for (auto v : {SymmetricVariant::kBaseline, SymmetricVariant::kPlantedSubset}) {
      const double fast = symmetric_impulsive_utility(params, s, v);
      const double exact = to_double(symmetric_impulsive_utility_exact(params, s, v));
      r.exact_max_rel_error =
          std::max(r.exact_max_rel_error, std::fabs(fast - exact) / std::max(1.0, std::fabs(exact)));
      ++r.exact_checks;
    }
  }
  if (!r.regime_reached) {
    r.pass = false;
    r.verdict = "regime not reached: alpha = " + std::to_string(params.alpha) +
                " <= 26 beta = " + std::to_string(26L * params.beta) + "; no verdict";
    return r;
  }
  if (!r.positive_baseline_sizes.empty()) {
    r.verdict = "FAMILY VIOLATION: baseline utility positive at s = " +
                std::to_string(r.positive_baseline_sizes.front());
  } else if (!r.bound_violations.empty()) {
    r.verdict = "case bound exceeded at s = " + std::to_string(r.bound_violations.front());
  } else if (!(r.planted_utility > 0) || r.planted_utility < r.planted_lower_bound - 1e-6) {
    r.verdict = "planted strategy below its lower bound";
  } else if (r.exact_max_rel_error > 1e-9) {
    r.verdict = "closed form disagrees with exact evaluation";
  } else {
    r.pass = true;
    r.verdict = "pass";
  }
  return r;
}

AgreementReport exhaustive_agreement(int n, int alpha, int beta, const BoxSet& planted) {
  if (n > 20) throw CapabilityError("exhaustive agreement check is limited to n <= 20");
  const HardnessCost c0(n, alpha, beta);
  const HardnessCost cr(n, alpha, beta, planted);
  AgreementReport r;
  const std::uint64_t size = std::uint64_t{1} << n;
  for (std::uint64_t m = 0; m < size; ++m) {
    const BoxSet s = BoxSet::from_mask(m);
    const bool agree = c0.eval(s) == cr.eval(s);
    const int overlap = (s & planted).size();
    ++r.sets;
    if (!agree) ++r.disagreements;
    if (overlap <= beta) {
      if (!agree) ++r.agree_violations;
    } else if (agree) {
      if (s.size() <= alpha) {
        ++r.iff_violations;
      } else {
        ++r.large_set_exceptions;
        if (!r.first_exception) r.first_exception = s;
      }
    }
  }
  return r;
}

Rational hypergeometric_pmf(long n, long r, long s, long k) {
  if (r > n || s > n || r < 0 || s < 0) throw DomainError("hypergeometric parameters out of range");
  return binomial(r, k) * binomial(n - r, s - k) / binomial(n, s);
}

Rational hypergeometric_tail(long n, long r, long s, long t) {
  Rational tail = 0;
  for (long k = std::max(t + 1, 0L); k <= std::min(r, s); ++k) tail += hypergeometric_pmf(n, r, s, k);
  return tail;
}

BoxSet sample_subset(long n, long r, std::uint64_t seed) {
  auto rng = make_rng(seed, 0x5ab5e7);
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  BoxSet out;
  for (long i = 0; i < r; ++i) {
    const long j = i + static_cast<long>(uniform_below(rng, static_cast<std::uint64_t>(n - i)));
    std::swap(pool[i], pool[j]);
    out.insert(pool[i]);
  }
  return out;
}

DistinguishReport distinguish_experiment(const DistinguishConfig& config) {
  if (config.budget < 0 || config.budget > 1000000) throw DomainError("budget must be in [0, 1e6]");
  if (config.trials < 1 || config.trials > 100000) throw DomainError("trials must be in [1, 1e5]");
  const HardnessParams params =
      config.alpha || config.beta
          ? hardness_params_override(config.n, config.alpha.value_or(hardness_params(config.n).alpha),
                                     config.beta.value_or(hardness_params(config.n).beta))
          : hardness_params(config.n);

  // The algorithm is deterministic: its query list is fixed before any trial.
  std::vector<BoxSet> queries = config.query_list;
  if (queries.empty()) {
    for (long k = 0; k < config.queries; ++k) {
      queries.push_back(sample_subset(params.n, params.alpha, config.seed * 1000003ULL + k));
    }
  }
  for (const auto& q : queries) {
    if (q.bound() > params.n) throw DomainError("query set mentions a box outside [n]");
  }
  const HardnessCost c0(static_cast<int>(params.n), params.alpha, params.beta);
  std::vector<Rational> baseline_answers;
  baseline_answers.reserve(queries.size());
  for (const auto& q : queries) baseline_answers.push_back(c0.eval(q));

  struct Trial {
    bool distinguishing = false;
    bool aborted = false;
    bool count_ok = true;
    std::uint64_t queries = 0;
    int first_overlap = -1;
  };
  std::vector<Trial> results(config.trials);
  auto run = [&](long begin, long end) {
    for (long t = begin; t < end; ++t) {
      Trial& out = results[t];
      const BoxSet planted =
          sample_subset(params.n, params.alpha, config.seed ^ (0x9e3779b97f4a7c15ULL * (t + 1)));
      auto oracle = with_counter(std::make_shared<HardnessCost>(
          static_cast<int>(params.n), params.alpha, params.beta, planted));
      std::uint64_t issued = 0;
      for (std::size_t k = 0; k < queries.size(); ++k) {
        if (static_cast<long>(oracle->count()) >= config.budget) {
          out.aborted = true;
          break;
        }
        ++issued;
        if (oracle->eval(queries[k]) != baseline_answers[k]) {
          out.distinguishing = true;
          break;
        }
      }
      out.queries = oracle->count();
      out.count_ok = oracle->count() == issued;
      if (!queries.empty()) out.first_overlap = (queries[0] & planted).size();
    }
  };
  const int jobs = std::max(1, std::min<int>(config.jobs, static_cast<int>(config.trials)));
  if (jobs == 1) {
    run(0, config.trials);
  } else {
    std::vector<std::thread> pool;
    const long chunk = (config.trials + jobs - 1) / jobs;
    for (int j = 0; j < jobs; ++j) {
      const long b = j * chunk;
      const long e = std::min(config.trials, b + chunk);
      if (b < e) pool.emplace_back(run, b, e);
    }
    for (auto& th : pool) th.join();
  }

  DistinguishReport r;
  r.params = params;
  r.trials = config.trials;
  r.banner = kRegimeBanner;
  const long s1 = queries.empty() ? 0 : queries[0].size();
  const long max_overlap = std::min<long>(s1, params.alpha);
  r.overlap_histogram.assign(max_overlap + 1, 0);
  for (const auto& t : results) {
    r.distinguishing_trials += t.distinguishing;
    r.aborted_trials += t.aborted;
    r.counts_exact = r.counts_exact && t.count_ok;
    r.total_queries += t.queries;
    if (t.first_overlap >= 0) {
      r.overlap_histogram[t.first_overlap]++;
      if (t.first_overlap > params.beta) ++r.tail_hits;
    }
  }
  r.distinguish_rate = static_cast<double>(r.distinguishing_trials) / config.trials;
  if (!queries.empty()) {
    const double trials = static_cast<double>(config.trials);
    r.exact_tail = to_double(hypergeometric_tail(params.n, params.alpha, s1, params.beta));
    r.empirical_tail = r.tail_hits / trials;
    r.standard_error = std::sqrt(r.exact_tail * (1 - r.exact_tail) / trials);
    const double diff = std::fabs(r.empirical_tail - r.exact_tail);
    r.tail_z = r.standard_error > 0 ? diff / r.standard_error : (diff == 0 ? 0 : INFINITY);
    r.tail_within_3se = diff <= 3 * r.standard_error;
    r.overlap_pmf.resize(max_overlap + 1);
    for (long k = 0; k <= max_overlap; ++k) {
      const double pk = to_double(hypergeometric_pmf(params.n, params.alpha, s1, k));
      r.overlap_pmf[k] = pk;
      const double expected = pk * trials;
      if (expected >= 5) {
        const double z = (r.overlap_histogram[k] - expected) / std::sqrt(expected * (1 - pk));
        r.max_bin_z = std::max(r.max_bin_z, std::fabs(z));
      }
    }
  }
  return r;
}

}  // namespace pandora
