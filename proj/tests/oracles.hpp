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

// Reference implementations used only by the tests. None of them shares code
// with the library's evaluators or solvers: strategies are simulated on every
// joint realization, and optima come from plain exhaustive search over
// histories, permutations, threshold vectors and ordered subsets.

#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include "pandora/instance.hpp"
#include "pandora/strategies.hpp"

namespace oracle {

using pandora::BoxSet;
using pandora::Instance;
using pandora::Rational;

struct Realization {
  std::vector<Rational> values;
  Rational prob;
};

inline std::vector<Realization> realizations(const Instance& inst) {
  std::vector<Realization> out{{{}, Rational(1)}};
  for (int i = 0; i < inst.size(); ++i) {
    std::vector<Realization> next;
    for (const auto& r : out) {
      for (const auto& a : inst.box(i).atoms()) {
        Realization x = r;
        x.values.push_back(a.value);
        x.prob *= a.prob;
        next.push_back(std::move(x));
      }
    }
    out = std::move(next);
  }
  return out;
}

// Utility of one run: best opened value minus the cost of everything opened.
inline Rational outcome(const Instance& inst, const BoxSet& opened, const Rational& best) {
  return best - inst.cost().eval(opened);
}

inline Rational simulate_impulsive(const Instance& inst, const std::vector<int>& order) {
  Rational total = 0;
  for (const auto& r : realizations(inst)) {
    BoxSet opened;
    Rational best = 0;
    for (int b : order) {
      opened.insert(b);
      if (r.values[b] != 0) {
        best = r.values[b];
        break;
      }
    }
    total += r.prob * outcome(inst, opened, best);
  }
  return total;
}

inline Rational simulate_fixed(const Instance& inst, const pandora::FixedOrderThresholds& s) {
  Rational total = 0;
  for (const auto& r : realizations(inst)) {
    BoxSet opened;
    Rational best = 0;
    for (std::size_t k = 0; k < s.sigma.size(); ++k) {
      if (s.thresholds[k].halts_at(best)) break;
      opened.insert(s.sigma[k]);
      best = std::max(best, r.values[s.sigma[k]]);
    }
    total += r.prob * outcome(inst, opened, best);
  }
  return total;
}

inline Rational simulate_policy(const Instance& inst, const pandora::PolicyNode& root) {
  Rational total = 0;
  for (const auto& r : realizations(inst)) {
    BoxSet opened;
    Rational best = 0;
    const pandora::PolicyNode* node = &root;
    while (!node->is_halt()) {
      const int b = *node->open;
      opened.insert(b);
      best = std::max(best, r.values[b]);
      const pandora::PolicyNode* child = nullptr;
      for (const auto& [v, c] : node->children)
        if (v == r.values[b]) child = &c;
      if (child == nullptr) throw std::logic_error("policy misses an atom");
      node = child;
    }
    total += r.prob * outcome(inst, opened, best);
  }
  return total;
}

// Optimal adaptive utility by recursion over full histories (which boxes were
// opened and what each one showed), with no state compression.
inline Rational adaptive_by_histories(const Instance& inst) {
  const int n = inst.size();
  std::function<Rational(const BoxSet&, const Rational&)> value = [&](const BoxSet& opened,
                                                                       const Rational& best) {
    Rational v = outcome(inst, opened, best);
    for (int i = 0; i < n; ++i) {
      if (opened.contains(i)) continue;
      BoxSet next = opened;
      next.insert(i);
      Rational e = 0;
      for (const auto& a : inst.box(i).atoms()) e += a.prob * value(next, std::max(best, a.value));
      v = std::max(v, e);
    }
    return v;
  };
  return value(BoxSet{}, Rational(0));
}

// Every permutation and every threshold vector over grid + {infinity}.
inline Rational fixed_by_enumeration(const Instance& inst) {
  const int n = inst.size();
  std::vector<Rational> grid = pandora::support_union(inst);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rational best = 0;
  do {
    std::vector<int> choice(n, 0);
    const int g = static_cast<int>(grid.size());
    while (true) {
      pandora::FixedOrderThresholds s;
      s.sigma = perm;
      for (int k = 0; k < n; ++k)
        s.thresholds.push_back(choice[k] == g ? pandora::Threshold::infinity()
                                              : pandora::Threshold(grid[choice[k]]));
      best = std::max(best, simulate_fixed(inst, s));
      int k = 0;
      while (k < n && ++choice[k] > g) choice[k++] = 0;
      if (k == n) break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline Rational impulsive_by_enumeration(const Instance& inst) {
  const int n = inst.size();
  Rational best = 0;
  std::vector<int> order;
  std::vector<bool> used(n, false);
  std::function<void()> rec = [&] {
    best = std::max(best, simulate_impulsive(inst, order));
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      used[i] = true;
      order.push_back(i);
      rec();
      order.pop_back();
      used[i] = false;
    }
  };
  rec();
  return best;
}

}  // namespace oracle
