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

#include "pandora/solvers.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

#include "pandora/cost_classes.hpp"

namespace pandora {
namespace {

using Mask = std::uint64_t;

void require_size(const Instance& instance, int bound, const char* what) {
  if (instance.size() > bound) {
    throw CapabilityError(std::string(what) + " is limited to n <= " + std::to_string(bound) +
                          " (got n = " + std::to_string(instance.size()) +
                          "); set PANDORA_MAX_N to override");
  }
}

// Atoms of each box re-expressed as grid indices.
struct GridBoxes {
  std::vector<Rational> grid;
  std::vector<std::vector<std::pair<int, Rational>>> atoms;  // (grid index, prob)

  explicit GridBoxes(const Instance& instance) : grid(support_union(instance)) {
    for (const auto& d : instance.boxes()) {
      std::vector<std::pair<int, Rational>> row;
      for (const auto& a : d.atoms()) {
        auto it = std::lower_bound(grid.begin(), grid.end(), a.value);
        row.push_back({static_cast<int>(it - grid.begin()), a.prob});
      }
      atoms.push_back(std::move(row));
    }
  }
};

class AdaptiveSolver {
 public:
  explicit AdaptiveSolver(const Instance& instance)
      : instance_(instance),
        n_(instance.size()),
        boxes_(instance),
        table_(tabulate(instance.cost(), 30)),
        g_(boxes_.grid.size()),
        memo_((Mask{1} << n_) * g_),
        known_((Mask{1} << n_) * g_, false) {}

  // Value of continuing with box i from (s, x), before comparing with halting.
  Rational action_value(Mask s, int x, int i) {
    Rational v = -table_.marginal(i, s);
    const Rational& best = boxes_.grid[x];
    for (const auto& [a, p] : boxes_.atoms[i]) {
      const int nx = std::max(a, x);
      Rational gain = boxes_.grid[nx] - best;
      v += p * (gain + value(s | (Mask{1} << i), nx));
    }
    return v;
  }

  const Rational& value(Mask s, int x) {
    const std::size_t key = s * g_ + x;
    if (known_[key]) return memo_[key];
    Rational best = 0;
    for (int i = 0; i < n_; ++i) {
      if (s & (Mask{1} << i)) continue;
      Rational v = action_value(s, x, i);
      if (v > best) best = std::move(v);
    }
    known_[key] = true;
    ++states_;
    memo_[key] = std::move(best);
    return memo_[key];
  }

  // Greedy reconstruction; also records whether any reached node has a tie.
  PolicyNode build(Mask s, int x) {
    const Rational& target = value(s, x);
    std::optional<int> choice;
    int optimal_actions = target == 0 ? 1 : 0;  // halting attains 0
    for (int i = 0; i < n_; ++i) {
      if (s & (Mask{1} << i)) continue;
      if (action_value(s, x, i) == target) {
        ++optimal_actions;
        if (!choice && target > 0) choice = i;
      }
    }
    if (optimal_actions > 1) unique_ = false;
    PolicyNode node;
    if (!choice) return node;
    node.open = *choice;
    const auto& atoms = instance_.box(*choice).atoms();
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      const int nx = std::max(boxes_.atoms[*choice][k].first, x);
      node.children.push_back({atoms[k].value, build(s | (Mask{1} << *choice), nx)});
    }
    return node;
  }

  bool unique() const { return unique_; }
  std::uint64_t states() const { return states_; }

 private:
  const Instance& instance_;
  int n_;
  GridBoxes boxes_;
  CostTable table_;
  std::size_t g_;
  std::vector<Rational> memo_;
  std::vector<bool> known_;
  bool unique_ = true;
  std::uint64_t states_ = 0;
};

}  // namespace

AdaptiveResult optimal_adaptive(const Instance& instance) {
  require_size(instance, enumeration_bound(kAdaptiveBound), "optimal_adaptive");
  AdaptiveSolver solver(instance);
  AdaptiveResult r;
  r.utility = solver.value(0, 0);
  r.tree = solver.build(0, 0);
  r.unique = solver.unique();
  r.states = solver.states();
  return r;
}

ThresholdResult optimal_thresholds(const Instance& instance, const std::vector<int>& sigma) {
  validate_order(sigma, instance.size(), true);
  const int n = instance.size();
  GridBoxes boxes(instance);
  const std::size_t g = boxes.grid.size();
  // Marginal cost of each round given the whole prefix before it.
  std::vector<Rational> step(n);
  BoxSet prefix;
  Rational before = 0;
  for (int r = 0; r < n; ++r) {
    prefix.insert(sigma[r]);
    Rational after = instance.cost().eval(prefix);
    step[r] = after - before;
    before = after;
  }
  ThresholdResult out;
  out.grid = boxes.grid;
  out.f.assign(n + 1, std::vector<Rational>(g, Rational(0)));
  out.strategy.sigma = sigma;
  out.strategy.thresholds.assign(n, Threshold::infinity());
  for (int r = n - 1; r >= 0; --r) {
    for (std::size_t x = 0; x < g; ++x) {
      Rational v = -step[r];
      for (const auto& [a, p] : boxes.atoms[sigma[r]]) {
        const std::size_t nx = std::max<std::size_t>(a, x);
        v += p * (boxes.grid[nx] - boxes.grid[x] + out.f[r + 1][nx]);
      }
      out.f[r][x] = v > 0 ? v : Rational(0);
    }
    for (std::size_t x = 0; x < g; ++x) {
      if (out.f[r][x] == 0) {
        out.strategy.thresholds[r] = Threshold(boxes.grid[x]);
        break;
      }
    }
  }
  out.utility = out.f[0][0];
  return out;
}

FixedOrderResult optimal_fixed_order(const Instance& instance, int jobs) {
  require_size(instance, enumeration_bound(kPermutationBound), "optimal_fixed_order");
  const int n = instance.size();
  if (n == 0) {
    return {FixedOrderThresholds{}, Rational(0), 1};
  }
  struct Best {
    std::optional<ThresholdResult> result;
    std::uint64_t count = 0;
  };
  // Chunk by first element: chunk k covers the permutations starting with k,
  // which are contiguous in lexicographic order.
  auto run_chunk = [&](int first) {
    Best best;
    std::vector<int> rest;
    for (int i = 0; i < n; ++i) {
      if (i != first) rest.push_back(i);
    }
    do {
      std::vector<int> sigma{first};
      sigma.insert(sigma.end(), rest.begin(), rest.end());
      ThresholdResult r = optimal_thresholds(instance, sigma);
      ++best.count;
      if (!best.result || r.utility > best.result->utility) best.result = std::move(r);
    } while (std::next_permutation(rest.begin(), rest.end()));
    return best;
  };
  std::vector<Best> chunks(n);
  const int workers = std::max(1, std::min(jobs, n));
  if (workers == 1) {
    for (int k = 0; k < n; ++k) chunks[k] = run_chunk(k);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int k = w; k < n; k += workers) chunks[k] = run_chunk(k);
      });
    }
    for (auto& t : pool) t.join();
  }
  FixedOrderResult out;
  std::optional<ThresholdResult> winner;
  for (auto& c : chunks) {
    out.permutations += c.count;
    if (!winner || c.result->utility > winner->utility) winner = std::move(c.result);
  }
  out.strategy = winner->strategy;
  out.utility = winner->utility;
  return out;
}

namespace {

struct ImpulsiveSearch {
  const Instance& instance;
  CostTable table;
  std::vector<WeightedBernoulli> boxes;
  std::vector<int> current;
  ImpulsiveResult best;

  void dfs(Mask opened, const Rational& q, const Rational& utility) {
    ++best.evaluated;
    if (utility > best.utility) {
      best.utility = utility;
      best.strategy.order = current;
    }
    if (q == 0) return;  // a deterministic box ends every continuation
    for (int i = 0; i < instance.size(); ++i) {
      if (opened & (Mask{1} << i)) continue;
      const auto& b = boxes[i];
      current.push_back(i);
      dfs(opened | (Mask{1} << i), q * b.q(), utility + q * (b.prob * b.value - table.marginal(i, opened)));
      current.pop_back();
    }
  }
};

}  // namespace

ImpulsiveResult optimal_impulsive(const Instance& instance) {
  instance.require_bernoulli("optimal_impulsive");
  require_size(instance, enumeration_bound(kPermutationBound), "optimal_impulsive");
  ImpulsiveSearch search{instance, tabulate(instance.cost(), 30), {}, {}, {}};
  for (int i = 0; i < instance.size(); ++i) search.boxes.push_back(instance.bernoulli(i));
  search.best.utility = 0;
  search.dfs(0, 1, 0);
  return search.best;
}

ReservationValue reservation_value(const FiniteDistribution& box, const Rational& c) {
  if (c < 0) throw DomainError("reservation value needs a non-negative cost");
  if (c == 0) return {box.max_value(), false};
  // Walk segments from the top: on [v_{k+1}, v_k] the tail is A - z B where A
  // and B accumulate value*prob and prob over atoms >= v_k.
  const auto& atoms = box.atoms();
  Rational a = 0;
  Rational b = 0;
  for (std::size_t k = atoms.size(); k-- > 0;) {
    a += atoms[k].value * atoms[k].prob;
    b += atoms[k].prob;
    const Rational z = (a - c) / b;
    const bool last = k == 0;
    if (last || z >= atoms[k - 1].value) return {z, z < 0};
  }
  throw std::logic_error("reservation_value: no segment matched");
}

std::optional<std::vector<Rational>> additive_costs(const CostOracle& cost) {
  const CostOracle* inner = &cost;
  while (auto counted = dynamic_cast<const QueryCountingOracle*>(inner)) inner = counted->inner().get();
  if (auto add = dynamic_cast<const AdditiveCost*>(inner)) return add->per_box();
  if (cost.arity() > enumeration_bound(kExhaustiveBound)) return std::nullopt;
  const CostTable t = tabulate(cost, 30);
  std::vector<Rational> per_box(cost.arity());
  for (int i = 0; i < cost.arity(); ++i) per_box[i] = t[Mask{1} << i];
  for (Mask m = 0; m < t.values.size(); ++m) {
    Rational sum = 0;
    for (Mask w = m; w; w &= w - 1) sum += per_box[std::countr_zero(w)];
    if (sum != t[m]) return std::nullopt;
  }
  return per_box;
}

WeitzmanResult weitzman(const Instance& instance) {
  auto costs = additive_costs(instance.cost());
  if (!costs) {
    throw DomainError("weitzman needs an additive cost; got '" + instance.cost().kind() +
                      "', which is not additive");
  }
  const int n = instance.size();
  WeitzmanResult out;
  for (int i = 0; i < n; ++i) out.reservation.push_back(reservation_value(instance.box(i), (*costs)[i]));
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return out.reservation[x].z > out.reservation[y].z;
  });
  out.strategy.sigma = order;
  for (int i : order) {
    const Rational& z = out.reservation[i].z;
    out.strategy.thresholds.push_back(Threshold(z > 0 ? z : Rational(0)));
  }
  out.utility = eval_fixed_order(instance, out.strategy);
  return out;
}

GapReport adaptivity_gap(const Instance& instance, int jobs) {
  GapReport r;
  AdaptiveResult adaptive = optimal_adaptive(instance);
  FixedOrderResult fixed = optimal_fixed_order(instance, jobs);
  r.opt_adaptive = adaptive.utility;
  r.adaptive_witness = std::move(adaptive.tree);
  r.adaptive_unique = adaptive.unique;
  r.opt_fixed_order = fixed.utility;
  r.fixed_witness = fixed.strategy;
  r.strict_adaptive_vs_fixed = r.opt_adaptive > r.opt_fixed_order;
  if (instance.is_bernoulli()) {
    ImpulsiveResult imp = optimal_impulsive(instance);
    r.opt_impulsive = imp.utility;
    r.impulsive_witness = imp.strategy;
    r.strict_fixed_vs_impulsive = r.opt_fixed_order > imp.utility;
    r.strict_adaptive_vs_impulsive = r.opt_adaptive > imp.utility;
  }
  return r;
}

}  // namespace pandora
