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

#include "pandora/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>
#include <thread>

#include "pandora/hardness.hpp"
#include "pandora/random.hpp"

namespace pandora {

std::string to_string(Basis b) {
  switch (b) {
    case Basis::kPublishedExample: return "published_example";
    case Basis::kIndependentOracle: return "independent_oracle";
    case Basis::kByDefinition: return "by_definition";
  }
  return "?";
}

bool EntryResult::pass() const {
  return error.empty() && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

bool CorpusReport::pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.pass(); });
}

namespace {

class Checks {
 public:
  explicit Checks(EntryResult& out) : out_(out) {}

  void equal(const std::string& name, Basis basis, const Rational& expected, const Rational& got) {
    out_.checks.push_back({name, basis, to_string(expected), to_string(got), expected == got});
  }
  void flag(const std::string& name, Basis basis, bool expected, bool got) {
    out_.checks.push_back({name, basis, expected ? "true" : "false", got ? "true" : "false", expected == got});
  }
  void text(const std::string& name, Basis basis, const std::string& expected, const std::string& got) {
    out_.checks.push_back({name, basis, expected, got, expected == got});
  }
  void at_least(const std::string& name, Basis basis, double bound, double got, double tol) {
    std::ostringstream e, g;
    e.precision(12);
    g.precision(12);
    e << ">= " << bound;
    g << got;
    out_.checks.push_back({name, basis, e.str(), g.str(), got >= bound - tol});
  }
  void below(const std::string& name, Basis basis, double bound, double got) {
    std::ostringstream e, g;
    e.precision(12);
    g.precision(12);
    e << "< " << bound;
    g << got;
    out_.checks.push_back({name, basis, e.str(), g.str(), got < bound});
  }

 private:
  EntryResult& out_;
};

std::string sets_text(const std::vector<BoxSet>& sets) {
  std::string s;
  for (const auto& b : sets) s += "{" + b.key() + "}";
  return s;
}

std::string list_text(const std::vector<int>& v) {
  std::string s = "(";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s + ")";
}

PolicyNode open_node(int box, std::vector<std::pair<Rational, PolicyNode>> children) {
  PolicyNode n;
  n.open = box;
  n.children = std::move(children);
  return n;
}

void entry_example1(Checks& c) {
  const Instance inst = example1();
  const auto adaptive = optimal_adaptive(inst);
  const auto fixed = optimal_fixed_order(inst);
  c.equal("optimal adaptive utility", Basis::kIndependentOracle, Rational(21, 2), adaptive.utility);
  c.equal("optimal fixed-order utility", Basis::kIndependentOracle, 10, fixed.utility);
  c.flag("strict adaptive > fixed", Basis::kIndependentOracle, true, adaptive.utility > fixed.utility);
  // Open the first box; on 10 open the second, on 0 open the third.
  const PolicyNode expected_tree = open_node(
      0, {{0, open_node(2, {{10, PolicyNode::halt()}})},
          {10, open_node(1, {{0, PolicyNode::halt()}, {12, PolicyNode::halt()}})}});
  c.text("optimal tree shape", Basis::kPublishedExample, policy_to_json(expected_tree).dump(),
         policy_to_json(adaptive.tree).dump());
  c.flag("optimal strategy is unique", Basis::kPublishedExample, true, adaptive.unique);
  c.equal("order (0,1,2) with best thresholds", Basis::kIndependentOracle, Rational(17, 2),
          optimal_thresholds(inst, {0, 1, 2}).utility);
  c.equal("cost of {1,2}", Basis::kPublishedExample, 20, inst.cost().eval({1, 2}));
  c.equal("cost of {0,1,2}", Basis::kPublishedExample, 20, inst.cost().eval({0, 1, 2}));
  const auto sub = validate_class(inst.cost(), CostClass::kSubadditive);
  c.flag("subadditive", Basis::kByDefinition, false, sub.pass);
  c.text("subadditivity witness", Basis::kByDefinition, "{1}{2}", sets_text(sub.sets));
  std::string grid;
  for (const auto& v : support_union(inst)) grid += to_string(v) + " ";
  c.text("support union", Basis::kPublishedExample, "0 10 12 ", grid);
}

void entry_unit_demand(Checks& c) {
  const Instance inst = unit_demand_pair();
  const auto imp = optimal_impulsive(inst);
  c.equal("optimal impulsive utility", Basis::kPublishedExample, Rational(1, 9), imp.utility);
  c.text("optimal impulsive order", Basis::kPublishedExample, "(0,1)", list_text(imp.strategy.order));
  c.equal("optimal adaptive utility", Basis::kIndependentOracle, Rational(1, 9), optimal_adaptive(inst).utility);
  c.equal("optimal fixed-order utility", Basis::kIndependentOracle, Rational(1, 9),
          optimal_fixed_order(inst).utility);
  const auto z = reservation_value(inst.box(0), 1);
  c.flag("reservation value negative", Basis::kPublishedExample, true, z.z < 0);
  c.equal("reservation value", Basis::kByDefinition, Rational(-1, 3), z.z);
  bool rejected = false;
  try {
    weitzman(inst);
  } catch (const DomainError&) {
    rejected = true;
  }
  c.flag("index policy rejects the cost", Basis::kByDefinition, true, rejected);
  const Instance additive({inst.box(0), inst.box(1)}, std::make_shared<AdditiveCost>(std::vector<Rational>{1, 1}));
  const auto w = weitzman(additive);
  c.equal("index policy under additive unit costs", Basis::kPublishedExample, 0, w.utility);
}

void entry_subadditive4(Checks& c) {
  const Instance inst = subadditive4();
  const auto adaptive = optimal_adaptive(inst);
  const auto fixed = optimal_fixed_order(inst);
  c.equal("optimal adaptive utility", Basis::kIndependentOracle, Rational(4253, 120), adaptive.utility);
  c.equal("optimal fixed-order utility", Basis::kIndependentOracle, Rational(1417, 40), fixed.utility);
  c.flag("strict adaptive > fixed", Basis::kPublishedExample, true, adaptive.utility > fixed.utility);
  c.flag("subadditive", Basis::kPublishedExample, true, validate_class(inst.cost(), CostClass::kSubadditive).pass);
  c.flag("submodular", Basis::kPublishedExample, false, validate_class(inst.cost(), CostClass::kSubmodular).pass);
}

void entry_xos_lift(Checks& c) {
  const Instance base = example1();
  const Instance inst = xos_lift_of(base);
  const auto adaptive = optimal_adaptive(inst);
  const auto fixed = optimal_fixed_order(inst);
  c.equal("optimal adaptive utility", Basis::kIndependentOracle, Rational(69, 4), adaptive.utility);
  c.equal("optimal fixed-order utility", Basis::kIndependentOracle, 17, fixed.utility);
  c.flag("strict adaptive > fixed", Basis::kPublishedExample, true, adaptive.utility > fixed.utility);
  const auto& xos = dynamic_cast<const XosCost&>(inst.cost());
  c.flag("XOS certificate consistent", Basis::kPublishedExample, true,
         check_xos_certificate(inst.cost(), xos.clauses()).pass);
  c.equal("g({0})", Basis::kByDefinition, 60, inst.cost().eval({0}));
  c.equal("g({0,2,3})", Basis::kByDefinition, 80, inst.cost().eval({0, 2, 3}));
  bool marginal_ok = true;
  const Rational g0 = inst.cost().eval({0});
  for (std::uint64_t m = 0; m < 8; ++m) {
    BoxSet s = BoxSet::from_mask(m);
    BoxSet lifted{0};
    for (int b : s.elements()) lifted.insert(b + 1);
    marginal_ok = marginal_ok && inst.cost().eval(lifted) - g0 == base.cost().eval(s);
  }
  c.flag("marginal of g given {0} is f", Basis::kPublishedExample, true, marginal_ok);
  c.equal("E[V0]", Basis::kByDefinition, 72, inst.box(0).mean());
  c.flag("E[V0] > g({0})", Basis::kPublishedExample, true, inst.box(0).mean() > g0);
}

void entry_hardness_small(Checks& c) {
  const int n = 12;
  const int alpha = 6;
  const int beta = 2;
  const BoxSet planted{1, 3, 4, 7, 9, 10};
  const auto params = hardness_params_override(n, alpha, beta);
  const Instance base = hardness_instance(n, std::nullopt, {alpha, beta});
  const Instance with_r = hardness_instance(n, planted, {alpha, beta});
  c.flag("planted cost is a matroid rank", Basis::kPublishedExample, true,
         validate_class(with_r.cost(), CostClass::kMatroidRank).pass);
  bool baseline_ok = true;
  for (int s = 0; s <= n; ++s) {
    std::vector<int> order(s);
    std::iota(order.begin(), order.end(), 0);
    baseline_ok = baseline_ok && eval_impulsive(base, {order}) ==
                                     symmetric_impulsive_utility_exact(params, s, SymmetricVariant::kBaseline);
  }
  c.flag("baseline closed form = evaluation for every s", Basis::kByDefinition, true, baseline_ok);
  const auto r = planted.elements();
  bool planted_ok = true;
  for (int s = 0; s <= alpha; ++s) {
    std::vector<int> order(r.begin(), r.begin() + s);
    planted_ok = planted_ok && eval_impulsive(with_r, {order}) ==
                                   symmetric_impulsive_utility_exact(params, s, SymmetricVariant::kPlantedSubset);
  }
  c.flag("planted closed form = evaluation for every s", Basis::kByDefinition, true, planted_ok);
  std::vector<int> order = r;
  const Rational first = eval_impulsive(with_r, {order});
  bool invariant = true;
  while (std::next_permutation(order.begin(), order.end())) invariant = invariant && eval_impulsive(with_r, {order}) == first;
  c.flag("planted utility independent of the order of R", Basis::kPublishedExample, true, invariant);
}

void entry_hardness_large(Checks& c) {
  const auto params = hardness_params(100000);
  c.equal("alpha", Basis::kIndependentOracle, 729, params.alpha);
  c.equal("beta", Basis::kIndependentOracle, 27, params.beta);
  c.equal("M", Basis::kByDefinition, 135, params.m);
  const auto report = verify_family(params);
  c.flag("family verified", Basis::kPublishedExample, true, report.pass);
  c.below("max baseline utility", Basis::kPublishedExample, 0, report.baseline_max);
  c.at_least("planted utility", Basis::kPublishedExample, 5.0 * 27 * (1 - std::exp(-1.0)) - 27,
             report.planted_utility, 1e-6);
}

void entry_tree_path(Checks& c) {
  const auto cost = std::make_shared<TreeClosureCost>(std::vector<int>{-1, 0, 1},
                                                      std::vector<Rational>{0, 1, 1});
  c.flag("path tree closure is gross substitutes", Basis::kPublishedExample, true,
         validate_class(*cost, CostClass::kGrossSubstitutes).pass);
  c.text("closure of {3} on a path", Basis::kByDefinition, "0,1,2,3",
         TreeClosureCost({-1, 0, 1, 2}, {0, 1, 1, 1}).closure({3}).key());
}

void entry_budget_additive(Checks& c) {
  const auto cost = std::make_shared<BudgetAdditiveCost>(std::vector<Rational>{1, 1, 1}, Rational(2));
  const auto r = check_preservation(cost, 2, CostClass::kBudgetAdditive);
  c.flag("original is budget additive", Basis::kByDefinition, true, r.original_in_class);
  c.flag("lift with two copies is budget additive", Basis::kPublishedExample, false, r.lifted.pass);
}

const std::vector<std::pair<std::string, std::function<void(Checks&)>>>& entries() {
  static const std::vector<std::pair<std::string, std::function<void(Checks&)>>> all = {
      {"example1", entry_example1},
      {"unit_demand_pair", entry_unit_demand},
      {"subadditive4", entry_subadditive4},
      {"xos_lift_example1", entry_xos_lift},
      {"hardness_small_override", entry_hardness_small},
      {"hardness_baseline_100000", entry_hardness_large},
      {"tree_closure_path", entry_tree_path},
      {"budget_additive_lift", entry_budget_additive},
  };
  return all;
}

}  // namespace

std::vector<std::string> corpus_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : entries()) out.push_back(name);
  return out;
}

EntryResult run_corpus_entry(const std::string& name) {
  for (const auto& [entry, fn] : entries()) {
    if (entry != name) continue;
    EntryResult out{name, {}, {}};
    Checks checks(out);
    try {
      fn(checks);
    } catch (const std::exception& e) {
      out.error = e.what();
    }
    return out;
  }
  throw DomainError("unknown corpus entry '" + name + "'");
}

CorpusReport run_corpus() {
  CorpusReport r;
  for (const auto& name : corpus_names()) r.entries.push_back(run_corpus_entry(name));
  return r;
}

// ---------------------------------------------------------------------------
// Theorem suites

std::string to_string(Suite s) {
  switch (s) {
    case Suite::kT31: return "T31";
    case Suite::kT44: return "T44";
    case Suite::kL35: return "L35";
    case Suite::kCancellation: return "cancellation";
    case Suite::kPreservation: return "preservation";
    case Suite::kChain: return "chain";
    case Suite::kTransform: return "transform";
    case Suite::kWeitzman: return "weitzman";
  }
  return "?";
}

std::vector<Suite> all_suites() {
  return {Suite::kT31,          Suite::kT44,   Suite::kL35,       Suite::kCancellation,
          Suite::kPreservation, Suite::kChain, Suite::kTransform, Suite::kWeitzman};
}

Suite parse_suite(const std::string& name) {
  for (Suite s : all_suites()) {
    if (to_string(s) == name) return s;
  }
  throw DomainError("unknown suite '" + name + "'");
}

namespace {

struct Trial {
  bool pass = true;
  std::string tag;
  std::string detail;
  Json instance;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

std::string vs(const Rational& a, const Rational& b) { return to_string(a) + " vs " + to_string(b); }

std::vector<int> random_order_subset(std::mt19937_64& rng, std::vector<int> pool) {
  for (std::size_t k = pool.size(); k > 1; --k) std::swap(pool[k - 1], pool[uniform_below(rng, k)]);
  pool.resize(uniform_below(rng, pool.size() + 1));
  return pool;
}

BoxSet random_subset(std::mt19937_64& rng, const std::vector<int>& pool) {
  BoxSet s;
  for (int b : pool) {
    if (uniform_int(rng, 0, 1)) s.insert(b);
  }
  return s;
}

Instance pick(std::mt19937_64& rng, const std::vector<std::string>& families, int lo, int hi,
              const RandomParams& params, Trial& t) {
  const std::string& family = families[uniform_below(rng, families.size())];
  const int n = static_cast<int>(uniform_int(rng, lo, hi));
  t.tag = family;
  return random_instance(family, n, rng(), params);
}

Trial trial_t31(std::mt19937_64& rng) {
  Trial t;
  const Instance inst = pick(rng, {"bernoulli_coverage", "bernoulli_tree", "bernoulli_hardness"}, 2, 6, {}, t);
  t.instance = instance_to_json(inst);
  t.require(validate_class(inst.cost(), CostClass::kSubmodular).pass, "cost is not submodular");
  const Rational imp = optimal_impulsive(inst).utility;
  const Rational ada = optimal_adaptive(inst).utility;
  t.require(imp == ada, "impulsive vs adaptive: " + vs(imp, ada));
  return t;
}

Trial trial_t44(std::mt19937_64& rng) {
  Trial t;
  RandomParams p;
  p.max_atoms = 3;
  const Instance inst = pick(rng, {"general_coverage", "general_tree"}, 1, 5, p, t);
  t.instance = instance_to_json(inst);
  t.require(validate_class(inst.cost(), CostClass::kSubmodular).pass, "cost is not submodular");
  const Rational fixed = optimal_fixed_order(inst).utility;
  const Rational ada = optimal_adaptive(inst).utility;
  t.require(fixed == ada, "fixed vs adaptive: " + vs(fixed, ada));
  return t;
}

Trial trial_l35(std::mt19937_64& rng) {
  Trial t;
  const Instance inst = pick(rng, {"bernoulli_coverage", "bernoulli_tree", "bernoulli_hardness"}, 2, 6, {}, t);
  t.instance = instance_to_json(inst);
  const int n = inst.size();
  const int root = static_cast<int>(uniform_below(rng, n));
  std::vector<int> others;
  for (int i = 0; i < n; ++i) {
    if (i != root) others.push_back(i);
  }
  const std::vector<int> order = random_order_subset(rng, others);
  const BoxSet a = random_subset(rng, order);
  const BoxSet b = BoxSet(std::span<const int>(order)) - a;
  const MarginalUtilityContext plain{root, {}};
  const MarginalUtilityContext after_b{root, b};
  const ImpulsiveWithDummies pi = ImpulsiveWithDummies::all_opened({order});
  const ImpulsiveWithDummies pi_a{order, a};
  const ImpulsiveWithDummies pi_b{order, b};
  const Rational lhs = marginal_utility(MarginalKind::kN, pi, plain, inst);
  const Rational rhs = marginal_utility(MarginalKind::kN, pi_a, after_b, inst) +
                       marginal_utility(MarginalKind::kN, pi_b, plain, inst);
  t.require(lhs <= rhs, "u_N(pi) > u_N(pi_A|B) + u_N(pi_B): " + vs(lhs, rhs));
  const Rational p = pq_of(pi, inst).p;
  const Rational split = pq_of(pi_a, inst).p_opened + pq_of(pi_b, inst).p_opened;
  t.require(p == split, "p(pi) != p(pi_A) + p(pi_B): " + vs(p, split));
  Rational mixed = 0;
  for (const auto& [s, prob] : dummy_mixture(pi_a, inst)) {
    mixed += prob * marginal_utility(MarginalKind::kN, ImpulsiveWithDummies::all_opened(s), after_b, inst);
  }
  const Rational direct = marginal_utility(MarginalKind::kN, pi_a, after_b, inst);
  t.require(mixed == direct, "mixture vs dummy evaluation: " + vs(mixed, direct));
  return t;
}

Trial trial_cancellation(std::mt19937_64& rng) {
  Trial t;
  const Instance inst = pick(rng, {"general_coverage", "general_tree", "explicit_subadditive", "general_xos",
                                   "bernoulli_hardness"},
                             2, 8, {}, t);
  t.instance = instance_to_json(inst);
  const int n = inst.size();
  const int h = static_cast<int>(uniform_below(rng, n));
  int l = static_cast<int>(uniform_below(rng, n - 1));
  if (l >= h) ++l;
  std::vector<int> rest;
  for (int i = 0; i < n; ++i) {
    if (i != h && i != l) rest.push_back(i);
  }
  const BoxSet tset = random_subset(rng, rest);
  const CostOracle& c = inst.cost();
  const BoxSet hs{h};
  const BoxSet ls{l};
  const Rational left = marginal_cost(c, hs, tset | ls) - marginal_cost(c, ls, tset | hs);
  const Rational right = marginal_cost(c, hs, tset) - marginal_cost(c, ls, tset);
  t.require(left == right, "cancellation identity: " + vs(left, right));
  return t;
}

Trial trial_preservation(std::mt19937_64& rng, long index) {
  Trial t;
  static const std::vector<CostClass> classes = {
      CostClass::kSubmodular, CostClass::kCoverage,    CostClass::kXos,
      CostClass::kSubadditive, CostClass::kMatroidRank, CostClass::kGrossSubstitutes};
  const CostClass cls = classes[index % classes.size()];
  const int m = static_cast<int>(uniform_int(rng, 2, 3));
  const int max_n = cls == CostClass::kGrossSubstitutes ? 9 / m : 12 / m;
  const int n = static_cast<int>(uniform_int(rng, 2, std::min(4, max_n)));
  std::string family;
  switch (cls) {
    case CostClass::kSubmodular: family = uniform_int(rng, 0, 1) ? "general_coverage" : "general_tree"; break;
    case CostClass::kCoverage: family = "general_coverage"; break;
    case CostClass::kXos: family = "general_xos"; break;
    case CostClass::kSubadditive: family = "explicit_subadditive"; break;
    case CostClass::kMatroidRank: family = "bernoulli_hardness"; break;
    default: family = "general_tree"; break;
  }
  const Instance inst = random_instance(family, n, rng());
  t.tag = to_string(cls);
  t.instance = instance_to_json(inst);
  const auto r = check_preservation(inst.cost_ptr(), m, cls);
  t.require(r.original_in_class, "original cost fails " + to_string(cls));
  t.require(r.lifted.pass, "lift with m = " + std::to_string(m) + " fails: " + r.lifted.detail);
  return t;
}

Trial trial_chain(std::mt19937_64& rng) {
  Trial t;
  const Instance inst = pick(rng, {"bernoulli_coverage", "bernoulli_tree", "bernoulli_hardness", "bernoulli_xos",
                                   "general_coverage", "general_tree", "explicit_subadditive", "general_xos"},
                             2, 5, {}, t);
  t.instance = instance_to_json(inst);
  const auto ada = optimal_adaptive(inst);
  const auto fixed = optimal_fixed_order(inst);
  t.require(ada.utility >= fixed.utility, "adaptive < fixed: " + vs(ada.utility, fixed.utility));
  t.require(fixed.utility >= 0, "fixed < 0");
  t.require(eval_policy(inst, ada.tree) == ada.utility, "adaptive tree does not attain its value");
  t.require(eval_fixed_order(inst, fixed.strategy) == fixed.utility, "fixed strategy does not attain its value");
  std::vector<int> sigma(inst.size());
  std::iota(sigma.begin(), sigma.end(), 0);
  for (std::size_t k = sigma.size(); k > 1; --k) std::swap(sigma[k - 1], sigma[uniform_below(rng, k)]);
  const auto th = optimal_thresholds(inst, sigma);
  t.require(eval_fixed_order(inst, th.strategy) == th.utility, "threshold DP round trip");
  for (const auto& row : th.f) {
    for (std::size_t g = 1; g < row.size(); ++g) {
      t.require(row[g] <= row[g - 1], "f_i increasing on the grid");
      t.require(row[g - 1] - row[g] <= th.grid[g] - th.grid[g - 1], "f_i not 1-Lipschitz");
    }
  }
  if (!inst.is_bernoulli()) return t;
  const auto imp = optimal_impulsive(inst);
  t.require(fixed.utility >= imp.utility, "fixed < impulsive: " + vs(fixed.utility, imp.utility));
  const int n = inst.size();
  const int root = static_cast<int>(uniform_below(rng, n));
  std::vector<int> others;
  for (int i = 0; i < n; ++i) {
    if (i != root) others.push_back(i);
  }
  const auto order = random_order_subset(rng, others);
  const BoxSet opened = random_subset(rng, order);
  std::vector<int> rest;
  for (int i : others) {
    if (!opened.contains(i)) rest.push_back(i);
  }
  const MarginalUtilityContext ctx{root, random_subset(rng, rest)};
  const ImpulsiveWithDummies s{order, opened};
  const Rational un = marginal_utility(MarginalKind::kN, s, ctx, inst);
  const Rational uy = marginal_utility(MarginalKind::kY, s, ctx, inst);
  const Rational um = marginal_utility(MarginalKind::kM, s, ctx, inst);
  t.require(um <= uy && uy <= un, "u_M <= u_Y <= u_N violated");
  const Rational vr = inst.bernoulli(root).value;
  t.require(um == un - pq_of(s, inst).p_opened * vr, "u_M != u_N - p v_r");
  return t;
}

Trial trial_transform(std::mt19937_64& rng) {
  Trial t;
  RandomParams p;
  p.max_value = 4;
  p.max_atoms = 3;
  const Instance inst = pick(rng, {"general_coverage", "general_tree"}, 2, 3, p, t);
  t.instance = instance_to_json(inst);
  static const std::vector<Rational> epsilons = {Rational(1, 4), Rational(1, 2), Rational(1), Rational(2)};
  const Rational eps = epsilons[uniform_below(rng, epsilons.size())];
  const Rational opt = optimal_adaptive(inst).utility;
  const Instance coarse = discretize(inst, eps);
  const Rational opt_coarse = optimal_adaptive(coarse).utility;
  t.require(opt_coarse <= opt, "opt(T_eps) > opt: " + vs(opt_coarse, opt));
  t.require(opt <= opt_coarse + 2 * eps, "opt > opt(T_eps) + 2 eps: " + vs(opt, opt_coarse));
  const auto lifted = bernoullify(inst);
  if (lifted.instance.size() > kAdaptiveBound) {
    t.require(false, "lift too large for the adaptive solver");
    return t;
  }
  const Rational opt_lifted = optimal_adaptive(lifted.instance).utility;
  t.require(opt_lifted == opt, "opt(T) != opt: " + vs(opt_lifted, opt));
  // max over the copies of box i is distributed as box i.
  for (int i = 0; i < inst.size(); ++i) {
    FiniteDistribution law = FiniteDistribution::point(0);
    for (std::size_t k = 0; k < lifted.map.copies.size(); ++k) {
      if (lifted.map.copies[k].box == i) law = max_of(law, lifted.instance.box(static_cast<int>(k)));
    }
    t.require(law == inst.box(i), "max of copies differs from box " + std::to_string(i));
  }
  std::vector<int> all(lifted.instance.size());
  std::iota(all.begin(), all.end(), 0);
  const auto back = pull_back(inst, lifted, {random_order_subset(rng, all)});
  t.require(back.original_utility >= back.lifted_utility, "pull-back loses utility");
  const auto lifted_coarse = bernoullify(coarse);
  if (lifted_coarse.instance.size() <= kPermutationBound) {
    const auto imp = optimal_impulsive(lifted_coarse.instance);
    const Rational fixed = optimal_fixed_order(inst).utility;
    t.require(fixed >= imp.utility - 2 * eps, "opt_fixed(I) < opt_imp(T(T_eps(I))) - 2 eps");
    t.require(imp.utility >= opt - 2 * eps, "opt_imp(T(T_eps(I))) < opt(I) - 2 eps");
  }
  return t;
}

Trial trial_weitzman(std::mt19937_64& rng) {
  Trial t;
  const Instance inst = pick(rng, {"additive", "bernoulli_additive"}, 1, 6, {}, t);
  t.instance = instance_to_json(inst);
  const Rational w = weitzman(inst).utility;
  const Rational ada = optimal_adaptive(inst).utility;
  t.require(w == ada, "index policy vs adaptive: " + vs(w, ada));
  return t;
}

Trial run_trial(Suite suite, std::uint64_t seed, long index) {
  auto rng = make_rng(seed, (static_cast<std::uint64_t>(suite) << 40) ^ static_cast<std::uint64_t>(index));
  try {
    switch (suite) {
      case Suite::kT31: return trial_t31(rng);
      case Suite::kT44: return trial_t44(rng);
      case Suite::kL35: return trial_l35(rng);
      case Suite::kCancellation: return trial_cancellation(rng);
      case Suite::kPreservation: return trial_preservation(rng, index);
      case Suite::kChain: return trial_chain(rng);
      case Suite::kTransform: return trial_transform(rng);
      case Suite::kWeitzman: return trial_weitzman(rng);
    }
  } catch (const std::exception& e) {
    Trial t;
    t.pass = false;
    t.detail = std::string("exception: ") + e.what();
    return t;
  }
  return {};
}

}  // namespace

SuiteReport run_theorem_suite(Suite suite, long trials, std::uint64_t seed, int jobs) {
  if (trials < 0) throw DomainError("trials must be non-negative");
  std::vector<Trial> results(trials);
  const int workers = static_cast<int>(std::max(1L, std::min<long>(jobs, trials)));
  if (workers == 1) {
    for (long k = 0; k < trials; ++k) results[k] = run_trial(suite, seed, k);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (long k = w; k < trials; k += workers) results[k] = run_trial(suite, seed, k);
      });
    }
    for (auto& th : pool) th.join();
  }
  SuiteReport r;
  r.suite = suite;
  r.trials = trials;
  r.seed = seed;
  for (long k = 0; k < trials; ++k) {
    ++r.tallies[results[k].tag.empty() ? "untagged" : results[k].tag];
    if (results[k].pass) {
      ++r.passed;
    } else {
      r.failures.push_back({k, results[k].detail, results[k].instance});
    }
  }
  return r;
}

Json corpus_to_json(const CorpusReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json checks = Json::array();
    for (const auto& c : e.checks) {
      Json cj;
      cj["check"] = c.name;
      cj["basis"] = to_string(c.basis);
      cj["expected"] = c.expected;
      cj["got"] = c.got;
      cj["pass"] = c.pass;
      checks.push_back(std::move(cj));
    }
    Json ej;
    ej["name"] = e.name;
    ej["pass"] = e.pass();
    if (!e.error.empty()) ej["error"] = e.error;
    ej["checks"] = std::move(checks);
    entries.push_back(std::move(ej));
  }
  Json j;
  j["pass"] = r.pass();
  j["entries"] = std::move(entries);
  return j;
}

Json suite_to_json(const SuiteReport& r) {
  Json j;
  j["suite"] = to_string(r.suite);
  j["seed"] = r.seed;
  j["trials"] = r.trials;
  j["passed"] = r.passed;
  j["pass"] = r.pass();
  Json tallies = Json::object();
  for (const auto& [k, v] : r.tallies) tallies[k] = v;
  j["tallies"] = std::move(tallies);
  Json failures = Json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"trial", f.trial}, {"detail", f.detail}, {"instance", f.instance}});
  }
  j["counterexamples"] = std::move(failures);
  return j;
}

}  // namespace pandora
