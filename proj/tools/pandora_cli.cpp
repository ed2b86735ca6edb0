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

// pandora: solve, compare, validate, transform and stress Pandora's box
// instances with combinatorial inspection costs.
//
// Exit codes: 0 success, 1 a check failed, 2 usage or input error,
// 3 instance exceeds an enumeration bound.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "pandora/corpus.hpp"
#include "pandora/random.hpp"

namespace {

using pandora::Json;

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kCapability = 3;

struct Options {
  std::string input;
  std::string cls;
  std::string epsilon;
  std::string theorem;
  std::string op;
  std::string cmd = "verify";
  std::string action = "run";
  std::string output;
  std::string name;
  std::string family;
  long trials = 10000;
  std::uint64_t seed = 0;
  long suite_trials = 100;
  std::uint64_t suite_seed = 42;
  int jobs = 1;
  bool human = false;
  long n = 0;
  std::optional<int> alpha;
  std::optional<int> beta;
  long budget = 1;
  long queries = 1;
};

std::string digest(const Json& j) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : j.dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void render_human(const Json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render_human(v, prefix.empty() ? k : prefix + "." + k, out);
    return;
  }
  if (j.is_array() && std::any_of(j.begin(), j.end(), [](const Json& v) { return v.is_structured(); })) {
    for (std::size_t k = 0; k < j.size(); ++k) render_human(j[k], prefix + "[" + std::to_string(k) + "]", out);
    return;
  }
  out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
}

void emit(const Json& j, const Options& o) {
  if (o.human) {
    render_human(j, "", std::cout);
  } else {
    std::cout << j.dump(2) << "\n";
  }
}

Json command_echo(int argc, char** argv) {
  Json args = Json::array();
  for (int k = 1; k < argc; ++k) args.push_back(argv[k]);
  return args;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int run_solve(const Options& o, Json& report) {
  const pandora::Instance loaded = pandora::load_instance(o.input);
  auto counter = pandora::with_counter(loaded.cost_ptr());
  const pandora::Instance inst(loaded.boxes(), counter);
  report["instance_digest"] = digest(pandora::instance_to_json(loaded));
  report["class"] = o.cls;
  Json witness;
  pandora::Rational utility;
  if (o.cls == "adaptive") {
    auto r = pandora::optimal_adaptive(inst);
    utility = r.utility;
    witness = pandora::policy_to_json(r.tree);
    report["unique"] = r.unique;
  } else if (o.cls == "fixed") {
    auto r = pandora::optimal_fixed_order(inst, o.jobs);
    utility = r.utility;
    witness = pandora::strategy_to_json(r.strategy);
  } else if (o.cls == "impulsive") {
    auto r = pandora::optimal_impulsive(inst);
    utility = r.utility;
    witness = pandora::strategy_to_json(r.strategy);
  } else if (o.cls == "weitzman") {
    auto r = pandora::weitzman(inst);
    utility = r.utility;
    witness = pandora::strategy_to_json(r.strategy);
    Json z = Json::array();
    for (const auto& rv : r.reservation) z.push_back(pandora::rational_json(rv.z));
    report["reservation_values"] = std::move(z);
  } else {
    throw CLI::ValidationError("--class", "expected adaptive, fixed, impulsive or weitzman");
  }
  report["utility"] = pandora::rational_json(utility);
  report["witness"] = std::move(witness);
  report["queries_used"] = counter->count();
  return kOk;
}

int run_gap(const Options& o, Json& report) {
  const pandora::Instance inst = pandora::load_instance(o.input);
  report["instance_digest"] = digest(pandora::instance_to_json(inst));
  report["gap"] = pandora::gap_to_json(pandora::adaptivity_gap(inst, o.jobs));
  return kOk;
}

int run_validate(const Options& o, Json& report) {
  pandora::CostPtr cost;
  const bool is_file = std::ifstream(o.input).good();
  if (is_file) {
    Json j = pandora::read_json_file(o.input);
    cost = j.contains("kind") ? pandora::cost_from_json(j) : pandora::instance_from_json(j).cost_ptr();
  } else {
    cost = pandora::load_instance(o.input).cost_ptr();
  }
  const auto r = pandora::validate_class(*cost, pandora::parse_cost_class(o.cls));
  report["validation"] = pandora::validation_to_json(r);
  return r.pass ? kOk : kFail;
}

int run_transform(const Options& o, Json& report) {
  const pandora::Instance inst = pandora::load_instance(o.input);
  report["op"] = o.op;
  Json out_instance;
  if (o.op == "discretize") {
    if (o.epsilon.empty()) throw CLI::ValidationError("--epsilon", "discretize needs --epsilon p/q");
    const pandora::Rational eps = pandora::parse_rational(o.epsilon);
    report["epsilon"] = pandora::rational_json(eps);
    report["kappa"] = pandora::rational_json(pandora::kappa_epsilon(inst, eps));
    out_instance = pandora::instance_to_json(pandora::discretize(inst, eps));
  } else if (o.op == "bernoullify") {
    const auto lifted = pandora::bernoullify(inst);
    out_instance = pandora::instance_to_json(lifted.instance);
    report["map"] = pandora::map_to_json(lifted.map);
  } else {
    throw CLI::ValidationError("--op", "expected discretize or bernoullify");
  }
  if (!o.output.empty()) {
    std::ofstream(o.output) << out_instance.dump(2) << "\n";
    report["written"] = o.output;
  }
  report["instance"] = std::move(out_instance);
  return kOk;
}

int run_hardness(const Options& o, Json& report) {
  if (o.alpha.has_value() != o.beta.has_value()) {
    throw CLI::ValidationError("--override-alpha", "overrides come in pairs");
  }
  const auto params = o.alpha ? pandora::hardness_params_override(o.n, *o.alpha, *o.beta)
                              : pandora::hardness_params(o.n);
  report["banner"] = pandora::kRegimeBanner;
  if (o.cmd == "verify") {
    const auto r = pandora::verify_family(params);
    report["family"] = pandora::family_to_json(r);
    return !r.regime_reached || r.pass ? kOk : kFail;
  }
  if (o.cmd == "distinguish") {
    pandora::DistinguishConfig cfg;
    cfg.n = o.n;
    cfg.alpha = o.alpha;
    cfg.beta = o.beta;
    cfg.budget = o.budget;
    cfg.queries = o.queries;
    cfg.trials = o.trials;
    cfg.seed = o.seed;
    cfg.jobs = o.jobs;
    const auto r = pandora::distinguish_experiment(cfg);
    report["distinguish"] = pandora::distinguish_to_json(r);
    return r.counts_exact && r.tail_within_3se ? kOk : kFail;
  }
  if (o.cmd == "agreement") {
    if (o.n > 20) throw pandora::CapabilityError("exhaustive agreement is limited to n <= 20");
    const auto planted = pandora::sample_subset(o.n, params.alpha, o.seed);
    report["planted"] = pandora::box_set_json(planted);
    const auto r = pandora::exhaustive_agreement(static_cast<int>(o.n), params.alpha, params.beta, planted);
    report["agreement"] = pandora::agreement_to_json(r);
    return r.pass() ? kOk : kFail;
  }
  throw CLI::ValidationError("--cmd", "expected verify, distinguish or agreement");
}

int run_corpus(const Options& o, Json& report) {
  if (o.action == "list") {
    report["entries"] = pandora::corpus_names();
    return kOk;
  }
  if (o.action != "run") throw CLI::ValidationError("action", "expected run or list");
  const auto r = pandora::run_corpus();
  report["corpus"] = pandora::corpus_to_json(r);
  return r.pass() ? kOk : kFail;
}

int run_verify(const Options& o, Json& report) {
  std::vector<pandora::Suite> suites;
  if (o.theorem == "all") {
    suites = pandora::all_suites();
  } else {
    suites.push_back(pandora::parse_suite(o.theorem));
  }
  Json reports = Json::array();
  bool pass = true;
  for (auto s : suites) {
    const auto r = pandora::run_theorem_suite(s, o.suite_trials, o.suite_seed, o.jobs);
    pass = pass && r.pass();
    reports.push_back(pandora::suite_to_json(r));
  }
  report["suites"] = std::move(reports);
  report["pass"] = pass;
  return pass ? kOk : kFail;
}

int run_instance(const Options& o, Json& report) {
  if (!o.input.empty()) {
    report = pandora::instance_to_json(pandora::load_instance(o.input));
  } else if (!o.family.empty()) {
    report = pandora::instance_to_json(pandora::random_instance(o.family, static_cast<int>(o.n), o.seed));
  } else if (!o.name.empty()) {
    report = pandora::instance_to_json(pandora::canonical(o.name));
  } else {
    Json names = pandora::canonical_names();
    report["canonical"] = std::move(names);
    report["families"] = pandora::random_families();
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solvers and checks for Pandora's box with combinatorial costs"};
  app.require_subcommand(1);
  Options o;

  auto add_input = [&](CLI::App* sub) { sub->add_option("-i,--input", o.input, "instance file or canonical name")->required(); };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--human", o.human, "plain key: value output instead of JSON");
  };

  auto* solve = app.add_subcommand("solve", "optimal strategy of one class");
  add_input(solve);
  solve->add_option("--class", o.cls, "adaptive | fixed | impulsive | weitzman")->required();
  add_common(solve);

  auto* gap = app.add_subcommand("gap", "compare the best adaptive, fixed-order and impulsive strategies");
  add_input(gap);
  add_common(gap);

  auto* validate = app.add_subcommand("validate", "check a cost function against a class");
  add_input(validate);
  validate->add_option("--class", o.cls, "monotone_normalized | submodular | subadditive | matroid_rank | "
                                         "gross_substitutes | coverage | xos | budget_additive")
      ->required();
  add_common(validate);

  auto* transform = app.add_subcommand("transform", "discretize or lift to a Bernoulli instance");
  add_input(transform);
  transform->add_option("--op", o.op, "discretize | bernoullify")->required();
  transform->add_option("--epsilon", o.epsilon, "grid step p/q for discretize");
  transform->add_option("-o,--output", o.output, "also write the transformed instance here");
  add_common(transform);

  auto* hardness = app.add_subcommand("hardness", "query-hardness family checks");
  hardness->add_option("--n", o.n, "number of boxes")->required();
  hardness->add_option("--override-alpha", o.alpha, "alpha instead of the formula");
  hardness->add_option("--override-beta", o.beta, "beta instead of the formula");
  hardness->add_option("--cmd", o.cmd, "verify | distinguish | agreement");
  hardness->add_option("--budget", o.budget, "queries allowed per trial");
  hardness->add_option("--queries", o.queries, "random alpha-sets issued per trial");
  hardness->add_option("--trials", o.trials, "distinguishing trials (default 10000)");
  hardness->add_option("--seed", o.seed, "seed");
  add_common(hardness);

  auto* corpus = app.add_subcommand("corpus", "re-derive every canonical expectation");
  corpus->add_option("action", o.action, "run | list");
  add_common(corpus);

  auto* verify = app.add_subcommand("verify", "randomized theorem suites");
  verify->add_option("--theorem", o.theorem, "T31 | T44 | L35 | cancellation | preservation | chain | "
                                             "transform | weitzman | all")
      ->required();
  verify->add_option("--trials", o.suite_trials, "trials (default 100)");
  verify->add_option("--seed", o.suite_seed, "seed (default 42)");
  add_common(verify);

  auto* instance = app.add_subcommand("instance", "emit a canonical, random or loaded instance");
  instance->add_option("-i,--input", o.input, "re-emit this instance file in canonical form");
  instance->add_option("--name", o.name, "canonical instance name");
  instance->add_option("--family", o.family, "random family");
  instance->add_option("--n", o.n, "boxes for random instances");
  instance->add_option("--seed", o.seed, "seed for random instances");
  add_common(instance);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  Json report;
  int code = kOk;
  try {
    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name != "instance") report["command"] = command_echo(argc, argv);
    if (name == "solve") code = run_solve(o, report);
    if (name == "gap") code = run_gap(o, report);
    if (name == "validate") code = run_validate(o, report);
    if (name == "transform") code = run_transform(o, report);
    if (name == "hardness") code = run_hardness(o, report);
    if (name == "corpus") code = run_corpus(o, report);
    if (name == "verify") code = run_verify(o, report);
    if (name == "instance") code = run_instance(o, report);
    if (name == "solve" || name == "gap" || name == "hardness") report["wall_seconds"] = seconds_since(t0);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const pandora::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const pandora::CapabilityError& e) {
    std::cerr << "capability error: " << e.what() << "\n";
    return kCapability;
  } catch (const pandora::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kFail;
  }
  emit(report, o);
  return code;
}
