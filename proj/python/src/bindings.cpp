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

// Low-level extension module. Instances, costs and reports cross the boundary
// as JSON text in the library's own schema; the pandora package turns them into
// dicts and fractions.Fraction values.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pandora/corpus.hpp"

namespace py = pybind11;
using namespace pandora;

namespace {

Instance parse_instance(const std::string& text) { return instance_from_json(parse_json(text)); }

std::string solve(const std::string& instance, const std::string& cls, int jobs) {
  const Instance inst = parse_instance(instance);
  Json out;
  out["class"] = cls;
  if (cls == "adaptive") {
    const AdaptiveResult r = optimal_adaptive(inst);
    out["utility"] = rational_json(r.utility);
    out["witness"] = policy_to_json(r.tree);
    out["unique"] = r.unique;
  } else if (cls == "fixed") {
    const FixedOrderResult r = optimal_fixed_order(inst, jobs);
    out["utility"] = rational_json(r.utility);
    out["witness"] = strategy_to_json(r.strategy);
  } else if (cls == "impulsive") {
    const ImpulsiveResult r = optimal_impulsive(inst);
    out["utility"] = rational_json(r.utility);
    out["witness"] = strategy_to_json(r.strategy);
  } else if (cls == "weitzman") {
    const WeitzmanResult r = weitzman(inst);
    out["utility"] = rational_json(r.utility);
    out["witness"] = strategy_to_json(r.strategy);
  } else {
    throw DomainError("unknown strategy class '" + cls + "'");
  }
  return out.dump();
}

std::string evaluate(const std::string& instance, const std::string& strategy) {
  const Instance inst = parse_instance(instance);
  const Json s = parse_json(strategy);
  Rational u;
  if (s.contains("sigma")) {
    u = eval_fixed_order(inst, fixed_order_from_json(s));
  } else if (s.contains("order")) {
    u = eval_impulsive(inst, ImpulsiveStrategy{impulsive_from_json(s).order});
  } else {
    u = eval_policy(inst, policy_from_json(s));
  }
  return to_string(u);
}

std::string bernoullify_json(const std::string& instance) {
  const Bernoullified b = bernoullify(parse_instance(instance));
  Json out;
  out["instance"] = instance_to_json(b.instance);
  out["map"] = map_to_json(b.map);
  return out.dump();
}

}  // namespace

PYBIND11_MODULE(_pandora, m) {
  m.doc() = "Exact Pandora's box solvers with combinatorial costs";

  py::register_exception<CapabilityError>(m, "CapabilityError", PyExc_OverflowError);
  auto domain = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", domain.ptr());

  m.def("canonical", [](const std::string& name) { return instance_to_json(canonical(name)).dump(); });
  m.def("canonical_names", &canonical_names);
  m.def("random_families", &random_families);
  m.def("random_instance", [](const std::string& family, int n, std::uint64_t seed) {
    return instance_to_json(random_instance(family, n, seed)).dump();
  });
  m.def("normalize_instance", [](const std::string& text) { return instance_to_json(parse_instance(text)).dump(); });
  m.def("eval_cost", [](const std::string& instance, const std::vector<int>& boxes) {
    return to_string(parse_instance(instance).cost().eval(BoxSet(std::span<const int>(boxes))));
  });
  m.def("validate", [](const std::string& instance, const std::string& cls) {
    return validation_to_json(validate_class(parse_instance(instance).cost(), parse_cost_class(cls))).dump();
  });
  m.def("solve", &solve, py::arg("instance"), py::arg("cls"), py::arg("jobs") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def("evaluate", &evaluate);
  m.def("gap", [](const std::string& instance, int jobs) {
    return gap_to_json(adaptivity_gap(parse_instance(instance), jobs)).dump();
  }, py::arg("instance"), py::arg("jobs") = 1, py::call_guard<py::gil_scoped_release>());
  m.def("reservation_value", [](const std::string& box, const std::string& cost) {
    const ReservationValue z = reservation_value(distribution_from_json(parse_json(box)), parse_rational(cost));
    return py::make_tuple(to_string(z.z), z.never_open);
  });
  m.def("discretize", [](const std::string& instance, const std::string& epsilon) {
    return instance_to_json(discretize(parse_instance(instance), parse_rational(epsilon))).dump();
  });
  m.def("kappa", [](const std::string& instance, const std::string& epsilon) {
    return to_string(kappa_epsilon(parse_instance(instance), parse_rational(epsilon)));
  });
  m.def("bernoullify", &bernoullify_json);
  m.def("hardness_params", [](long n) { return params_to_json(hardness_params(n)).dump(); });
  m.def("verify_family", [](long n) { return family_to_json(verify_family(hardness_params(n))).dump(); });
  m.def("distinguish", [](long n, std::optional<int> alpha, std::optional<int> beta, long trials,
                          std::uint64_t seed) {
    DistinguishConfig c;
    c.n = n;
    c.alpha = alpha;
    c.beta = beta;
    c.trials = trials;
    c.seed = seed;
    return distinguish_to_json(distinguish_experiment(c)).dump();
  }, py::arg("n"), py::arg("alpha") = py::none(), py::arg("beta") = py::none(),
     py::arg("trials") = 10000, py::arg("seed") = 0, py::call_guard<py::gil_scoped_release>());
  m.def("run_suite", [](const std::string& name, long trials, std::uint64_t seed, int jobs) {
    return suite_to_json(run_theorem_suite(parse_suite(name), trials, seed, jobs)).dump();
  }, py::arg("name"), py::arg("trials"), py::arg("seed") = 42, py::arg("jobs") = 1,
     py::call_guard<py::gil_scoped_release>());
  m.def("run_corpus", [] { return corpus_to_json(run_corpus()).dump(); },
        py::call_guard<py::gil_scoped_release>());
}
