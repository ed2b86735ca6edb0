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

#include "pandora/io.hpp"

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

namespace pandora {
namespace {

[[noreturn]] void schema_error(const std::string& what) { throw ParseError(what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) schema_error(std::string("expected an object with field '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) schema_error(std::string("missing field '") + key + "'");
  return *it;
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) schema_error(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

std::vector<Rational> rationals_from_json(const Json& j) {
  if (!j.is_array()) schema_error("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& v : j) out.push_back(rational_from_json(v));
  return out;
}

Json rationals_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& r : v) out.push_back(rational_json(r));
  return out;
}

std::vector<int> ints_from_json(const Json& j) {
  if (!j.is_array()) schema_error("expected an array of integers");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) schema_error("expected an integer, got " + v.dump());
    out.push_back(v.get<int>());
  }
  return out;
}

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : DomainError(line == 0 ? what
                            : what + " (line " + std::to_string(line) + ", column " +
                                  std::to_string(column) + ")"),
      line_(line),
      column_(column) {}

Json parse_json(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is the 1-based offset of the offending character.
    const std::size_t offset = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t k = 0; k < offset; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string msg = e.what();
    if (auto pos = msg.find("parse error"); pos != std::string::npos) msg = msg.substr(pos);
    msg = std::regex_replace(msg, std::regex(" at line [0-9]+, column [0-9]+"), "");
    throw ParseError(source + ": " + msg, line, column);
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json(buffer.str(), path);
}

Json rational_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
  schema_error("rationals must be \"p/q\" strings or integers, got " + j.dump());
}

Json box_set_json(const BoxSet& s) {
  Json out = Json::array();
  for (int b : s.elements()) out.push_back(b);
  return out;
}

BoxSet box_set_from_json(const Json& j) {
  const auto v = ints_from_json(j);
  for (int b : v) {
    if (b < 0) schema_error("negative box index " + std::to_string(b));
  }
  return BoxSet(std::span<const int>(v));
}

Json cost_to_json(const CostOracle& cost) {
  if (auto c = dynamic_cast<const QueryCountingOracle*>(&cost)) return cost_to_json(*c->inner());
  Json j;
  j["kind"] = cost.kind();
  if (auto c = dynamic_cast<const ExplicitCost*>(&cost)) {
    j["n"] = c->arity();
    Json table = Json::object();
    for (std::uint64_t m = 0; m < c->table().size(); ++m) {
      table[BoxSet::from_mask(m).key()] = rational_json(c->table()[m]);
    }
    j["table"] = std::move(table);
  } else if (auto c = dynamic_cast<const AdditiveCost*>(&cost)) {
    j["per_box"] = rationals_json(c->per_box());
  } else if (auto c = dynamic_cast<const BudgetAdditiveCost*>(&cost)) {
    j["per_box"] = rationals_json(c->per_box());
    j["budget"] = rational_json(c->budget());
  } else if (auto c = dynamic_cast<const CoverageCost*>(&cost)) {
    j["n"] = c->arity();
    j["weights"] = rationals_json(c->weights());
    Json covers = Json::array();
    for (const auto& g : c->covers()) covers.push_back(box_set_json(g));
    j["covers"] = std::move(covers);
  } else if (auto c = dynamic_cast<const XosCost*>(&cost)) {
    j["n"] = c->arity();
    Json clauses = Json::array();
    for (const auto& a : c->clauses()) clauses.push_back(rationals_json(a));
    j["clauses"] = std::move(clauses);
  } else if (auto c = dynamic_cast<const TreeClosureCost*>(&cost)) {
    j["parent"] = c->parent();
    j["node_costs"] = rationals_json(c->node_costs());
  } else if (auto c = dynamic_cast<const HardnessCost*>(&cost)) {
    j["n"] = c->arity();
    j["alpha"] = c->alpha();
    j["beta"] = c->beta();
    if (c->planted()) j["planted"] = box_set_json(*c->planted());
  } else if (auto c = dynamic_cast<const ProjectedCost*>(&cost)) {
    j["owner"] = c->owner();
    j["base"] = cost_to_json(*c->base());
  } else if (auto c = dynamic_cast<const MarginalCost*>(&cost)) {
    j["conditioning"] = box_set_json(c->conditioning());
    j["base"] = cost_to_json(*c->base());
  } else {
    throw DomainError("no JSON schema for cost kind '" + cost.kind() + "'");
  }
  return j;
}

CostPtr cost_from_json(const Json& j) {
  const Json& kind_field = field(j, "kind");
  if (!kind_field.is_string()) schema_error("cost 'kind' must be a string");
  const std::string kind = kind_field.get<std::string>();
  if (kind == "explicit") {
    const int n = int_field(j, "n");
    if (n < 0 || n > 24) schema_error("explicit tables need 0 <= n <= 24");
    const Json& table = field(j, "table");
    if (!table.is_object()) schema_error("explicit 'table' must be an object keyed by subsets");
    const std::size_t size = std::size_t{1} << n;
    if (table.size() != size) {
      schema_error("explicit table has " + std::to_string(table.size()) + " entries, expected " +
                   std::to_string(size));
    }
    std::vector<std::optional<Rational>> values(size);
    for (const auto& [key, value] : table.items()) {
      const BoxSet s = BoxSet::from_key(key);
      if (s.bound() > n) schema_error("table key '" + key + "' mentions a box >= n");
      values[s.to_mask()] = rational_from_json(value);
    }
    std::vector<Rational> out;
    for (std::size_t m = 0; m < size; ++m) {
      if (!values[m]) schema_error("table lacks subset '" + BoxSet::from_mask(m).key() + "'");
      out.push_back(*values[m]);
    }
    return std::make_shared<ExplicitCost>(n, std::move(out));
  }
  if (kind == "additive") return std::make_shared<AdditiveCost>(rationals_from_json(field(j, "per_box")));
  if (kind == "budget_additive") {
    return std::make_shared<BudgetAdditiveCost>(rationals_from_json(field(j, "per_box")),
                                                rational_from_json(field(j, "budget")));
  }
  if (kind == "coverage") {
    std::vector<BoxSet> covers;
    const Json& cj = field(j, "covers");
    if (!cj.is_array()) schema_error("'covers' must be an array");
    for (const auto& g : cj) covers.push_back(box_set_from_json(g));
    return std::make_shared<CoverageCost>(int_field(j, "n"), rationals_from_json(field(j, "weights")),
                                          std::move(covers));
  }
  if (kind == "xos") {
    std::vector<std::vector<Rational>> clauses;
    const Json& cj = field(j, "clauses");
    if (!cj.is_array()) schema_error("'clauses' must be an array");
    for (const auto& a : cj) clauses.push_back(rationals_from_json(a));
    return std::make_shared<XosCost>(int_field(j, "n"), std::move(clauses));
  }
  if (kind == "tree") {
    return std::make_shared<TreeClosureCost>(ints_from_json(field(j, "parent")),
                                             rationals_from_json(field(j, "node_costs")));
  }
  if (kind == "hardness") {
    std::optional<BoxSet> planted;
    if (j.contains("planted")) planted = box_set_from_json(j["planted"]);
    return std::make_shared<HardnessCost>(int_field(j, "n"), int_field(j, "alpha"),
                                          int_field(j, "beta"), planted);
  }
  if (kind == "projected") {
    return std::make_shared<ProjectedCost>(cost_from_json(field(j, "base")),
                                           ints_from_json(field(j, "owner")));
  }
  if (kind == "marginal") {
    return std::make_shared<MarginalCost>(cost_from_json(field(j, "base")),
                                          box_set_from_json(field(j, "conditioning")));
  }
  schema_error("unknown cost kind '" + kind + "'");
}

Json distribution_to_json(const FiniteDistribution& d) {
  Json atoms = Json::array();
  for (const auto& a : d.atoms()) atoms.push_back(Json::array({rational_json(a.value), rational_json(a.prob)}));
  Json j;
  j["atoms"] = std::move(atoms);
  return j;
}

FiniteDistribution distribution_from_json(const Json& j) {
  const Json& aj = field(j, "atoms");
  if (!aj.is_array() || aj.empty()) schema_error("'atoms' must be a non-empty array");
  std::vector<Atom> atoms;
  for (const auto& a : aj) {
    if (!a.is_array() || a.size() != 2) schema_error("each atom must be [value, prob], got " + a.dump());
    atoms.push_back({rational_from_json(a[0]), rational_from_json(a[1])});
  }
  return FiniteDistribution(std::move(atoms));
}

Json instance_to_json(const Instance& instance) {
  Json boxes = Json::array();
  for (const auto& d : instance.boxes()) boxes.push_back(distribution_to_json(d));
  Json j;
  j["boxes"] = std::move(boxes);
  j["cost"] = cost_to_json(instance.cost());
  j["class"] = instance.declared_class();
  return j;
}

Instance instance_from_json(const Json& j) {
  // Transform reports wrap the instance; accept them directly.
  if (j.is_object() && !j.contains("boxes") && j.contains("instance")) return instance_from_json(j["instance"]);
  const Json& bj = field(j, "boxes");
  if (!bj.is_array()) schema_error("'boxes' must be an array");
  std::vector<FiniteDistribution> boxes;
  for (const auto& b : bj) boxes.push_back(distribution_from_json(b));
  std::string cls;
  if (j.contains("class")) {
    if (!j["class"].is_string()) schema_error("'class' must be a string");
    cls = j["class"].get<std::string>();
  }
  return Instance(std::move(boxes), cost_from_json(field(j, "cost")), cls);
}

Instance load_instance(const std::string& path_or_name) {
  if (std::filesystem::exists(path_or_name)) return instance_from_json(read_json_file(path_or_name));
  try {
    return canonical(path_or_name);
  } catch (const DomainError&) {
    throw ParseError("'" + path_or_name + "' is neither a readable file nor a canonical instance name");
  }
}

Json strategy_to_json(const ImpulsiveStrategy& s) {
  Json j;
  j["order"] = s.order;
  return j;
}

Json strategy_to_json(const ImpulsiveWithDummies& s) {
  Json j;
  j["order"] = s.order;
  j["opened"] = box_set_json(s.opened);
  return j;
}

Json strategy_to_json(const FixedOrderThresholds& s) {
  Json j;
  j["sigma"] = s.sigma;
  Json t = Json::array();
  for (const auto& x : s.thresholds) t.push_back(to_string(x));
  j["thresholds"] = std::move(t);
  return j;
}

Json policy_to_json(const PolicyNode& node) {
  Json j;
  if (node.is_halt()) {
    j["halt"] = true;
    return j;
  }
  j["open"] = *node.open;
  Json children = Json::object();
  for (const auto& [v, child] : node.children) children[to_string(v)] = policy_to_json(child);
  j["children"] = std::move(children);
  return j;
}

ImpulsiveWithDummies impulsive_from_json(const Json& j) {
  ImpulsiveWithDummies s;
  s.order = ints_from_json(field(j, "order"));
  s.opened = j.contains("opened") ? box_set_from_json(j["opened"])
                                  : BoxSet(std::span<const int>(s.order));
  return s;
}

FixedOrderThresholds fixed_order_from_json(const Json& j) {
  FixedOrderThresholds s;
  s.sigma = ints_from_json(field(j, "sigma"));
  const Json& tj = field(j, "thresholds");
  if (!tj.is_array()) schema_error("'thresholds' must be an array");
  for (const auto& t : tj) {
    if (t.is_string()) {
      s.thresholds.push_back(parse_threshold(t.get<std::string>()));
    } else {
      s.thresholds.push_back(Threshold(rational_from_json(t)));
    }
  }
  return s;
}

PolicyNode policy_from_json(const Json& j) {
  if (!j.is_object()) schema_error("policy node must be an object");
  if (j.contains("halt")) return PolicyNode::halt();
  PolicyNode node;
  node.open = int_field(j, "open");
  const Json& cj = field(j, "children");
  if (!cj.is_object()) schema_error("'children' must be an object keyed by value");
  for (const auto& [key, child] : cj.items()) {
    node.children.push_back({parse_rational(key), policy_from_json(child)});
  }
  std::sort(node.children.begin(), node.children.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return node;
}

Json map_to_json(const BernoullificationMap& map) {
  Json j;
  j["original_size"] = map.original_size;
  j["grid"] = rationals_json(map.grid);
  Json pairs = Json::array();
  for (const auto& c : map.copies) {
    pairs.push_back(Json::array({c.box, c.atom, rational_json(c.value), rational_json(c.weight)}));
  }
  j["pairs"] = std::move(pairs);
  Json dropped = Json::array();
  for (const auto& c : map.dropped) {
    dropped.push_back(Json::array({c.box, c.atom, rational_json(c.value), rational_json(c.weight)}));
  }
  j["dropped"] = std::move(dropped);
  return j;
}

Json validation_to_json(const ValidationResult& r) {
  Json j;
  j["class"] = to_string(r.cost_class);
  j["pass"] = r.pass;
  if (!r.pass) {
    Json sets = Json::array();
    for (const auto& s : r.sets) sets.push_back(box_set_json(s));
    j["witness"] = {{"sets", std::move(sets)}, {"boxes", r.boxes}};
  }
  j["detail"] = r.detail;
  return j;
}

Json gap_to_json(const GapReport& r) {
  Json j;
  j["opt_adaptive"] = rational_json(r.opt_adaptive);
  j["opt_fixed_order"] = rational_json(r.opt_fixed_order);
  j["opt_impulsive"] = r.opt_impulsive ? rational_json(*r.opt_impulsive) : Json(nullptr);
  j["strict_gap"] = {{"adaptive_vs_fixed", r.strict_adaptive_vs_fixed},
                     {"fixed_vs_impulsive", r.strict_fixed_vs_impulsive},
                     {"adaptive_vs_impulsive", r.strict_adaptive_vs_impulsive}};
  j["adaptive_unique"] = r.adaptive_unique;
  Json witnesses;
  witnesses["adaptive"] = policy_to_json(r.adaptive_witness);
  witnesses["fixed_order"] = strategy_to_json(r.fixed_witness);
  witnesses["impulsive"] = r.impulsive_witness ? strategy_to_json(*r.impulsive_witness) : Json(nullptr);
  j["witnesses"] = std::move(witnesses);
  return j;
}

Json params_to_json(const HardnessParams& p) {
  Json j;
  j["n"] = p.n;
  j["alpha"] = p.alpha;
  j["beta"] = p.beta;
  j["M"] = p.m;
  j["p"] = p.p;
  j["overridden"] = p.overridden;
  return j;
}

Json family_to_json(const FamilyReport& r) {
  Json j;
  j["params"] = params_to_json(r.params);
  j["regime_reached"] = r.regime_reached;
  j["verdict"] = r.verdict;
  j["pass"] = r.pass;
  j["baseline_max"] = r.baseline_max;
  j["baseline_argmax"] = r.baseline_argmax;
  j["planted_utility"] = r.planted_utility;
  j["planted_lower_bound"] = r.planted_lower_bound;
  j["positive_baseline_sizes"] = r.positive_baseline_sizes;
  j["bound_violations"] = r.bound_violations;
  j["case_counts"] = {{"s_at_least_alpha", r.case_counts[1]},
                      {"between_21beta_and_alpha", r.case_counts[2]},
                      {"below_21beta", r.case_counts[3]},
                      {"empty", r.case_counts[4]}};
  j["exact_checks"] = r.exact_checks;
  j["exact_max_rel_error"] = r.exact_max_rel_error;
  return j;
}

Json distinguish_to_json(const DistinguishReport& r) {
  Json j;
  j["banner"] = r.banner;
  j["params"] = params_to_json(r.params);
  j["trials"] = r.trials;
  j["distinguishing_trials"] = r.distinguishing_trials;
  j["aborted_trials"] = r.aborted_trials;
  j["distinguish_rate"] = r.distinguish_rate;
  j["counts_exact"] = r.counts_exact;
  j["total_queries"] = r.total_queries;
  Json tail;
  tail["hits"] = r.tail_hits;
  tail["empirical"] = r.empirical_tail;
  tail["exact"] = r.exact_tail;
  tail["standard_error"] = r.standard_error;
  tail["z"] = r.tail_z;
  tail["within_3se"] = r.tail_within_3se;
  j["overlap_tail"] = std::move(tail);
  j["overlap_histogram"] = r.overlap_histogram;
  j["overlap_pmf"] = r.overlap_pmf;
  j["max_bin_z"] = r.max_bin_z;
  return j;
}

Json agreement_to_json(const AgreementReport& r) {
  Json j;
  j["sets"] = r.sets;
  j["disagreements"] = r.disagreements;
  j["agree_violations"] = r.agree_violations;
  j["iff_violations"] = r.iff_violations;
  j["large_set_exceptions"] = r.large_set_exceptions;
  j["first_exception"] = r.first_exception ? box_set_json(*r.first_exception) : Json(nullptr);
  j["pass"] = r.pass();
  return j;
}

}  // namespace pandora
