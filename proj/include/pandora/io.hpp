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

// JSON schema for costs, instances, strategies and transformation maps.
// Rationals are "p/q" strings; field order is stable.

#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "pandora/cost_classes.hpp"
#include "pandora/hardness.hpp"
#include "pandora/solvers.hpp"
#include "pandora/transforms.hpp"

namespace pandora {

using Json = nlohmann::ordered_json;

/// Malformed JSON text or schema violation. line/column are 1-based; 0 when
/// the error is structural rather than textual.
class ParseError : public DomainError {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Parses text, reporting syntax errors with line and column.
Json parse_json(std::string_view text, const std::string& source = "<input>");
Json read_json_file(const std::string& path);

Json rational_json(const Rational& r);
Rational rational_from_json(const Json& j);
Json box_set_json(const BoxSet& s);
BoxSet box_set_from_json(const Json& j);

Json cost_to_json(const CostOracle& cost);
CostPtr cost_from_json(const Json& j);

Json distribution_to_json(const FiniteDistribution& d);
FiniteDistribution distribution_from_json(const Json& j);

Json instance_to_json(const Instance& instance);
Instance instance_from_json(const Json& j);
/// Path or canonical name (example1, hardness_baseline_100000, ...).
Instance load_instance(const std::string& path_or_name);

Json strategy_to_json(const ImpulsiveStrategy& s);
Json strategy_to_json(const ImpulsiveWithDummies& s);
Json strategy_to_json(const FixedOrderThresholds& s);
Json policy_to_json(const PolicyNode& node);
ImpulsiveWithDummies impulsive_from_json(const Json& j);
FixedOrderThresholds fixed_order_from_json(const Json& j);
PolicyNode policy_from_json(const Json& j);

Json map_to_json(const BernoullificationMap& map);
Json validation_to_json(const ValidationResult& r);
Json gap_to_json(const GapReport& r);
Json params_to_json(const HardnessParams& p);
Json family_to_json(const FamilyReport& r);
Json distinguish_to_json(const DistinguishReport& r);
Json agreement_to_json(const AgreementReport& r);

}  // namespace pandora
