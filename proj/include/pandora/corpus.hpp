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

// Canonical instances with frozen expected outcomes, and randomized suites
// that check the structural theorems exactly on generated instances.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pandora/io.hpp"

namespace pandora {

/// Where an expected value comes from.
enum class Basis {
  kPublishedExample,   // stated in the source text
  kIndependentOracle,  // computed by a separate brute-force method and frozen
  kByDefinition,       // immediate from a definition
};
std::string to_string(Basis b);

struct CheckResult {
  std::string name;
  Basis basis = Basis::kIndependentOracle;
  std::string expected;
  std::string got;
  bool pass = false;
};

struct EntryResult {
  std::string name;
  std::vector<CheckResult> checks;
  std::string error;  // set when the entry threw
  bool pass() const;
};

struct CorpusReport {
  std::vector<EntryResult> entries;
  bool pass() const;
};

std::vector<std::string> corpus_names();
EntryResult run_corpus_entry(const std::string& name);
CorpusReport run_corpus();

enum class Suite {
  kT31,            // Bernoulli + submodular: best impulsive = best adaptive
  kT44,            // submodular: best fixed order = best adaptive
  kL35,            // dummy split inequality and p partition identity
  kCancellation,   // c(h|T+l) - c(l|T+h) = c(h|T) - c(l|T)
  kPreservation,   // lifted costs stay in their class
  kChain,          // opt chain and u_M <= u_Y <= u_N
  kTransform,      // discretization sandwich, lift exactness, pull-back
  kWeitzman,       // index policy = best adaptive under additive costs
};
std::string to_string(Suite s);
Suite parse_suite(const std::string& name);
std::vector<Suite> all_suites();

struct SuiteFailure {
  long trial = 0;
  std::string detail;
  Json instance;
};

struct SuiteReport {
  Suite suite = Suite::kT31;
  long trials = 0;
  long passed = 0;
  std::uint64_t seed = 0;
  std::vector<SuiteFailure> failures;
  std::map<std::string, long> tallies;  // per-family / per-class trial counts
  bool pass() const { return passed == trials; }
};

/// Trial t draws everything from make_rng(seed, suite-and-t), so reports do
/// not depend on `jobs`.
SuiteReport run_theorem_suite(Suite suite, long trials, std::uint64_t seed, int jobs = 1);

Json corpus_to_json(const CorpusReport& r);
Json suite_to_json(const SuiteReport& r);

}  // namespace pandora
