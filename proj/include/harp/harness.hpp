// Copyright 2026 The HARP Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "harp/error.hpp"
#include "harp/evaluation.hpp"
#include "harp/hints.hpp"
#include "harp/lts.hpp"
#include "harp/prioritizers.hpp"
#include "harp/purpose.hpp"
#include "harp/random.hpp"
#include "harp/resemblance.hpp"
#include "harp/testgen.hpp"

namespace harp {

// ---------------------------------------------------------------------------
// Synthetic models

struct SyntheticModelParams {
  std::size_t states = 11;
  std::size_t branches = 2;  // states with out-degree > 1
  std::size_t joins = 1;     // states with in-degree > 1
  std::size_t loops = 2;     // DFS back edges
  std::size_t min_sinks = 1;
};

class InfeasibleParameters : public Error {
 public:
  using Error::Error;
};

/// Random connected model with exactly the requested branch, join and loop
/// counts as measured by model_metrics(). Every state is reachable from the
/// initial state "1" and at least `min_sinks` states have no successor.
///
/// Built as a random tree whose branching nodes have two children; loops are
/// back edges from leaves to ancestors and remaining joins are cross edges
/// between leaves and other subtrees. Candidates are checked against
/// model_metrics() and redrawn up to `max_attempts` times.
LtsModel gen_random_lts(const SyntheticModelParams& params, RandomSource& rng,
                        std::string name = "synthetic", std::size_t max_attempts = 2000);

// ---------------------------------------------------------------------------
// Fault planting

struct PlantOptions {
  double max_fraction = 0.5;  // of the suite
  std::size_t max_revealing = std::numeric_limits<std::size_t>::max();
  std::size_t max_literals = 2;
  std::size_t retries = 1000;
};

struct PlantedFaults {
  FaultReport report;
  std::map<std::string, TestPurpose> causes;  // fault id -> purpose defining it
};

// Ids of the cases a purpose-defined fault makes fail, in suite order.
std::vector<std::string> revealing_cases(const TestSuite& suite, const TestPurpose& cause,
                                         const LtsModel& model);

// Revealing set of `cause`; throws when it is empty or larger than the bounds.
std::vector<std::string> fault_from_purpose(const TestSuite& suite, const TestPurpose& cause,
                                            const LtsModel& model,
                                            const PlantOptions& options = {});

/// Plants `count` faults F1..Fk. Each is a random `*|L|*` or `*|L1|*|L2|*`
/// purpose over the labels of a randomly drawn case; a case fails iff it
/// matches. Draws revealing nothing or too much are redrawn.
PlantedFaults plant_faults(const LtsModel& model, const TestSuite& suite, std::size_t count,
                           RandomSource& rng, const PlantOptions& options = {});

// ---------------------------------------------------------------------------
// Experiments

struct Range {
  std::size_t lo = 0;
  std::size_t hi = 0;
};

struct ExperimentConfig {
  std::vector<Technique> techniques{Technique::harp};
  std::size_t repetitions = 1000;
  std::uint64_t seed = 1;
  std::vector<std::string> model_files;
  std::size_t synthetic_models = 0;
  Range states{25, 60};
  Range branches{5, 12};
  Range joins{2, 6};
  Range loops{1, 5};
  std::size_t min_sinks = 1;
  std::size_t faults_per_model = 1;
  std::size_t fault_max_revealing = 3;
  std::vector<HintQualityTarget> hint_targets{HintQualityTarget::good(), HintQualityTarget::bad()};
  std::vector<MetricKind> metrics{MetricKind::apfd};
  std::size_t loop_bound = 2;
  std::size_t min_suite_size = 20;
  std::size_t max_suite_size = 200;
  std::size_t max_object_attempts = 200;
  std::size_t threads = 1;
};

// `key = value` lines, '#' comments. Lists are comma separated; ranges are
// "lo-hi" or a single number. Throws ParseError on unknown keys.
ExperimentConfig parse_experiment_config(std::string_view document);

// One model with everything the trials need, prepared once.
struct ExperimentObject {
  std::string id;
  LtsModel model;
  TestSuite suite;
  PlantedFaults faults;
  std::map<HintKind, std::vector<SynthesizedHint>> hints;  // one per fault
  std::vector<TransitionProfile> profiles;
  std::map<HintKind, std::vector<std::size_t>> hinted;  // suite indices per kind
};

// Prepares a model from a file. Throws when no fault or hint can be derived.
ExperimentObject prepare_object(std::string id, LtsModel model, const ExperimentConfig& config,
                                RandomSource& rng);

// Synthetic object number `index`, redrawing models until one yields a
// suite within the size bounds and every requested hint kind.
ExperimentObject synthetic_object(std::size_t index, const ExperimentConfig& config);

struct TrialRecord {
  std::string model;
  std::string technique;
  std::string hint;  // good | bad | none
  std::uint64_t seed = 0;
  std::size_t trial = 0;
  std::string metric;
  double value = 0.0;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

struct A12Row {
  std::string model;  // object id, or "median" for the across-model median
  std::string metric;
  std::string treatment_a;
  std::string treatment_b;
  double statistic = 0.5;
  EffectLabel label = EffectLabel::small;
};

struct ExperimentResult {
  std::vector<TrialRecord> records;  // sorted
  std::vector<A12Row> summary;
};

std::uint64_t trial_seed(std::uint64_t base, std::string_view model, std::string_view technique,
                         std::string_view hint, std::size_t trial);

// "harp-good", "harp-bad", "arp-jaccard", ...
std::string treatment_name(std::string_view technique, std::string_view hint);

/// Runs every object x technique x hint kind for `repetitions` trials.
/// Records are sorted by (model, technique, hint, trial, metric) and values
/// rounded to 6 decimals; the summary is computed from the rounded values.
/// Any trial failure aborts with its (model, technique, hint, seed).
ExperimentResult run_experiment(const ExperimentConfig& config,
                                std::span<const ExperimentObject> objects);

// Loads config.model_files (paths as given), adds synthetic objects, runs.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Header: model,technique,hint,seed,trial,metric,value
std::string records_csv(std::span<const TrialRecord> records);
std::vector<TrialRecord> parse_records_csv(std::string_view document);

// Header: model,metric,treatment_a,treatment_b,a12,effect
std::string summary_csv(std::span<const A12Row> rows);

// Pairwise A12 tables from records, grouped per model and metric.
std::vector<A12Row> summarize(std::span<const TrialRecord> records);

}  // namespace harp
