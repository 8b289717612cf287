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

#include <gtest/gtest.h>

#include <map>
#include <set>

#include "harp/harness.hpp"
#include "support.hpp"

namespace harp {
namespace {

TEST(RandomLts, LoginShapedParameters) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RandomSource rng(seed);
    const LtsModel m = gen_random_lts({11, 2, 1, 2, 1}, rng);
    const ModelMetrics metrics = model_metrics(m);
    EXPECT_EQ(metrics.branches, 2u);
    EXPECT_EQ(metrics.joins, 1u);
    EXPECT_EQ(metrics.loops, 2u);
    EXPECT_TRUE(metrics.warnings.empty());
    EXPECT_TRUE(validate(m).empty());
    EXPECT_EQ(m.states().size(), 11u);
    EXPECT_EQ(m.initial(), "1");
  }
}

TEST(RandomLts, RequestedCountsAcrossRanges) {
  RandomSource pick(77);
  int built = 0, infeasible = 0;
  for (int round = 0; round < 200; ++round) {
    SyntheticModelParams p;
    p.states = 5 + pick.uniform_index(56);
    p.branches = pick.uniform_index(std::min<std::size_t>(21, (p.states - 1) / 2 + 1));
    p.joins = pick.uniform_index(6);
    p.loops = pick.uniform_index(7);
    RandomSource rng(static_cast<std::uint64_t>(round));
    try {
      const LtsModel m = gen_random_lts(p, rng);
      std::size_t branches = 0, joins = 0, sinks = 0;
      for (const auto& s : m.states()) {
        branches += m.outgoing(s).size() > 1;
        joins += m.in_degree(s) > 1;
        sinks += m.outgoing(s).empty();
      }
      EXPECT_EQ(branches, p.branches);
      EXPECT_EQ(joins, p.joins);
      EXPECT_EQ(count_back_edges(m), p.loops);
      EXPECT_GE(sinks, 1u);
      EXPECT_TRUE(unreachable_states(m).empty());
      ++built;
    } catch (const InfeasibleParameters& e) {
      const std::string what = e.what();
      EXPECT_TRUE(what.find("branches") != std::string::npos ||
                  what.find("joins") != std::string::npos ||
                  what.find("loops") != std::string::npos || what.find("sinks") != std::string::npos)
          << what;
      ++infeasible;
    }
  }
  EXPECT_EQ(built + infeasible, 200);
  EXPECT_GT(built, 60);
}

TEST(RandomLts, SingleState) {
  RandomSource rng(1);
  const LtsModel m = gen_random_lts({1, 0, 0, 0, 1}, rng);
  EXPECT_EQ(m.states().size(), 1u);
  EXPECT_TRUE(generate(m).cases.empty());
}

TEST(RandomLts, InfeasibleRequestsNameTheConstraint) {
  RandomSource rng(1);
  auto message = [&](SyntheticModelParams p) {
    try {
      gen_random_lts(p, rng);
    } catch (const InfeasibleParameters& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message({5, 3, 0, 0, 1}).find("branches"), std::string::npos);
  EXPECT_NE(message({10, 2, 0, 2, 1}).find("loops"), std::string::npos);
  EXPECT_NE(message({10, 1, 2, 2, 1}).find("sinks"), std::string::npos);
  EXPECT_NE(message({1, 0, 0, 1, 1}).find("sinks"), std::string::npos);
}

TEST(RandomLts, SameSeedSameBytes) {
  RandomSource a(5), b(5);
  EXPECT_EQ(serialize_model(gen_random_lts({30, 6, 3, 3, 1}, a)),
            serialize_model(gen_random_lts({30, 6, 3, 3, 1}, b)));
}

TEST(PlantFaults, PublishedDoubleInvalidLoginFault) {
  const LtsModel m = testing::login_model();
  const TestSuite suite = generate(m);
  EXPECT_EQ(fault_from_purpose(suite, parse_purpose("*|C - Invalid Login|*|C - Invalid Login|*"), m),
            std::vector<std::string>{"TC7"});
  EXPECT_THROW(fault_from_purpose(suite, parse_purpose("*"), m), Error);
  EXPECT_THROW(fault_from_purpose(suite, parse_purpose("*|nothing|*"), m), Error);
}

TEST(PlantFaults, RevealingSetsWithinBounds) {
  const LtsModel m = testing::login_model();
  const TestSuite suite = generate(m);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RandomSource rng(seed);
    const PlantedFaults f = plant_faults(m, suite, 2, rng);
    ASSERT_EQ(f.report.faults.size(), 2u);
    for (const auto& [id, cases] : f.report.faults) {
      EXPECT_GE(cases.size(), 1u);
      EXPECT_LE(cases.size(), 3u);
      EXPECT_EQ(revealing_cases(suite, f.causes.at(id), m), cases);
    }
  }
}

TEST(PlantFaults, ReproducibleAndBounded) {
  const LtsModel m = testing::login_model();
  const TestSuite suite = generate(m);
  RandomSource a(9), b(9);
  EXPECT_EQ(serialize_fault_report(plant_faults(m, suite, 3, a).report),
            serialize_fault_report(plant_faults(m, suite, 3, b).report));
  PlantOptions tight;
  tight.max_revealing = 0;
  tight.retries = 20;
  EXPECT_THROW(plant_faults(m, suite, 1, a, tight), Error);
  EXPECT_THROW(plant_faults(m, TestSuite{}, 1, a), Error);
}

TEST(ExperimentConfigFile, ParsesEveryKey) {
  const ExperimentConfig c = parse_experiment_config(
      "# desk run\n"
      "techniques = harp, arp-jaccard, greedy, random\n"
      "repetitions = 20\n"
      "seed = 99\n"
      "models = a.lts, b.lts\n"
      "synthetic_models = 3\n"
      "states = 20-30\n"
      "branches = 4\n"
      "joins = 1-2\n"
      "loops = 0-3\n"
      "sinks = 2\n"
      "faults_per_model = 2\n"
      "fault_max_revealing = 4\n"
      "hint_targets = good:0.1-0.4, bad\n"
      "metrics = apfd, fmeasure\n"
      "loop_bound = 1\n"
      "min_suite_size = 8\n"
      "max_suite_size = 150\n"
      "max_object_attempts = 30\n"
      "threads = 2\n");
  EXPECT_EQ(c.techniques.size(), 4u);
  EXPECT_EQ(c.repetitions, 20u);
  EXPECT_EQ(c.seed, 99u);
  EXPECT_EQ(c.model_files, (std::vector<std::string>{"a.lts", "b.lts"}));
  EXPECT_EQ(c.states.lo, 20u);
  EXPECT_EQ(c.states.hi, 30u);
  EXPECT_EQ(c.branches.lo, 4u);
  EXPECT_EQ(c.branches.hi, 4u);
  EXPECT_EQ(c.min_sinks, 2u);
  ASSERT_EQ(c.hint_targets.size(), 2u);
  EXPECT_DOUBLE_EQ(c.hint_targets[0].lo, 0.1);
  EXPECT_DOUBLE_EQ(c.hint_targets[0].hi, 0.4);
  EXPECT_EQ(c.hint_targets[1].kind, HintKind::bad);
  EXPECT_EQ(c.metrics.size(), 2u);
  EXPECT_EQ(c.threads, 2u);
}

TEST(ExperimentConfigFile, Rejections) {
  EXPECT_THROW(parse_experiment_config("colour = blue\n"), ParseError);
  EXPECT_THROW(parse_experiment_config("repetitions = 0\n"), ParseError);
  EXPECT_THROW(parse_experiment_config("repetitions = many\n"), ParseError);
  EXPECT_THROW(parse_experiment_config("techniques = \n"), ParseError);
  EXPECT_THROW(parse_experiment_config("metrics = speed\n"), ParseError);
  EXPECT_THROW(parse_experiment_config("states = 9-3\n"), ParseError);
  EXPECT_THROW(parse_experiment_config("seed = 1\nseed = 2\n"), ParseError);
  EXPECT_THROW(parse_experiment_config("hint_targets = good, good\n"), ParseError);
  EXPECT_THROW(parse_experiment_config("techniques = harp\nhint_targets = \n"), ParseError);
}

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.techniques = {Technique::harp, Technique::arp_jaccard, Technique::greedy, Technique::random};
  c.synthetic_models = 3;
  c.repetitions = 5;
  c.metrics = {MetricKind::apfd, MetricKind::fmeasure};
  return c;
}

std::vector<ExperimentObject> objects_for(const ExperimentConfig& c) {
  std::vector<ExperimentObject> out;
  for (std::size_t i = 0; i < c.synthetic_models; ++i) out.push_back(synthetic_object(i, c));
  return out;
}

TEST(Experiment, RecordCountFollowsTheConfig) {
  const ExperimentConfig c = small_config();
  const auto objects = objects_for(c);
  const ExperimentResult r = run_experiment(c, objects);
  // 3 models x (harp good, harp bad, arp, greedy, random) x 5 trials x 2 metrics.
  EXPECT_EQ(r.records.size(), 3u * 5 * 5 * 2);
  std::set<std::string> treatments;
  for (const auto& rec : r.records) treatments.insert(treatment_name(rec.technique, rec.hint));
  EXPECT_EQ(treatments, (std::set<std::string>{"arp-jaccard", "greedy", "harp-bad", "harp-good", "random"}));
  // 10 pairs per model and metric, plus one median row per pair and metric.
  EXPECT_EQ(r.summary.size(), 3u * 2 * 10 + 2 * 10);
}

TEST(Experiment, SingleTrialSingleModel) {
  ExperimentConfig c;
  c.techniques = {Technique::arp_jaccard};
  c.repetitions = 1;
  c.metrics = {MetricKind::apfd};
  const std::vector<ExperimentObject> objects{synthetic_object(0, c)};
  EXPECT_EQ(run_experiment(c, objects).records.size(), 1u);
}

TEST(Experiment, ValuesAreInRange) {
  const ExperimentConfig c = small_config();
  const auto objects = objects_for(c);
  for (const auto& rec : run_experiment(c, objects).records) {
    if (rec.metric == "apfd") {
      EXPECT_GT(rec.value, 0.0);
      EXPECT_LT(rec.value, 1.0);
    } else {
      EXPECT_GE(rec.value, 0.0);
    }
  }
}

TEST(Experiment, ByteIdenticalAcrossRunsAndThreadCounts) {
  ExperimentConfig c = small_config();
  const auto objects = objects_for(c);
  const std::string once = records_csv(run_experiment(c, objects).records);
  EXPECT_EQ(records_csv(run_experiment(c, objects).records), once);
  c.threads = 4;
  EXPECT_EQ(records_csv(run_experiment(c, objects).records), once);
  c.threads = 1;
  EXPECT_EQ(records_csv(run_experiment(c).records), once);
}

TEST(Experiment, TrialSeedsArePureAndDistinct) {
  EXPECT_EQ(trial_seed(1, "m", "harp", "good", 3), trial_seed(1, "m", "harp", "good", 3));
  std::set<std::uint64_t> seen;
  for (const char* hint : {"good", "bad"})
    for (std::size_t t = 0; t < 100; ++t) seen.insert(trial_seed(1, "m", "harp", hint, t));
  EXPECT_EQ(seen.size(), 200u);
  EXPECT_NE(trial_seed(1, "m", "harp", "good", 0), trial_seed(2, "m", "harp", "good", 0));
}

TEST(Experiment, SummaryRecomputesFromCsv) {
  const ExperimentConfig c = small_config();
  const auto objects = objects_for(c);
  const ExperimentResult r = run_experiment(c, objects);
  const auto parsed = parse_records_csv(records_csv(r.records));
  ASSERT_EQ(parsed, r.records);
  EXPECT_EQ(summary_csv(summarize(parsed)), summary_csv(r.summary));
}

TEST(Experiment, CsvLayout) {
  const std::vector<TrialRecord> recs{{"syn01", "harp", "good", 42, 0, "apfd", 0.8125}};
  EXPECT_EQ(records_csv(recs),
            "model,technique,hint,seed,trial,metric,value\nsyn01,harp,good,42,0,apfd,0.812500\n");
  EXPECT_THROW(parse_records_csv("model,value\n"), ParseError);
}

TEST(Experiment, FileModelsAreLoaded) {
  ExperimentConfig c;
  c.techniques = {Technique::harp};
  c.repetitions = 3;
  c.model_files = {std::string(HARP_DATA_DIR) + "/login.lts"};
  c.hint_targets = {HintQualityTarget::good()};
  c.min_suite_size = 1;
  const ExperimentResult r = run_experiment(c);
  ASSERT_EQ(r.records.size(), 3u);
  EXPECT_EQ(r.records[0].model, "login");
  c.model_files = {"/nonexistent.lts"};
  EXPECT_THROW(run_experiment(c), Error);
}

TEST(Experiment, NoObjectsIsAnError) {
  ExperimentConfig c;
  EXPECT_THROW(run_experiment(c, std::span<const ExperimentObject>{}), Error);
}

}  // namespace
}  // namespace harp
