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

#include <algorithm>
#include <numeric>

#include "harp/evaluation.hpp"
#include "harp/random.hpp"

namespace harp {
namespace {

PrioritizedSuite order_of(std::vector<std::string> ids) { return {"test", 0, std::move(ids)}; }

std::vector<std::string> ids(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back("TC" + std::to_string(i));
  return out;
}

// Oracle: walk the order and record, per fault, the first revealing position,
// then evaluate 1 - sum/(n m) + 1/(2n) with cross-multiplied integers.
Fraction oracle_apfd(const std::vector<std::string>& order, const FaultReport& faults) {
  std::int64_t sum = 0;
  for (const auto& [id, cases] : faults.faults) {
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (std::find(cases.begin(), cases.end(), order[i]) != cases.end()) {
        sum += static_cast<std::int64_t>(i + 1);
        break;
      }
    }
  }
  const auto n = static_cast<std::int64_t>(order.size());
  const auto m = static_cast<std::int64_t>(faults.faults.size());
  // (2nm - 2 sum + m) / (2nm), reduced by trial division.
  std::int64_t num = 2 * n * m - 2 * sum + m, den = 2 * n * m;
  for (std::int64_t d = 2; d <= den; ++d)
    while (num % d == 0 && den % d == 0) {
      num /= d;
      den /= d;
    }
  return {num, den};
}

TEST(Apfd, TextbookExample) {
  // Five cases, two faults first found at positions 1 and 3.
  FaultReport f;
  f.faults["F1"] = {"TC1"};
  f.faults["F2"] = {"TC3", "TC5"};
  const MetricValue v = apfd(order_of(ids(5)), f);
  EXPECT_EQ(v.exact, (Fraction{7, 10}));
  EXPECT_DOUBLE_EQ(v.value, 0.7);
  EXPECT_EQ(v.n, 5u);
  EXPECT_EQ(v.m, 2u);
}

TEST(Apfd, BestAndWorstSingleFault) {
  FaultReport f;
  f.faults["F1"] = {"TC1"};
  EXPECT_EQ(apfd(order_of(ids(4)), f).exact, (Fraction{7, 8}));
  f.faults["F1"] = {"TC4"};
  EXPECT_EQ(apfd(order_of(ids(4)), f).exact, (Fraction{1, 8}));
}

TEST(Apfd, AgreesWithOracleOnRandomInstances) {
  RandomSource rng(12);
  for (int round = 0; round < 1000; ++round) {
    const std::size_t n = 1 + rng.uniform_index(60);
    auto order = ids(n);
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.uniform_index(i)]);
    FaultReport f;
    const std::size_t m = 1 + rng.uniform_index(5);
    for (std::size_t k = 0; k < m; ++k) {
      std::vector<std::string> cases;
      const std::size_t r = 1 + rng.uniform_index(std::min<std::size_t>(n, 4));
      for (std::size_t c = 0; c < r; ++c) cases.push_back("TC" + std::to_string(1 + rng.uniform_index(n)));
      f.faults["F" + std::to_string(k)] = cases;
    }
    const MetricValue v = apfd(order_of(order), f);
    ASSERT_EQ(v.exact, oracle_apfd(order, f)) << "round " << round;
    ASSERT_GT(v.value, 0.0);
    ASSERT_LT(v.value, 1.0);
  }
}

TEST(Apfd, UndetectedFaultIsAnError) {
  FaultReport f;
  f.faults["F1"] = {"TC9"};
  EXPECT_THROW(apfd(order_of(ids(3)), f), Error);
  EXPECT_THROW(apfd(order_of({}), f), Error);
  EXPECT_THROW(apfd(order_of(ids(3)), FaultReport{}), Error);
}

TEST(FMeasure, FirstFailingIndex) {
  FaultReport f;
  f.faults["F1"] = {"TC3"};
  f.faults["F2"] = {"TC2", "TC5"};
  EXPECT_EQ(f_measure(order_of(ids(5)), f).value, 1.0);
  EXPECT_EQ(f_measure(order_of({"TC5", "TC1"}), f).value, 0.0);
  EXPECT_THROW(f_measure(order_of({"TC1", "TC4"}), f), Error);
}

TEST(FMeasure, BoundsOnRandomInstances) {
  RandomSource rng(13);
  for (int round = 0; round < 1000; ++round) {
    const std::size_t n = 1 + rng.uniform_index(50);
    auto order = ids(n);
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.uniform_index(i)]);
    FaultReport f;
    f.faults["F1"] = {"TC" + std::to_string(1 + rng.uniform_index(n))};
    const double v = f_measure(order_of(order), f).value;
    ASSERT_GE(v, 0.0);
    ASSERT_LE(v, static_cast<double>(n - 1));
    ASSERT_EQ(order[static_cast<std::size_t>(v)], f.faults["F1"][0]);
  }
}

// Oracle: every (x, y) pair, wins count 1 and ties count 1/2.
double oracle_a12(const std::vector<double>& a, const std::vector<double>& b) {
  double score = 0;
  for (double x : a)
    for (double y : b) score += x > y ? 1.0 : (x == y ? 0.5 : 0.0);
  return score / static_cast<double>(a.size() * b.size());
}

TEST(A12, AgreesWithAllPairsOracle) {
  RandomSource rng(14);
  for (int round = 0; round < 1000; ++round) {
    auto sample = [&] {
      std::vector<double> s(1 + rng.uniform_index(40));
      // Coarse values so ties are common.
      for (auto& x : s) x = static_cast<double>(rng.uniform_index(12)) / 4.0;
      return s;
    };
    const auto a = sample(), b = sample();
    const EffectSize e = a12(a, b);
    ASSERT_EQ(e.statistic, oracle_a12(a, b)) << "round " << round;
    ASSERT_EQ(e.pairs, a.size() * b.size());
    ASSERT_NEAR(a12(b, a).statistic, 1.0 - e.statistic, 1e-15);
  }
}

TEST(A12, KnownValues) {
  EXPECT_DOUBLE_EQ(a12(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 3}).statistic, 0.5);
  EXPECT_DOUBLE_EQ(a12(std::vector<double>{5, 6}, std::vector<double>{1, 2}).statistic, 1.0);
  EXPECT_DOUBLE_EQ(a12(std::vector<double>{1}, std::vector<double>{1, 2}).statistic, 0.25);
  EXPECT_THROW(a12(std::vector<double>{}, std::vector<double>{1}), Error);
}

TEST(A12, EffectLabels) {
  EXPECT_EQ(classify_a12(0.0713), EffectLabel::large);
  EXPECT_EQ(classify_a12(0.3628), EffectLabel::small);
  EXPECT_EQ(classify_a12(0.2237), EffectLabel::large);
  EXPECT_EQ(classify_a12(0.30), EffectLabel::medium);
  EXPECT_EQ(classify_a12(0.65), EffectLabel::medium);
  EXPECT_EQ(classify_a12(0.75), EffectLabel::large);
  EXPECT_EQ(classify_a12(0.5), EffectLabel::small);
  // Thresholds are strict.
  EXPECT_EQ(classify_a12(0.71), EffectLabel::medium);
  EXPECT_EQ(classify_a12(0.29), EffectLabel::medium);
  EXPECT_EQ(classify_a12(0.36), EffectLabel::small);
  EXPECT_EQ(classify_a12(0.64), EffectLabel::small);
  EXPECT_EQ(effect_label_name(EffectLabel::small), "small-or-negligible");
}

TEST(FaultReportFormat, RoundTripAndChecks) {
  const std::string doc = "fault F1 : TC7\nfault F2 : TC3, TC4\n";
  const FaultReport f = parse_fault_report(doc);
  EXPECT_EQ(serialize_fault_report(f), doc);
  EXPECT_EQ(f.failing_cases(), (std::vector<std::string>{"TC3", "TC4", "TC7"}));
  EXPECT_EQ(f.only("F2").faults.size(), 1u);
  EXPECT_THROW(f.only("F9"), Error);
  const auto known = ids(7);
  EXPECT_NO_THROW(check_fault_report(f, known));
  EXPECT_THROW(check_fault_report(parse_fault_report("fault F1 : TC8\n"), known), Error);
  EXPECT_THROW(parse_fault_report("fault F1 TC7\n"), ParseError);
  EXPECT_THROW(parse_fault_report("fault F1 : TC7\nfault F1 : TC6\n"), ParseError);
}

TEST(Metrics, NamesRoundTrip) {
  EXPECT_EQ(parse_metric("apfd"), MetricKind::apfd);
  EXPECT_EQ(parse_metric("fmeasure"), MetricKind::fmeasure);
  EXPECT_FALSE(parse_metric("f-measure").has_value());
}

}  // namespace
}  // namespace harp
