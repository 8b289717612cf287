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

#include "harp/hints.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "text.hpp"

namespace harp {

std::string_view hint_kind_name(HintKind k) { return k == HintKind::good ? "good" : "bad"; }

std::optional<HintKind> parse_hint_kind(std::string_view name) {
  if (name == "good") return HintKind::good;
  if (name == "bad") return HintKind::bad;
  return std::nullopt;
}

HintQualityTarget HintQualityTarget::good(double lo, double hi) {
  if (!(0.0 <= lo && lo <= hi && hi <= 1.0))
    throw Error("hint target range must satisfy 0 <= lo <= hi <= 1");
  return {HintKind::good, lo, hi};
}

HintQualityTarget HintQualityTarget::bad() { return {HintKind::bad, 0.0, 0.0}; }

namespace {

struct Proportion {
  std::size_t failing = 0;
  std::size_t selected = 0;
  double value() const { return static_cast<double>(failing) / static_cast<double>(selected); }
};

// Label sequences of every case, resolved once against the model.
std::vector<std::vector<std::string>> resolved_labels(const TestSuite& suite,
                                                      const LtsModel& model) {
  check_suite_against(suite, model);
  std::vector<std::vector<std::string>> out;
  out.reserve(suite.cases.size());
  for (const auto& tc : suite.cases) out.push_back(tc.labels());
  return out;
}

Proportion measure(const TestSuite& suite, const std::vector<std::vector<std::string>>& labels,
                   const TestPurpose& purpose, const std::unordered_set<std::string>& failing) {
  Proportion p;
  for (std::size_t i = 0; i < suite.cases.size(); ++i) {
    if (!purpose.matches_labels(labels[i])) continue;
    ++p.selected;
    if (failing.count(suite.cases[i].id)) ++p.failing;
  }
  return p;
}

std::unordered_set<std::string> as_set(const std::vector<std::string>& ids) {
  return {ids.begin(), ids.end()};
}

}  // namespace

double hint_quality(const TestSuite& suite, const TestPurpose& purpose, const FaultReport& faults,
                    const LtsModel& model) {
  const Proportion p =
      measure(suite, resolved_labels(suite, model), purpose, as_set(faults.failing_cases()));
  if (p.selected == 0) throw Error("purpose '" + purpose.to_string() + "' selects no test case");
  return p.value();
}

std::string SynthesizedHint::to_line() const {
  return purpose.to_string() + "  # synthesized " + std::string(hint_kind_name(kind)) +
         ", proportion=" + text::fixed(proportion, 6) + ", fault=" + fault_id;
}

SynthesizedHint synthesize_hint(const TestSuite& suite, const FaultReport& faults,
                                std::string_view fault_id, const LtsModel& model,
                                const HintQualityTarget& target) {
  const FaultReport own = faults.only(fault_id);
  const auto own_failing = as_set(own.failing_cases());
  const auto all_failing = as_set(faults.failing_cases());
  const auto labels_of = resolved_labels(suite, model);

  std::vector<const TestCase*> failing_cases;
  for (const auto& tc : suite.cases)
    if (own_failing.count(tc.id)) failing_cases.push_back(&tc);
  if (failing_cases.empty())
    throw HintSearchError("fault '" + std::string(fault_id) + "' has no failing case in the suite");

  struct Candidate {
    TestPurpose purpose;
    Proportion proportion;
  };
  std::optional<Candidate> best;
  std::vector<double> seen_proportions;

  auto consider = [&](TestPurpose purpose, const std::unordered_set<std::string>& failing) {
    const Proportion p = measure(suite, labels_of, purpose, failing);
    if (p.selected == 0) return;
    const double v = p.value();
    seen_proportions.push_back(v);
    if (v < target.lo || v > target.hi) return;
    if (!best) {
      best = Candidate{std::move(purpose), p};
      return;
    }
    const double bv = best->proportion.value();
    if (v > bv || (v == bv && purpose.to_string() < best->purpose.to_string()))
      best = Candidate{std::move(purpose), p};
  };

  if (target.kind == HintKind::good) {
    std::set<std::string> labels;
    for (const TestCase* tc : failing_cases)
      for (const auto& step : tc->steps) labels.insert(step.label);
    for (const auto& l : labels) consider(interleaved_purpose({l}), own_failing);

    if (!best) {
      std::set<std::pair<std::string, std::string>> pairs;
      for (const TestCase* tc : failing_cases)
        for (std::size_t i = 0; i < tc->steps.size(); ++i)
          for (std::size_t j = i + 1; j < tc->steps.size(); ++j)
            pairs.emplace(tc->steps[i].label, tc->steps[j].label);
      for (const auto& [a, b] : pairs) consider(interleaved_purpose({a, b}), own_failing);
    }
  } else {
    std::unordered_set<std::string> failing_labels;
    for (const auto& tc : suite.cases)
      if (all_failing.count(tc.id))
        for (const auto& step : tc.steps) failing_labels.insert(step.label);
    std::set<std::string> labels;
    for (const auto& tc : suite.cases)
      for (const auto& step : tc.steps)
        if (!failing_labels.count(step.label)) labels.insert(step.label);
    for (const auto& l : labels) consider(interleaved_purpose({l}), all_failing);
  }

  if (!best) {
    std::sort(seen_proportions.begin(), seen_proportions.end());
    seen_proportions.erase(std::unique(seen_proportions.begin(), seen_proportions.end()),
                           seen_proportions.end());
    std::string achievable;
    for (double v : seen_proportions) achievable += (achievable.empty() ? "" : ", ") + text::fixed(v, 4);
    throw HintSearchError("no " + std::string(hint_kind_name(target.kind)) + " hint for fault '" +
                          std::string(fault_id) + "' in [" + text::fixed(target.lo, 2) + ", " +
                          text::fixed(target.hi, 2) + "]; achievable proportions: {" +
                          (achievable.empty() ? "none" : achievable) + "}");
  }
  return SynthesizedHint{std::move(best->purpose), target.kind, best->proportion.value(),
                         best->proportion.selected, std::string(fault_id)};
}

}  // namespace harp
