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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "harp/prioritizers.hpp"

namespace harp {

struct FaultReport {
  // fault id -> ids of the test cases revealing it
  std::map<std::string, std::vector<std::string>> faults;

  std::vector<std::string> failing_cases() const;  // union, sorted
  FaultReport only(std::string_view fault_id) const;
};

// "fault <id> : <tc-id>[, <tc-id>]*" per line; '#' comments.
FaultReport parse_fault_report(std::string_view document);
std::string serialize_fault_report(const FaultReport& report);

// Throws when a referenced test case is missing from `ids`.
void check_fault_report(const FaultReport& report, std::span<const std::string> ids);

struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

Fraction reduced(std::int64_t num, std::int64_t den);

enum class MetricKind { apfd, fmeasure };
std::string_view metric_name(MetricKind m);
std::optional<MetricKind> parse_metric(std::string_view name);

struct MetricValue {
  MetricKind kind = MetricKind::apfd;
  double value = 0.0;
  Fraction exact;
  std::size_t n = 0;  // suite size
  std::size_t m = 0;  // faults (APFD only)
};

/// Average percentage of faults detected:
///
///   APFD = 1 - (TF_1 + ... + TF_m) / (n m) + 1 / (2 n)
///
/// TF_i is the 1-based position of the first case revealing fault i. Every
/// fault must be revealed by some case in the order. Computed exactly.
MetricValue apfd(const PrioritizedSuite& order, const FaultReport& faults);

// Number of cases executed before the first failing one (0-based, so 0..n-1).
MetricValue f_measure(const PrioritizedSuite& order, const FaultReport& faults);

MetricValue evaluate(MetricKind kind, const PrioritizedSuite& order, const FaultReport& faults);

enum class EffectLabel { large, medium, small };
std::string_view effect_label_name(EffectLabel e);  // "large", "medium", "small-or-negligible"

// Vargha-Delaney magnitude: large beyond 0.71/0.29, medium beyond 0.64/0.36.
EffectLabel classify_a12(double statistic);

struct EffectSize {
  double statistic = 0.5;
  EffectLabel label = EffectLabel::small;
  std::uint64_t greater = 0;  // pairs with a > b
  std::uint64_t ties = 0;     // pairs with a == b
  std::uint64_t pairs = 0;    // |A| |B|
};

/// Vargha-Delaney A12 = (#{a > b} + #{a == b} / 2) / (|A| |B|): the
/// probability that a draw from A exceeds one from B. Counts via sort and
/// binary search, O((|A| + |B|) log |B|).
EffectSize a12(std::span<const double> a, std::span<const double> b);

}  // namespace harp
