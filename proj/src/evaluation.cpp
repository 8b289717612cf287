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

#include "harp/evaluation.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "text.hpp"

namespace harp {

std::vector<std::string> FaultReport::failing_cases() const {
  std::set<std::string> all;
  for (const auto& [id, cases] : faults) all.insert(cases.begin(), cases.end());
  return {all.begin(), all.end()};
}

FaultReport FaultReport::only(std::string_view fault_id) const {
  FaultReport out;
  auto it = faults.find(std::string(fault_id));
  if (it == faults.end()) throw Error("unknown fault '" + std::string(fault_id) + "'");
  out.faults.insert(*it);
  return out;
}

FaultReport parse_fault_report(std::string_view document) {
  FaultReport report;
  const auto lines = text::lines(document);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::string_view line = lines[ln];
    if (text::is_comment_or_blank(line)) continue;
    const auto colon = line.find(':');
    const auto head = text::tokens(line.substr(0, colon == std::string_view::npos ? line.size() : colon));
    if (colon == std::string_view::npos || head.size() != 2 || head[0] != "fault")
      throw ParseError(ln + 1, 1, "expected 'fault <id> : <tc-id>[, <tc-id>]*'");
    std::string id(head[1]);
    if (report.faults.count(id)) throw ParseError(ln + 1, 1, "duplicate fault '" + id + "'");
    std::vector<std::string> cases;
    std::unordered_set<std::string> seen;
    for (std::string_view piece : text::split(line.substr(colon + 1), ',')) {
      piece = text::trim(piece);
      if (piece.empty() || text::has_space(piece))
        throw ParseError(ln + 1, colon + 2, "malformed test case list for fault '" + id + "'");
      if (seen.insert(std::string(piece)).second) cases.emplace_back(piece);
    }
    report.faults.emplace(std::move(id), std::move(cases));
  }
  return report;
}

std::string serialize_fault_report(const FaultReport& report) {
  std::string out;
  for (const auto& [id, cases] : report.faults) {
    out += "fault " + id + " :";
    for (std::size_t i = 0; i < cases.size(); ++i) out += (i ? ", " : " ") + cases[i];
    out += "\n";
  }
  return out;
}

void check_fault_report(const FaultReport& report, std::span<const std::string> ids) {
  const std::unordered_set<std::string> known(ids.begin(), ids.end());
  for (const auto& [id, cases] : report.faults) {
    if (cases.empty()) throw Error("fault '" + id + "' has no revealing test case");
    for (const auto& c : cases)
      if (!known.count(c))
        throw Error("fault '" + id + "' references unknown test case '" + c + "'");
  }
}

Fraction reduced(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  return g == 0 ? Fraction{0, 1} : Fraction{num / g, den / g};
}

std::string_view metric_name(MetricKind m) {
  return m == MetricKind::apfd ? "apfd" : "fmeasure";
}

std::optional<MetricKind> parse_metric(std::string_view name) {
  if (name == "apfd") return MetricKind::apfd;
  if (name == "fmeasure") return MetricKind::fmeasure;
  return std::nullopt;
}

namespace {

std::unordered_map<std::string, std::size_t> positions(const PrioritizedSuite& order) {
  std::unordered_map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < order.order.size(); ++i) pos.emplace(order.order[i], i + 1);
  return pos;
}

}  // namespace

MetricValue apfd(const PrioritizedSuite& order, const FaultReport& faults) {
  const std::size_t n = order.order.size();
  const std::size_t m = faults.faults.size();
  if (n == 0) throw Error("APFD of an empty order is undefined");
  if (m == 0) throw Error("APFD needs at least one fault");
  const auto pos = positions(order);
  std::int64_t tf_sum = 0;
  for (const auto& [id, cases] : faults.faults) {
    std::size_t first = 0;
    for (const auto& c : cases) {
      auto it = pos.find(c);
      if (it != pos.end() && (first == 0 || it->second < first)) first = it->second;
    }
    if (first == 0) throw Error("fault '" + id + "' is not revealed by any test case in the order");
    tf_sum += static_cast<std::int64_t>(first);
  }
  // 1 - S/(nm) + 1/(2n) = (2nm - 2S + m) / (2nm)
  const auto nn = static_cast<std::int64_t>(n);
  const auto mm = static_cast<std::int64_t>(m);
  MetricValue v;
  v.kind = MetricKind::apfd;
  v.exact = reduced(2 * nn * mm - 2 * tf_sum + mm, 2 * nn * mm);
  v.value = v.exact.value();
  v.n = n;
  v.m = m;
  return v;
}

MetricValue f_measure(const PrioritizedSuite& order, const FaultReport& faults) {
  const auto failing = faults.failing_cases();
  const std::unordered_set<std::string> failing_set(failing.begin(), failing.end());
  for (std::size_t i = 0; i < order.order.size(); ++i) {
    if (failing_set.count(order.order[i])) {
      MetricValue v;
      v.kind = MetricKind::fmeasure;
      v.exact = {static_cast<std::int64_t>(i), 1};
      v.value = static_cast<double>(i);
      v.n = order.order.size();
      v.m = faults.faults.size();
      return v;
    }
  }
  throw Error("F-Measure is undefined: no test case in the order fails");
}

MetricValue evaluate(MetricKind kind, const PrioritizedSuite& order, const FaultReport& faults) {
  return kind == MetricKind::apfd ? apfd(order, faults) : f_measure(order, faults);
}

std::string_view effect_label_name(EffectLabel e) {
  switch (e) {
    case EffectLabel::large: return "large";
    case EffectLabel::medium: return "medium";
    case EffectLabel::small: return "small-or-negligible";
  }
  return "?";
}

EffectLabel classify_a12(double statistic) {
  if (statistic > 0.71 || statistic < 0.29) return EffectLabel::large;
  if (statistic > 0.64 || statistic < 0.36) return EffectLabel::medium;
  return EffectLabel::small;
}

EffectSize a12(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error("A12 needs two non-empty samples");
  std::vector<double> sorted_b(b.begin(), b.end());
  std::sort(sorted_b.begin(), sorted_b.end());
  EffectSize e;
  for (double x : a) {
    const auto lo = std::lower_bound(sorted_b.begin(), sorted_b.end(), x);
    const auto hi = std::upper_bound(lo, sorted_b.end(), x);
    e.greater += static_cast<std::uint64_t>(lo - sorted_b.begin());
    e.ties += static_cast<std::uint64_t>(hi - lo);
  }
  e.pairs = static_cast<std::uint64_t>(a.size()) * b.size();
  e.statistic = (2.0 * static_cast<double>(e.greater) + static_cast<double>(e.ties)) /
                (2.0 * static_cast<double>(e.pairs));
  e.label = classify_a12(e.statistic);
  return e;
}

}  // namespace harp
