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

#include "harp/resemblance.hpp"

#include <algorithm>
#include <bit>

#include "harp/error.hpp"

namespace harp {

std::uint32_t TransitionIndex::intern(const Transition& t) {
  auto [it, inserted] = ids_.try_emplace(t, static_cast<std::uint32_t>(ids_.size()));
  return it->second;
}

TransitionProfile::TransitionProfile(std::vector<std::uint32_t> sequence)
    : sequence_(std::move(sequence)) {
  std::uint32_t max_id = 0;
  for (auto id : sequence_) max_id = std::max(max_id, id);
  bits_.assign(sequence_.empty() ? 0 : max_id / 64 + 1, 0);
  for (auto id : sequence_) {
    bits_[id / 64] |= std::uint64_t{1} << (id % 64);
    ++counts_[id];
  }
  distinct_ = counts_.size();
}

std::size_t TransitionProfile::occurrences(std::uint32_t id) const {
  auto it = counts_.find(id);
  return it == counts_.end() ? 0 : it->second;
}

bool TransitionProfile::covers(std::uint32_t id) const {
  return id / 64 < bits_.size() && (bits_[id / 64] >> (id % 64)) & 1;
}

TransitionProfile make_profile(const TestCase& tc, TransitionIndex& index) {
  std::vector<std::uint32_t> seq;
  seq.reserve(tc.steps.size());
  for (const auto& s : tc.steps) seq.push_back(index.intern(s));
  return TransitionProfile(std::move(seq));
}

std::vector<TransitionProfile> make_profiles(const TestSuite& suite, TransitionIndex& index) {
  std::vector<TransitionProfile> out;
  out.reserve(suite.cases.size());
  for (const auto& tc : suite.cases) out.push_back(make_profile(tc, index));
  return out;
}

std::size_t shared_transitions(const TransitionProfile& a, const TransitionProfile& b) {
  const auto& x = a.bits();
  const auto& y = b.bits();
  const std::size_t n = std::min(x.size(), y.size());
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) count += static_cast<std::size_t>(std::popcount(x[i] & y[i]));
  return count;
}

std::size_t union_transitions(const TransitionProfile& a, const TransitionProfile& b) {
  return a.distinct_count() + b.distinct_count() - shared_transitions(a, b);
}

namespace {

void require_non_empty(const TransitionProfile& a, const TransitionProfile& b) {
  if (a.length() == 0 || b.length() == 0)
    throw Error("resemblance of an empty test case is undefined");
}

}  // namespace

Ratio similarity_ratio(const TransitionProfile& a, const TransitionProfile& b) {
  require_non_empty(a, b);
  const std::uint64_t sit = shared_transitions(a, b);
  const std::uint64_t nip = sit;
  return {2 * (nip + sit),
          a.length() + b.length() + a.distinct_count() + b.distinct_count()};
}

double similarity(const TransitionProfile& a, const TransitionProfile& b) {
  return similarity_ratio(a, b).value();
}

double jaccard_distance(const TransitionProfile& a, const TransitionProfile& b) {
  require_non_empty(a, b);
  const double shared = static_cast<double>(shared_transitions(a, b));
  return 1.0 - shared / static_cast<double>(union_transitions(a, b));
}

double similarity(const TestCase& a, const TestCase& b) {
  TransitionIndex index;
  return similarity(make_profile(a, index), make_profile(b, index));
}

double jaccard_distance(const TestCase& a, const TestCase& b) {
  TransitionIndex index;
  return jaccard_distance(make_profile(a, index), make_profile(b, index));
}

}  // namespace harp
