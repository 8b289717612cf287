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
#include <span>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "harp/lts.hpp"
#include "harp/testgen.hpp"

namespace harp {

// Dense ids for transition triples, shared by the profiles of one suite.
class TransitionIndex {
 public:
  std::uint32_t intern(const Transition& t);
  std::size_t size() const { return ids_.size(); }

 private:
  std::unordered_map<Transition, std::uint32_t, TransitionHash> ids_;
};

/// The step sequence of a test case reduced to what the resemblance functions
/// need: its length, its set of distinct transitions (as a bitset over a
/// TransitionIndex) and per-transition occurrence counts.
class TransitionProfile {
 public:
  TransitionProfile() = default;
  explicit TransitionProfile(std::vector<std::uint32_t> sequence);

  std::size_t length() const { return sequence_.size(); }
  std::size_t distinct_count() const { return distinct_; }
  std::size_t occurrences(std::uint32_t id) const;
  const std::vector<std::uint32_t>& sequence() const { return sequence_; }
  const std::vector<std::uint64_t>& bits() const { return bits_; }
  bool covers(std::uint32_t id) const;

 private:
  std::vector<std::uint32_t> sequence_;
  std::vector<std::uint64_t> bits_;
  std::unordered_map<std::uint32_t, std::uint32_t> counts_;
  std::size_t distinct_ = 0;
};

TransitionProfile make_profile(const TestCase& tc, TransitionIndex& index);
std::vector<TransitionProfile> make_profiles(const TestSuite& suite, TransitionIndex& index);

// |sdt(a) ∩ sdt(b)|
std::size_t shared_transitions(const TransitionProfile& a, const TransitionProfile& b);
// |sdt(a) ∪ sdt(b)|
std::size_t union_transitions(const TransitionProfile& a, const TransitionProfile& b);

struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Similarity for MBT test cases:
///
///   (nip + |sit|) / ((|a| + |b| + |sdt(a)| + |sdt(b)|) / 2)
///
/// with sit = sdt(a) ∩ sdt(b) and the identical-pair count nip taken as |sit|.
/// Returned unreduced as 4|sit| / (|a| + |b| + |sdt(a)| + |sdt(b)|).
Ratio similarity_ratio(const TransitionProfile& a, const TransitionProfile& b);
double similarity(const TransitionProfile& a, const TransitionProfile& b);

// 1 - |sdt(a) ∩ sdt(b)| / |sdt(a) ∪ sdt(b)|
double jaccard_distance(const TransitionProfile& a, const TransitionProfile& b);

// Convenience overloads; both cases must be non-empty.
double similarity(const TestCase& a, const TestCase& b);
double jaccard_distance(const TestCase& a, const TestCase& b);

/// Resemblance of every (row, column) profile pair, e.g. already prioritized
/// cases against candidates.
template <typename Scalar = double, typename Fn>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> resemblance_matrix(
    std::span<const TransitionProfile* const> rows,
    std::span<const TransitionProfile* const> cols, Fn&& fn) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m(
      static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      m(i, j) = static_cast<Scalar>(fn(*rows[static_cast<std::size_t>(i)],
                                       *cols[static_cast<std::size_t>(j)]));
  return m;
}

}  // namespace harp
