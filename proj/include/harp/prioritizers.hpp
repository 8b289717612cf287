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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "harp/error.hpp"
#include "harp/lts.hpp"
#include "harp/purpose.hpp"
#include "harp/random.hpp"
#include "harp/resemblance.hpp"
#include "harp/testgen.hpp"

namespace harp {

enum class Technique { harp, arp_jaccard, greedy, random };

std::string_view technique_name(Technique t);
std::optional<Technique> parse_technique(std::string_view name);
bool is_randomized(Technique t);

struct PrioritizedSuite {
  std::string technique;
  std::uint64_t seed = 0;
  std::vector<std::string> order;  // test case ids, a permutation of the input

  friend bool operator==(const PrioritizedSuite&, const PrioritizedSuite&) = default;
};

// Raised when the hints select no test case at all; HARP has nothing to
// anchor its first pick on.
class DegenerateHintError : public Error {
 public:
  DegenerateHintError();
};

inline constexpr std::size_t kMaxCandidates = 10;

// Not-yet-prioritized suite indices, split by whether a hint selected them.
struct CandidatePools {
  std::vector<std::size_t> hinted;
  std::vector<std::size_t> other;

  bool empty() const { return hinted.empty() && other.empty(); }
};

/// Draws a candidate set from the pools. Each draw samples v ~ U(0,1) and
/// takes a uniform pick from `hinted` when v < 0.5, otherwise from `other`
/// (falling back to whichever pool still has cases). A draw joins the set
/// only if it adds transitions not yet covered by the set; the first draw
/// that does not ends generation. At most `max_size` candidates, at least one.
std::vector<std::size_t> gen_candidate_set(const CandidatePools& pools,
                                           std::span<const TransitionProfile> profiles,
                                           RandomSource& rng,
                                           std::size_t max_size = kMaxCandidates);

/// Builds the similarity matrix of prioritized cases (rows) against
/// candidates (columns) and returns the column holding the largest cell.
/// Ties go to the lowest column.
std::size_t select_most_similar(std::span<const TransitionProfile* const> prioritized,
                                std::span<const TransitionProfile* const> candidates);

// Candidate whose minimum Jaccard distance to the prioritized cases is largest.
std::size_t select_farthest(std::span<const TransitionProfile* const> prioritized,
                            std::span<const TransitionProfile* const> candidates);

// Called once per selection with suite indices; lets tests replay each step.
using SelectionObserver = std::function<void(std::span<const std::size_t> prioritized,
                                             std::span<const std::size_t> candidates,
                                             std::size_t chosen)>;

// HARP over precomputed profiles. `hinted` lists the suite indices selected
// by the hints, in suite order.
PrioritizedSuite harp_prioritize(const TestSuite& suite,
                                 std::span<const TransitionProfile> profiles,
                                 std::span<const std::size_t> hinted, RandomSource& rng,
                                 const SelectionObserver& observer = {});

PrioritizedSuite harp(const TestSuite& suite, const HintSet& hints, const LtsModel& model,
                      RandomSource& rng, const SelectionObserver& observer = {});

PrioritizedSuite arp_jaccard_prioritize(const TestSuite& suite,
                                        std::span<const TransitionProfile> profiles,
                                        RandomSource& rng,
                                        const SelectionObserver& observer = {});

PrioritizedSuite arp_jaccard(const TestSuite& suite, const LtsModel& model, RandomSource& rng,
                             const SelectionObserver& observer = {});

// Longest first; equal lengths keep suite order.
PrioritizedSuite greedy_steps(const TestSuite& suite);

PrioritizedSuite random_order(const TestSuite& suite, RandomSource& rng);

// Order file: "order <technique> seed=<n>" then one id per line.
std::string serialize_order(const PrioritizedSuite& order);
PrioritizedSuite parse_order(std::string_view document);

}  // namespace harp
