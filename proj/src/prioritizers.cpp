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

#include "harp/prioritizers.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <unordered_set>

#include "text.hpp"

namespace harp {

std::string_view technique_name(Technique t) {
  switch (t) {
    case Technique::harp: return "harp";
    case Technique::arp_jaccard: return "arp-jaccard";
    case Technique::greedy: return "greedy";
    case Technique::random: return "random";
  }
  return "?";
}

std::optional<Technique> parse_technique(std::string_view name) {
  for (Technique t : {Technique::harp, Technique::arp_jaccard, Technique::greedy, Technique::random})
    if (technique_name(t) == name) return t;
  return std::nullopt;
}

bool is_randomized(Technique t) { return t != Technique::greedy; }

DegenerateHintError::DegenerateHintError()
    : Error("hints select no test case of the suite; HARP needs at least one hinted case "
            "(use arp-jaccard for hint-less prioritization)") {}

namespace {

void remove_value(std::vector<std::size_t>& pool, std::size_t value) {
  pool.erase(std::find(pool.begin(), pool.end(), value));
}

bool adds_coverage(const TransitionProfile& p, const std::vector<std::uint64_t>& covered) {
  const auto& bits = p.bits();
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const std::uint64_t have = i < covered.size() ? covered[i] : 0;
    if (bits[i] & ~have) return true;
  }
  return false;
}

void add_coverage(const TransitionProfile& p, std::vector<std::uint64_t>& covered) {
  const auto& bits = p.bits();
  if (covered.size() < bits.size()) covered.resize(bits.size(), 0);
  for (std::size_t i = 0; i < bits.size(); ++i) covered[i] |= bits[i];
}

std::vector<const TransitionProfile*> pointers(std::span<const TransitionProfile> profiles,
                                               std::span<const std::size_t> indices) {
  std::vector<const TransitionProfile*> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(&profiles[i]);
  return out;
}

PrioritizedSuite to_order(const TestSuite& suite, std::string_view technique, std::uint64_t seed,
                          const std::vector<std::size_t>& indices) {
  PrioritizedSuite out{std::string(technique), seed, {}};
  out.order.reserve(indices.size());
  for (std::size_t i : indices) out.order.push_back(suite.cases[i].id);
  return out;
}

using Selector = std::size_t (*)(std::span<const TransitionProfile* const>,
                                 std::span<const TransitionProfile* const>);

// Shared adaptive-random loop: place `first`, then repeatedly draw a candidate
// set and let `select` pick among it.
std::vector<std::size_t> adaptive_random(std::span<const TransitionProfile> profiles,
                                         CandidatePools pools, std::size_t first,
                                         RandomSource& rng, Selector select,
                                         const SelectionObserver& observer) {
  std::vector<std::size_t> placed{first};
  placed.reserve(profiles.size());
  std::vector<const TransitionProfile*> placed_profiles{&profiles[first]};
  while (!pools.empty()) {
    const auto candidates = gen_candidate_set(pools, profiles, rng);
    const auto candidate_profiles = pointers(profiles, candidates);
    const std::size_t next = candidates[select(placed_profiles, candidate_profiles)];
    if (observer) observer(placed, candidates, next);
    placed.push_back(next);
    placed_profiles.push_back(&profiles[next]);
    auto& pool = std::find(pools.hinted.begin(), pools.hinted.end(), next) != pools.hinted.end()
                     ? pools.hinted
                     : pools.other;
    remove_value(pool, next);
  }
  return placed;
}

}  // namespace

std::vector<std::size_t> gen_candidate_set(const CandidatePools& pools,
                                           std::span<const TransitionProfile> profiles,
                                           RandomSource& rng, std::size_t max_size) {
  if (pools.empty()) throw Error("candidate generation needs at least one remaining test case");
  std::vector<std::size_t> hinted = pools.hinted;
  std::vector<std::size_t> other = pools.other;
  std::vector<std::uint64_t> covered;
  std::vector<std::size_t> candidates;
  while (candidates.size() < max_size && !(hinted.empty() && other.empty())) {
    const double v = rng.uniform01();
    auto& pool = (v < 0.5 && !hinted.empty()) || other.empty() ? hinted : other;
    const std::size_t k = rng.uniform_index(pool.size());
    const std::size_t drawn = pool[k];
    if (!candidates.empty() && !adds_coverage(profiles[drawn], covered)) break;
    candidates.push_back(drawn);
    add_coverage(profiles[drawn], covered);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return candidates;
}

std::size_t select_most_similar(std::span<const TransitionProfile* const> prioritized,
                                std::span<const TransitionProfile* const> candidates) {
  const Eigen::MatrixXd d = resemblance_matrix(
      prioritized, candidates,
      [](const TransitionProfile& a, const TransitionProfile& b) { return similarity(a, b); });
  const Eigen::RowVectorXd best = d.colwise().maxCoeff();
  std::size_t chosen = 0;
  for (Eigen::Index j = 1; j < best.size(); ++j)
    if (best(j) > best(static_cast<Eigen::Index>(chosen))) chosen = static_cast<std::size_t>(j);
  return chosen;
}

std::size_t select_farthest(std::span<const TransitionProfile* const> prioritized,
                            std::span<const TransitionProfile* const> candidates) {
  const Eigen::MatrixXd d = resemblance_matrix(
      prioritized, candidates, [](const TransitionProfile& a, const TransitionProfile& b) {
        return jaccard_distance(a, b);
      });
  const Eigen::RowVectorXd nearest = d.colwise().minCoeff();
  std::size_t chosen = 0;
  for (Eigen::Index j = 1; j < nearest.size(); ++j)
    if (nearest(j) > nearest(static_cast<Eigen::Index>(chosen)))
      chosen = static_cast<std::size_t>(j);
  return chosen;
}

PrioritizedSuite harp_prioritize(const TestSuite& suite,
                                 std::span<const TransitionProfile> profiles,
                                 std::span<const std::size_t> hinted, RandomSource& rng,
                                 const SelectionObserver& observer) {
  if (suite.cases.empty()) throw Error("cannot prioritize an empty test suite");
  if (hinted.empty()) throw DegenerateHintError();

  CandidatePools pools;
  pools.hinted.assign(hinted.begin(), hinted.end());
  const std::unordered_set<std::size_t> hinted_set(hinted.begin(), hinted.end());
  for (std::size_t i = 0; i < suite.cases.size(); ++i)
    if (!hinted_set.count(i)) pools.other.push_back(i);

  const std::size_t first = pools.hinted[rng.uniform_index(pools.hinted.size())];
  remove_value(pools.hinted, first);
  const auto placed =
      adaptive_random(profiles, std::move(pools), first, rng, &select_most_similar, observer);
  return to_order(suite, technique_name(Technique::harp), rng.seed(), placed);
}

PrioritizedSuite harp(const TestSuite& suite, const HintSet& hints, const LtsModel& model,
                      RandomSource& rng, const SelectionObserver& observer) {
  if (suite.cases.empty()) throw Error("cannot prioritize an empty test suite");
  const auto hinted = filter_indices(suite, hints, model);
  TransitionIndex index;
  const auto profiles = make_profiles(suite, index);
  return harp_prioritize(suite, profiles, hinted, rng, observer);
}

PrioritizedSuite arp_jaccard_prioritize(const TestSuite& suite,
                                        std::span<const TransitionProfile> profiles,
                                        RandomSource& rng, const SelectionObserver& observer) {
  if (suite.cases.empty()) throw Error("cannot prioritize an empty test suite");
  CandidatePools pools;
  pools.other.resize(suite.cases.size());
  std::iota(pools.other.begin(), pools.other.end(), std::size_t{0});
  const std::size_t first = rng.uniform_index(pools.other.size());
  remove_value(pools.other, first);
  const auto placed =
      adaptive_random(profiles, std::move(pools), first, rng, &select_farthest, observer);
  return to_order(suite, technique_name(Technique::arp_jaccard), rng.seed(), placed);
}

PrioritizedSuite arp_jaccard(const TestSuite& suite, const LtsModel& model, RandomSource& rng,
                             const SelectionObserver& observer) {
  check_suite_against(suite, model);
  TransitionIndex index;
  const auto profiles = make_profiles(suite, index);
  return arp_jaccard_prioritize(suite, profiles, rng, observer);
}

PrioritizedSuite greedy_steps(const TestSuite& suite) {
  std::vector<std::size_t> idx(suite.cases.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return suite.cases[a].steps.size() > suite.cases[b].steps.size();
  });
  return to_order(suite, technique_name(Technique::greedy), 0, idx);
}

PrioritizedSuite random_order(const TestSuite& suite, RandomSource& rng) {
  std::vector<std::size_t> idx(suite.cases.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = idx.size(); i > 1; --i) std::swap(idx[i - 1], idx[rng.uniform_index(i)]);
  return to_order(suite, technique_name(Technique::random), rng.seed(), idx);
}

std::string serialize_order(const PrioritizedSuite& order) {
  std::string out = "order " + order.technique + " seed=" + std::to_string(order.seed) + "\n";
  for (const auto& id : order.order) out += id + "\n";
  return out;
}

PrioritizedSuite parse_order(std::string_view document) {
  PrioritizedSuite out;
  bool have_header = false;
  std::unordered_set<std::string> seen;
  const auto lines = text::lines(document);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    if (text::is_comment_or_blank(lines[ln])) continue;
    const auto toks = text::tokens(lines[ln]);
    if (!have_header) {
      if (toks.size() != 3 || toks[0] != "order" || !toks[2].starts_with("seed="))
        throw ParseError(ln + 1, 1, "expected 'order <technique> seed=<n>' header");
      out.technique = std::string(toks[1]);
      try {
        std::size_t used = 0;
        const std::string digits(toks[2].substr(5));
        out.seed = std::stoull(digits, &used);
        if (used != digits.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ParseError(ln + 1, 1, "invalid seed in order header");
      }
      have_header = true;
      continue;
    }
    if (toks.size() != 1) throw ParseError(ln + 1, 1, "expected one test case id per line");
    if (!seen.insert(std::string(toks[0])).second)
      throw ParseError(ln + 1, 1, "duplicate test case id '" + std::string(toks[0]) + "'");
    out.order.emplace_back(toks[0]);
  }
  if (!have_header) throw ParseError(1, 0, "missing 'order <technique> seed=<n>' header");
  return out;
}

}  // namespace harp
