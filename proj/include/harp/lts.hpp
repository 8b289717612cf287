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

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace harp {

using StateId = std::string;

// One edge of the transition relation. Identity is the full triple.
struct Transition {
  StateId src;
  StateId dst;
  std::string label;

  friend bool operator==(const Transition&, const Transition&) = default;
  friend auto operator<=>(const Transition&, const Transition&) = default;
};

struct TransitionHash {
  std::size_t operator()(const Transition& t) const noexcept;
};

/// Labeled transition system: states, an initial state and an ordered list of
/// labeled transitions.
///
/// Construction does not enforce the invariants; call validate() (or load
/// through parse_model(), which does) before handing a model to the rest of
/// the toolkit. Instances are immutable.
class LtsModel {
 public:
  LtsModel(std::string name, std::vector<StateId> states, StateId initial,
           std::vector<Transition> transitions);

  const std::string& name() const { return name_; }
  const std::vector<StateId>& states() const { return states_; }
  const StateId& initial() const { return initial_; }
  const std::vector<Transition>& transitions() const { return transitions_; }

  bool has_state(std::string_view id) const;

  // Indices into transitions(), in declaration order.
  const std::vector<std::size_t>& outgoing(std::string_view state) const;
  std::size_t in_degree(std::string_view state) const;

  // Index of the exact triple, if present.
  std::optional<std::size_t> find(const Transition& t) const;

  // Transitions src -> dst regardless of label, in declaration order.
  std::vector<std::size_t> between(std::string_view src, std::string_view dst) const;

 private:
  std::string name_;
  std::vector<StateId> states_;
  StateId initial_;
  std::vector<Transition> transitions_;

  std::unordered_map<StateId, std::vector<std::size_t>> out_;
  std::unordered_map<StateId, std::size_t> in_degree_;
  std::unordered_map<Transition, std::size_t, TransitionHash> index_;
};

// Parses the line-oriented model format:
//
//   lts <name>
//   initial <state>
//   states <state> <state> ...      (optional, repeatable)
//   trans <src> -> <dst> : <label>
//
// Throws ParseError on syntax errors and on any invariant violation.
LtsModel parse_model(std::string_view document);

// Canonical rendering; parse_model(serialize_model(m)) reproduces m.
std::string serialize_model(const LtsModel& model);

// Empty iff every model invariant holds.
std::vector<std::string> validate(const LtsModel& model);

struct ModelMetrics {
  std::size_t branches = 0;  // states with out-degree > 1
  std::size_t joins = 0;     // states with in-degree > 1
  std::size_t loops = 0;     // DFS back edges from the initial state
  std::optional<std::size_t> max_depth;  // longest generated test case, in steps
  std::optional<std::size_t> min_depth;
  std::vector<std::string> warnings;
};

// Depths come from generate() with the default loop bound.
ModelMetrics model_metrics(const LtsModel& model);

// Number of DFS back edges reachable from the initial state. Successors are
// explored in (target, label) order so the count does not depend on the order
// transitions were declared in.
std::size_t count_back_edges(const LtsModel& model);

std::vector<StateId> unreachable_states(const LtsModel& model);

}  // namespace harp
