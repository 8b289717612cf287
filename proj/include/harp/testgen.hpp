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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "harp/error.hpp"
#include "harp/lts.hpp"

namespace harp {

struct TestCase {
  std::string id;
  std::vector<Transition> steps;

  // States visited, initial first; size() == steps.size() + 1 when non-empty.
  std::vector<StateId> node_sequence() const;
  std::vector<std::string> labels() const;
};

struct TestSuite {
  std::string model_name;
  std::vector<TestCase> cases;

  const TestCase* find(std::string_view id) const;
};

struct GenerateOptions {
  // Number of times a cycle may be closed at any one state before the path is cut.
  std::size_t loop_bound = 2;
  std::size_t max_paths = 100000;
};

class PathCapExceeded : public Error {
 public:
  explicit PathCapExceeded(std::size_t cap);
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

/// Enumerates every maximal path from the initial state, depth first, taking
/// outgoing transitions in declaration order.
///
/// A path ends at a state without outgoing transitions, or immediately after
/// a transition that brings some state to loop_bound + 1 occurrences, i.e.
/// once a cycle has been closed loop_bound times at that state. With
/// loop_bound == 0 transitions back into visited states are never taken.
/// Cases are named TC1, TC2, ... in discovery order.
TestSuite generate(const LtsModel& model, const GenerateOptions& options = {});

struct SuiteStats {
  std::size_t count = 0;
  std::optional<std::size_t> shortest;
  std::optional<std::size_t> longest;
};

SuiteStats suite_stats(const TestSuite& suite);

// Suite file:
//
//   suite <model-name>
//   tc <id> : <src> -> <dst>[ ; <src> -> <dst>]*
//
// Labels are not stored. When `model` is given every step is resolved
// against it (unknown or ambiguous src -> dst pairs are errors); without a
// model the steps keep empty labels.
TestSuite parse_suite(std::string_view document, const LtsModel* model = nullptr);
std::string serialize_suite(const TestSuite& suite);

// Errors naming the offending case and step when a step is not a transition
// of `model` or consecutive steps do not chain.
void check_suite_against(const TestSuite& suite, const LtsModel& model);

}  // namespace harp
