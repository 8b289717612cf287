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

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "harp/lts.hpp"
#include "harp/testgen.hpp"

namespace harp {

struct Wildcard {
  friend bool operator==(const Wildcard&, const Wildcard&) = default;
};

struct LabelLiteral {
  std::string text;
  friend bool operator==(const LabelLiteral&, const LabelLiteral&) = default;
};

using PurposeToken = std::variant<Wildcard, LabelLiteral>;

/// Accept-only test purpose: a '|'-separated sequence of labels and '*'
/// wildcards, matched against the whole label sequence of a test case. A
/// wildcard absorbs zero or more labels; a literal matches exactly one label
/// by case-sensitive string equality.
class TestPurpose {
 public:
  explicit TestPurpose(std::vector<PurposeToken> tokens);

  const std::vector<PurposeToken>& tokens() const { return tokens_; }

  // Compact form, e.g. "*|C - Invalid Login|*".
  std::string to_string() const;

  bool matches_labels(const std::vector<std::string>& labels) const;

  friend bool operator==(const TestPurpose&, const TestPurpose&) = default;

 private:
  std::vector<PurposeToken> tokens_;
};

TestPurpose parse_purpose(std::string_view text);

// `*|l1|*|l2|*...` for the given literals.
TestPurpose interleaved_purpose(const std::vector<std::string>& literals);

struct HintSet {
  std::vector<TestPurpose> purposes;
  std::vector<std::string> provenance;  // parallel to purposes; may be empty strings
};

// Purpose file: one purpose per line, with an optional "  # provenance"
// suffix. Lines starting with '#' and blank lines are skipped.
HintSet parse_hint_set(std::string_view document);
std::string serialize_hint_set(const HintSet& hints);

// Resolves every step against `model` first and throws naming the step when
// one is not a transition of the model.
bool matches(const TestPurpose& purpose, const TestCase& tc, const LtsModel& model);

// Cases matching at least one purpose, in suite order.
std::vector<const TestCase*> filter(const TestSuite& suite, const HintSet& hints,
                                    const LtsModel& model);

// Suite indices of the cases `filter` would return.
std::vector<std::size_t> filter_indices(const TestSuite& suite, const HintSet& hints,
                                        const LtsModel& model);

}  // namespace harp
