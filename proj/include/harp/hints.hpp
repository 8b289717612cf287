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

#include "harp/error.hpp"
#include "harp/evaluation.hpp"
#include "harp/lts.hpp"
#include "harp/purpose.hpp"
#include "harp/testgen.hpp"

namespace harp {

enum class HintKind { good, bad };

std::string_view hint_kind_name(HintKind k);
std::optional<HintKind> parse_hint_kind(std::string_view name);

// Range for the failing proportion of the cases a hint selects.
struct HintQualityTarget {
  HintKind kind = HintKind::good;
  double lo = 0.20;
  double hi = 0.50;

  static HintQualityTarget good(double lo = 0.20, double hi = 0.50);
  static HintQualityTarget bad();
};

// |selected ∩ failing| / |selected|, failing being every case of `faults`.
// Throws when the purpose selects nothing.
double hint_quality(const TestSuite& suite, const TestPurpose& purpose, const FaultReport& faults,
                    const LtsModel& model);

struct SynthesizedHint {
  TestPurpose purpose;
  HintKind kind;
  double proportion;  // failing proportion of the selected cases
  std::size_t selected;
  std::string fault_id;

  // "<purpose>  # synthesized good, proportion=0.250000, fault=F1"
  std::string to_line() const;
};

class HintSearchError : public Error {
 public:
  using Error::Error;
};

/// Mechanized good/bad hint derivation for one fault.
///
/// Good: try `*|L|*` for every label L on the fault's failing cases; when
/// none lands in [lo, hi], also try `*|L1|*|L2|*` for label pairs in order
/// along a failing case. Proportions are measured against this fault's
/// failing cases. The in-range candidate with the largest proportion wins,
/// ties broken by purpose text.
///
/// Bad: `*|L|*` for labels appearing in no failing case of any fault, so the
/// selection is non-empty and entirely passing. Lexicographically first wins.
SynthesizedHint synthesize_hint(const TestSuite& suite, const FaultReport& faults,
                                std::string_view fault_id, const LtsModel& model,
                                const HintQualityTarget& target);

}  // namespace harp
