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
#include <random>
#include <string_view>

namespace harp {

std::uint64_t splitmix64(std::uint64_t x);

// FNV-1a, used to fold names into seed derivations.
std::uint64_t fnv1a(std::string_view s);

/// Deterministic random stream. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; the bounded and real-valued draws are
/// computed here rather than through std distributions so results are
/// identical across standard libraries.
class RandomSource {
 public:
  static constexpr int kVersion = 1;

  explicit RandomSource(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01();

  // Uniform on [0, n). n must be positive.
  std::size_t uniform_index(std::size_t n);

  // Independent stream for sub-task `index`; does not advance this stream.
  RandomSource substream(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace harp
