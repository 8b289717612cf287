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

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "harp/lts.hpp"
#include "harp/testgen.hpp"

namespace harp::testing {

inline std::string read_data(const std::string& name) {
  std::ifstream in(std::string(HARP_DATA_DIR) + "/" + name, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline LtsModel login_model() { return parse_model(read_data("login.lts")); }

inline TestSuite login_suite() { return generate(login_model()); }

using Nodes = std::vector<std::string>;

inline Nodes nodes(std::initializer_list<int> ids) {
  Nodes out;
  for (int i : ids) out.push_back(std::to_string(i));
  return out;
}

// Node sequences of the seven login test cases, TC1..TC7.
inline std::vector<Nodes> login_paths() {
  return {
      nodes({1, 2, 3, 4, 5, 7, 8, 9, 11}),
      nodes({1, 2, 3, 4, 5, 7, 8, 10, 2, 3, 4, 5, 7, 8, 9, 11}),
      nodes({1, 2, 3, 4, 5, 7, 8, 10, 2, 3, 4, 5, 7, 8, 10, 2}),
      nodes({1, 2, 3, 4, 5, 7, 8, 10, 2, 3, 4, 6, 2}),
      nodes({1, 2, 3, 4, 6, 2, 3, 4, 5, 7, 8, 9, 11}),
      nodes({1, 2, 3, 4, 6, 2, 3, 4, 5, 7, 8, 10, 2}),
      nodes({1, 2, 3, 4, 6, 2, 3, 4, 6, 2}),
  };
}

inline std::size_t index_of(const TestSuite& suite, const std::string& id) {
  for (std::size_t i = 0; i < suite.cases.size(); ++i)
    if (suite.cases[i].id == id) return i;
  return suite.cases.size();
}

}  // namespace harp::testing
