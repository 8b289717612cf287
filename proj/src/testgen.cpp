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

#include "harp/testgen.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "text.hpp"

namespace harp {

std::vector<StateId> TestCase::node_sequence() const {
  std::vector<StateId> nodes;
  if (steps.empty()) return nodes;
  nodes.reserve(steps.size() + 1);
  nodes.push_back(steps.front().src);
  for (const auto& s : steps) nodes.push_back(s.dst);
  return nodes;
}

std::vector<std::string> TestCase::labels() const {
  std::vector<std::string> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(s.label);
  return out;
}

const TestCase* TestSuite::find(std::string_view id) const {
  for (const auto& tc : cases)
    if (tc.id == id) return &tc;
  return nullptr;
}

PathCapExceeded::PathCapExceeded(std::size_t cap)
    : Error("test generation exceeded the path cap of " + std::to_string(cap) + " paths"),
      cap_(cap) {}

namespace {

class PathEnumerator {
 public:
  PathEnumerator(const LtsModel& model, const GenerateOptions& options)
      : model_(model), options_(options) {}

  std::vector<std::vector<std::size_t>> run() {
    if (model_.outgoing(model_.initial()).empty()) return {};
    visits_[model_.initial()] = 1;
    extend(model_.initial());
    return std::move(paths_);
  }

 private:
  void emit() {
    if (path_.empty()) return;
    if (paths_.size() == options_.max_paths) throw PathCapExceeded(options_.max_paths);
    paths_.push_back(path_);
  }

  void extend(const StateId& state) {
    bool moved = false;
    for (std::size_t idx : model_.outgoing(state)) {
      const StateId& dst = model_.transitions()[idx].dst;
      std::size_t& count = visits_[dst];
      if (options_.loop_bound == 0 && count > 0) continue;
      moved = true;
      path_.push_back(idx);
      ++count;
      if (count > options_.loop_bound && options_.loop_bound > 0)
        emit();
      else
        extend(dst);
      --count;
      path_.pop_back();
    }
    if (!moved) emit();
  }

  const LtsModel& model_;
  const GenerateOptions& options_;
  std::unordered_map<StateId, std::size_t> visits_;
  std::vector<std::size_t> path_;
  std::vector<std::vector<std::size_t>> paths_;
};

}  // namespace

TestSuite generate(const LtsModel& model, const GenerateOptions& options) {
  TestSuite suite;
  suite.model_name = model.name();
  auto paths = PathEnumerator(model, options).run();
  suite.cases.reserve(paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i) {
    TestCase tc;
    tc.id = "TC" + std::to_string(i + 1);
    tc.steps.reserve(paths[i].size());
    for (std::size_t idx : paths[i]) tc.steps.push_back(model.transitions()[idx]);
    suite.cases.push_back(std::move(tc));
  }
  return suite;
}

SuiteStats suite_stats(const TestSuite& suite) {
  SuiteStats stats;
  stats.count = suite.cases.size();
  for (const auto& tc : suite.cases) {
    const std::size_t n = tc.steps.size();
    stats.shortest = std::min(stats.shortest.value_or(n), n);
    stats.longest = std::max(stats.longest.value_or(n), n);
  }
  return stats;
}

TestSuite parse_suite(std::string_view document, const LtsModel* model) {
  TestSuite suite;
  bool have_header = false;
  std::unordered_set<std::string> ids;
  const auto lines = text::lines(document);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::string_view line = lines[ln];
    const std::size_t lineno = ln + 1;
    if (text::is_comment_or_blank(line)) continue;
    const auto toks = text::tokens(line);
    if (!have_header) {
      if (toks.size() != 2 || toks[0] != "suite")
        throw ParseError(lineno, 1, "expected 'suite <model-name>' header");
      suite.model_name = std::string(toks[1]);
      have_header = true;
      continue;
    }
    if (toks[0] != "tc" || toks.size() < 3 || toks[2] != ":")
      throw ParseError(lineno, 1, "expected 'tc <id> : <src> -> <dst>[ ; <src> -> <dst>]*'");
    TestCase tc;
    tc.id = std::string(toks[1]);
    if (!ids.insert(tc.id).second) throw ParseError(lineno, 1, "duplicate test case id '" + tc.id + "'");

    const std::size_t body_start = static_cast<std::size_t>(toks[2].data() - line.data()) + 1;
    std::size_t col = body_start + 1;
    for (std::string_view step : text::split(line.substr(body_start), ';')) {
      const auto parts = text::tokens(step);
      if (parts.size() != 3 || parts[1] != "->")
        throw ParseError(lineno, col, "expected '<src> -> <dst>'");
      Transition t{StateId(parts[0]), StateId(parts[2]), {}};
      if (model) {
        const auto matches = model->between(t.src, t.dst);
        if (matches.empty())
          throw ParseError(lineno, col, "no transition " + t.src + " -> " + t.dst + " in model");
        if (matches.size() > 1)
          throw ParseError(lineno, col,
                           "ambiguous step " + t.src + " -> " + t.dst + " (parallel transitions)");
        t.label = model->transitions()[matches.front()].label;
      }
      if (!tc.steps.empty() && tc.steps.back().dst != t.src)
        throw ParseError(lineno, col, "step " + t.src + " -> " + t.dst + " does not continue from " +
                                          tc.steps.back().dst);
      tc.steps.push_back(std::move(t));
      col += step.size() + 1;
    }
    suite.cases.push_back(std::move(tc));
  }
  if (!have_header) throw ParseError(1, 0, "missing 'suite <model-name>' header");
  return suite;
}

std::string serialize_suite(const TestSuite& suite) {
  std::string out = "suite " + suite.model_name + "\n";
  for (const auto& tc : suite.cases) {
    out += "tc " + tc.id + " :";
    for (std::size_t i = 0; i < tc.steps.size(); ++i) {
      out += i == 0 ? " " : " ; ";
      out += tc.steps[i].src + " -> " + tc.steps[i].dst;
    }
    out += "\n";
  }
  return out;
}

void check_suite_against(const TestSuite& suite, const LtsModel& model) {
  for (const auto& tc : suite.cases) {
    for (std::size_t k = 0; k < tc.steps.size(); ++k) {
      const Transition& t = tc.steps[k];
      if (!model.find(t))
        throw Error("test case " + tc.id + " step " + std::to_string(k + 1) + " (" + t.src +
                    " -> " + t.dst + " : " + t.label + ") is not a transition of model '" +
                    model.name() + "'");
      if (k > 0 && tc.steps[k - 1].dst != t.src)
        throw Error("test case " + tc.id + " step " + std::to_string(k + 1) +
                    " does not continue from state " + tc.steps[k - 1].dst);
    }
  }
}

}  // namespace harp
