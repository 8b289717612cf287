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

#include "harp/lts.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>
#include <unordered_set>

#include "harp/error.hpp"
#include "harp/testgen.hpp"
#include "text.hpp"

namespace harp {

std::size_t TransitionHash::operator()(const Transition& t) const noexcept {
  std::hash<std::string> h;
  std::size_t seed = h(t.src);
  seed ^= h(t.dst) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  seed ^= h(t.label) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  return seed;
}

LtsModel::LtsModel(std::string name, std::vector<StateId> states, StateId initial,
                   std::vector<Transition> transitions)
    : name_(std::move(name)),
      states_(std::move(states)),
      initial_(std::move(initial)),
      transitions_(std::move(transitions)) {
  for (std::size_t i = 0; i < transitions_.size(); ++i) {
    const Transition& t = transitions_[i];
    out_[t.src].push_back(i);
    ++in_degree_[t.dst];
    index_.emplace(t, i);  // keeps the first of any duplicates
  }
}

bool LtsModel::has_state(std::string_view id) const {
  return std::find(states_.begin(), states_.end(), id) != states_.end();
}

const std::vector<std::size_t>& LtsModel::outgoing(std::string_view state) const {
  static const std::vector<std::size_t> kNone;
  auto it = out_.find(StateId(state));
  return it == out_.end() ? kNone : it->second;
}

std::size_t LtsModel::in_degree(std::string_view state) const {
  auto it = in_degree_.find(StateId(state));
  return it == in_degree_.end() ? 0 : it->second;
}

std::optional<std::size_t> LtsModel::find(const Transition& t) const {
  auto it = index_.find(t);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> LtsModel::between(std::string_view src, std::string_view dst) const {
  std::vector<std::size_t> out;
  for (std::size_t i : outgoing(src))
    if (transitions_[i].dst == dst) out.push_back(i);
  return out;
}

namespace {

std::size_t column_of(std::string_view line, std::string_view part) {
  return static_cast<std::size_t>(part.data() - line.data()) + 1;
}

}  // namespace

LtsModel parse_model(std::string_view document) {
  std::optional<std::string> name;
  std::optional<StateId> initial;
  std::size_t initial_line = 0;
  std::size_t initial_col = 0;
  std::vector<StateId> declared;
  std::unordered_set<StateId> declared_set;
  bool has_declarations = false;

  struct PendingTransition {
    Transition t;
    std::size_t line;
    std::size_t src_col;
    std::size_t dst_col;
  };
  std::vector<PendingTransition> pending;

  const auto lines = text::lines(document);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::string_view line = lines[ln];
    const std::size_t lineno = ln + 1;
    if (text::is_comment_or_blank(line)) continue;

    const auto toks = text::tokens(line);
    const std::string_view keyword = toks.front();
    if (!name) {
      if (keyword != "lts" || toks.size() != 2)
        throw ParseError(lineno, column_of(line, keyword), "expected 'lts <name>' header");
      name = std::string(toks[1]);
      continue;
    }
    if (keyword == "lts") {
      throw ParseError(lineno, column_of(line, keyword), "duplicate 'lts' header");
    } else if (keyword == "initial") {
      if (initial) throw ParseError(lineno, column_of(line, keyword), "duplicate 'initial'");
      if (toks.size() != 2)
        throw ParseError(lineno, column_of(line, keyword), "expected 'initial <state>'");
      initial = std::string(toks[1]);
      initial_line = lineno;
      initial_col = column_of(line, toks[1]);
    } else if (keyword == "states") {
      has_declarations = true;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        StateId id(toks[i]);
        if (!declared_set.insert(id).second)
          throw ParseError(lineno, column_of(line, toks[i]), "duplicate state '" + id + "'");
        declared.push_back(std::move(id));
      }
    } else if (keyword == "trans") {
      // trans <src> -> <dst> : <label>
      if (toks.size() < 4 || toks[2] != "->")
        throw ParseError(lineno, column_of(line, keyword),
                         "expected 'trans <src> -> <dst> : <label>'");
      const std::size_t sep = line.find(" : ");
      const std::size_t dst_end = column_of(line, toks[3]) - 1 + toks[3].size();
      if (sep == std::string_view::npos || sep < dst_end)
        throw ParseError(lineno, dst_end + 1, "missing ' : ' before label");
      const std::string_view between = text::trim(line.substr(dst_end, sep - dst_end));
      if (!between.empty())
        throw ParseError(lineno, column_of(line, between), "unexpected text before ' : '");
      const std::string_view label = text::trim_right(line.substr(sep + 3));
      if (text::trim(label).empty()) throw ParseError(lineno, sep + 4, "empty label");
      if (auto bar = label.find('|'); bar != std::string_view::npos)
        throw ParseError(lineno, sep + 4 + bar, "label contains reserved character '|'");
      pending.push_back({Transition{StateId(toks[1]), StateId(toks[3]), std::string(label)},
                         lineno, column_of(line, toks[1]), column_of(line, toks[3])});
    } else {
      throw ParseError(lineno, column_of(line, keyword),
                       "unknown keyword '" + std::string(keyword) + "'");
    }
  }

  if (!name) throw ParseError(1, 0, "missing 'lts <name>' header");
  if (!initial) throw ParseError(lines.size(), 0, "missing 'initial'");

  std::vector<StateId> states;
  if (has_declarations) {
    states = declared;
    if (!declared_set.count(*initial))
      throw ParseError(initial_line, initial_col, "unknown state '" + *initial + "'");
    for (const auto& p : pending) {
      if (!declared_set.count(p.t.src))
        throw ParseError(p.line, p.src_col, "unknown state '" + p.t.src + "'");
      if (!declared_set.count(p.t.dst))
        throw ParseError(p.line, p.dst_col, "unknown state '" + p.t.dst + "'");
    }
  } else {
    std::unordered_set<StateId> seen;
    auto add = [&](const StateId& s) {
      if (seen.insert(s).second) states.push_back(s);
    };
    add(*initial);
    for (const auto& p : pending) {
      add(p.t.src);
      add(p.t.dst);
    }
  }

  std::vector<Transition> transitions;
  std::unordered_set<Transition, TransitionHash> unique;
  for (auto& p : pending) {
    if (!unique.insert(p.t).second)
      throw ParseError(p.line, p.src_col,
                       "duplicate transition " + p.t.src + " -> " + p.t.dst + " : " + p.t.label);
    transitions.push_back(std::move(p.t));
  }
  return LtsModel(std::move(*name), std::move(states), std::move(*initial),
                  std::move(transitions));
}

std::string serialize_model(const LtsModel& model) {
  std::string out = "lts " + model.name() + "\n";
  out += "initial " + model.initial() + "\n";
  out += "states";
  for (const auto& s : model.states()) out += " " + s;
  out += "\n";
  for (const auto& t : model.transitions())
    out += "trans " + t.src + " -> " + t.dst + " : " + t.label + "\n";
  return out;
}

std::vector<std::string> validate(const LtsModel& model) {
  std::vector<std::string> violations;
  if (model.name().empty() || text::has_space(model.name()))
    violations.push_back("name: must be a non-empty token");
  if (model.states().empty()) violations.push_back("states: must be non-empty");

  std::unordered_set<StateId> states;
  for (const auto& s : model.states()) {
    if (s.empty() || text::has_space(s))
      violations.push_back("states: '" + s + "' is not a token");
    if (!states.insert(s).second) violations.push_back("states: duplicate state '" + s + "'");
  }
  if (!states.count(model.initial()))
    violations.push_back("initial: '" + model.initial() + "' is not a declared state");

  std::unordered_set<Transition, TransitionHash> seen;
  for (const auto& t : model.transitions()) {
    const std::string triple = "(" + t.src + ", " + t.dst + ", " + t.label + ")";
    if (!states.count(t.src))
      violations.push_back("transition " + triple + ": unknown source state '" + t.src + "'");
    if (!states.count(t.dst))
      violations.push_back("transition " + triple + ": unknown target state '" + t.dst + "'");
    if (t.label.find('|') != std::string::npos)
      violations.push_back("transition " + triple + ": label contains '|'");
    if (t.label.find('\n') != std::string::npos || t.label.find('\r') != std::string::npos)
      violations.push_back("transition " + triple + ": label contains a line break");
    if (text::trim(t.label).empty())
      violations.push_back("transition " + triple + ": empty label");
    if (!seen.insert(t).second) violations.push_back("transition " + triple + ": duplicate");
  }
  return violations;
}

namespace {

// Successor transition indices of `state` sorted by (target, label).
std::vector<std::size_t> canonical_successors(const LtsModel& model, const StateId& state) {
  std::vector<std::size_t> succ = model.outgoing(state);
  const auto& ts = model.transitions();
  std::sort(succ.begin(), succ.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(ts[a].dst, ts[a].label) < std::tie(ts[b].dst, ts[b].label);
  });
  return succ;
}

}  // namespace

std::size_t count_back_edges(const LtsModel& model) {
  enum class Mark { white, grey, black };
  std::unordered_map<StateId, Mark> mark;
  for (const auto& s : model.states()) mark[s] = Mark::white;
  if (!mark.count(model.initial())) return 0;

  struct Frame {
    StateId state;
    std::vector<std::size_t> succ;
    std::size_t next = 0;
  };
  std::size_t back_edges = 0;
  std::vector<Frame> stack;
  stack.push_back({model.initial(), canonical_successors(model, model.initial())});
  mark[model.initial()] = Mark::grey;
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next == top.succ.size()) {
      mark[top.state] = Mark::black;
      stack.pop_back();
      continue;
    }
    const StateId& dst = model.transitions()[top.succ[top.next++]].dst;
    Mark& m = mark[dst];
    if (m == Mark::grey) {
      ++back_edges;
    } else if (m == Mark::white) {
      m = Mark::grey;
      stack.push_back({dst, canonical_successors(model, dst)});
    }
  }
  return back_edges;
}

std::vector<StateId> unreachable_states(const LtsModel& model) {
  std::unordered_set<StateId> seen{model.initial()};
  std::vector<StateId> work{model.initial()};
  while (!work.empty()) {
    StateId s = std::move(work.back());
    work.pop_back();
    for (std::size_t i : model.outgoing(s)) {
      const StateId& d = model.transitions()[i].dst;
      if (seen.insert(d).second) work.push_back(d);
    }
  }
  std::vector<StateId> out;
  for (const auto& s : model.states())
    if (!seen.count(s)) out.push_back(s);
  return out;
}

ModelMetrics model_metrics(const LtsModel& model) {
  ModelMetrics m;
  for (const auto& s : model.states()) {
    if (model.outgoing(s).size() > 1) ++m.branches;
    if (model.in_degree(s) > 1) ++m.joins;
  }
  m.loops = count_back_edges(model);

  const TestSuite suite = generate(model);
  for (const auto& tc : suite.cases) {
    const std::size_t len = tc.steps.size();
    m.max_depth = std::max(m.max_depth.value_or(0), len);
    m.min_depth = std::min(m.min_depth.value_or(len), len);
  }
  if (suite.cases.empty()) m.warnings.push_back("no test cases: initial state has no transitions");
  for (const auto& s : unreachable_states(model))
    m.warnings.push_back("state '" + s + "' is unreachable from the initial state");
  return m;
}

}  // namespace harp
