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

#include "harp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>
#include <unordered_set>

#include "text.hpp"

namespace harp {

// ---------------------------------------------------------------------------
// Synthetic models

namespace {

struct Tree {
  std::vector<std::size_t> parent;  // parent[0] unused
  std::vector<std::vector<std::size_t>> children;
  std::vector<std::size_t> depth;

  bool is_ancestor_or_self(std::size_t a, std::size_t u) const {
    for (;;) {
      if (a == u) return true;
      if (u == 0) return false;
      u = parent[u];
    }
  }
};

// Random tree on n nodes in which exactly `branches` nodes have two children
// and every other internal node has one. Empty optional when the draw gets
// stuck (no single-child node left when a branch is required).
std::optional<Tree> random_tree(std::size_t n, std::size_t branches, RandomSource& rng) {
  Tree t;
  t.parent.assign(n, 0);
  t.children.assign(n, {});
  t.depth.assign(n, 0);
  std::size_t branches_left = branches;
  for (std::size_t node = 1; node < n; ++node) {
    const std::size_t insertions_left = n - node;
    std::vector<std::size_t> leaves;
    std::vector<std::size_t> single;
    for (std::size_t v = 0; v < node; ++v) {
      if (t.children[v].empty()) leaves.push_back(v);
      if (t.children[v].size() == 1) single.push_back(v);
    }
    bool branch;
    if (branches_left == 0)
      branch = false;
    else if (branches_left == insertions_left)
      branch = true;
    else
      branch = rng.uniform01() * static_cast<double>(insertions_left) <
               static_cast<double>(branches_left);
    if (branch && single.empty()) {
      if (branches_left == insertions_left) return std::nullopt;
      branch = false;
    }
    const auto& pool = branch ? single : leaves;
    const std::size_t p = pool[rng.uniform_index(pool.size())];
    if (branch) --branches_left;
    t.parent[node] = p;
    t.depth[node] = t.depth[p] + 1;
    t.children[p].push_back(node);
  }
  if (branches_left != 0) return std::nullopt;
  return t;
}

std::string label_for(std::size_t index, std::size_t out_degree) {
  const std::string n = std::to_string(index + 1);
  if (out_degree > 1) return "C - condition " + n;
  return index % 2 == 0 ? "S - step " + n : "R - response " + n;
}

void check_feasible(const SyntheticModelParams& p) {
  auto fail = [](const std::string& why) { throw InfeasibleParameters("infeasible model parameters: " + why); };
  if (p.states == 0) fail("states must be at least 1");
  if (2 * p.branches > p.states - 1)
    fail("branches=" + std::to_string(p.branches) + " needs states >= 2*branches+1 (states=" +
         std::to_string(p.states) + ")");
  if (p.joins > p.states - 1)
    fail("joins=" + std::to_string(p.joins) + " exceeds states-1=" + std::to_string(p.states - 1));
  if (p.joins == 0 && p.loops > 1)
    fail("loops=" + std::to_string(p.loops) + " needs at least one join (only a single loop back "
         "to the initial state avoids creating one)");
  const std::size_t leaves = p.branches + 1;
  const std::size_t extra_edges = std::max(p.loops, p.joins);
  if (extra_edges + p.min_sinks > leaves)
    fail("sinks: " + std::to_string(leaves) + " leaves cannot host " + std::to_string(extra_edges) +
         " loop/join edges and keep " + std::to_string(p.min_sinks) +
         " sink(s); raise branches or lower loops/joins");
}

std::optional<LtsModel> attempt_model(const SyntheticModelParams& p, RandomSource& rng,
                                      const std::string& name) {
  const std::size_t n = p.states;
  auto tree = random_tree(n, p.branches, rng);
  if (!tree) return std::nullopt;

  std::vector<std::size_t> leaves;
  for (std::size_t v = 0; v < n; ++v)
    if (tree->children[v].empty()) leaves.push_back(v);
  for (std::size_t i = leaves.size(); i > 1; --i)
    std::swap(leaves[i - 1], leaves[rng.uniform_index(i)]);

  // Back-edge targets: `distinct` different states, each becoming a join.
  std::size_t distinct = 0;
  if (p.loops > 0) {
    if (p.joins == 0) {
      distinct = 0;  // the single loop returns to the initial state
    } else {
      const std::size_t spare = leaves.size() - p.loops - p.min_sinks;
      const std::size_t lo = std::max<std::size_t>(1, p.joins > spare ? p.joins - spare : 0);
      const std::size_t hi = std::min(p.loops, p.joins);
      if (lo > hi) return std::nullopt;
      distinct = lo + rng.uniform_index(hi - lo + 1);
    }
  }
  const std::size_t cross = p.joins - distinct;
  if (p.loops + cross + p.min_sinks > leaves.size()) return std::nullopt;

  std::vector<std::pair<std::size_t, std::size_t>> extra;
  std::vector<std::size_t> targets;
  for (std::size_t k = 0; k < p.loops; ++k) {
    const std::size_t u = leaves[k];
    if (p.joins == 0) {
      extra.emplace_back(u, 0);
      continue;
    }
    std::vector<std::size_t> reuse;
    for (std::size_t t : targets)
      if (tree->is_ancestor_or_self(t, u)) reuse.push_back(t);
    std::vector<std::size_t> fresh;
    for (std::size_t a = u; a != 0; a = tree->parent[a])
      if (std::find(targets.begin(), targets.end(), a) == targets.end()) fresh.push_back(a);
    const std::size_t remaining = p.loops - k;
    const std::size_t missing = distinct - targets.size();
    bool take_fresh;
    if (missing == 0)
      take_fresh = false;
    else if (missing == remaining || reuse.empty())
      take_fresh = true;
    else
      take_fresh = rng.uniform01() < 0.5;
    const auto& pool = take_fresh ? fresh : reuse;
    if (pool.empty()) return std::nullopt;
    const std::size_t target = pool[rng.uniform_index(pool.size())];
    if (take_fresh) targets.push_back(target);
    extra.emplace_back(u, target);
  }
  for (std::size_t k = 0; k < cross; ++k) {
    const std::size_t u = leaves[p.loops + k];
    std::vector<std::size_t> pool;
    for (std::size_t v = 1; v < n; ++v)
      if (!tree->is_ancestor_or_self(v, u) &&
          std::find(targets.begin(), targets.end(), v) == targets.end())
        pool.push_back(v);
    if (pool.empty()) return std::nullopt;
    const std::size_t target = pool[rng.uniform_index(pool.size())];
    targets.push_back(target);
    extra.emplace_back(u, target);
  }

  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t v = 1; v < n; ++v) edges.emplace_back(tree->parent[v], v);
  edges.insert(edges.end(), extra.begin(), extra.end());
  std::stable_sort(edges.begin(), edges.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<std::size_t> out_degree(n, 0);
  for (const auto& e : edges) ++out_degree[e.first];
  std::vector<StateId> states;
  for (std::size_t v = 0; v < n; ++v) states.push_back(std::to_string(v + 1));
  std::vector<Transition> transitions;
  for (std::size_t i = 0; i < edges.size(); ++i)
    transitions.push_back({states[edges[i].first], states[edges[i].second],
                           label_for(i, out_degree[edges[i].first])});
  LtsModel model(name, states, states[0], std::move(transitions));

  std::size_t branches = 0, joins = 0, sinks = 0;
  for (const auto& s : model.states()) {
    const std::size_t out = model.outgoing(s).size();
    if (out > 1) ++branches;
    if (out == 0) ++sinks;
    if (model.in_degree(s) > 1) ++joins;
  }
  if (branches != p.branches || joins != p.joins || sinks < p.min_sinks ||
      count_back_edges(model) != p.loops || !unreachable_states(model).empty())
    return std::nullopt;
  return model;
}

}  // namespace

LtsModel gen_random_lts(const SyntheticModelParams& params, RandomSource& rng, std::string name,
                        std::size_t max_attempts) {
  check_feasible(params);
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt)
    if (auto model = attempt_model(params, rng, name)) return std::move(*model);
  throw InfeasibleParameters(
      "could not realise states=" + std::to_string(params.states) +
      " branches=" + std::to_string(params.branches) + " joins=" + std::to_string(params.joins) +
      " loops=" + std::to_string(params.loops) + " after " + std::to_string(max_attempts) +
      " attempts");
}

// ---------------------------------------------------------------------------
// Fault planting

namespace {

std::size_t reveal_limit(std::size_t n, const PlantOptions& options) {
  const auto by_fraction =
      static_cast<std::size_t>(static_cast<double>(n) * options.max_fraction);
  return std::min(by_fraction, options.max_revealing);
}

}  // namespace

std::vector<std::string> revealing_cases(const TestSuite& suite, const TestPurpose& cause,
                                         const LtsModel& model) {
  check_suite_against(suite, model);
  std::vector<std::string> out;
  for (const auto& tc : suite.cases)
    if (cause.matches_labels(tc.labels())) out.push_back(tc.id);
  return out;
}

std::vector<std::string> fault_from_purpose(const TestSuite& suite, const TestPurpose& cause,
                                            const LtsModel& model, const PlantOptions& options) {
  auto cases = revealing_cases(suite, cause, model);
  const std::size_t limit = reveal_limit(suite.cases.size(), options);
  if (cases.empty())
    throw Error("fault purpose '" + cause.to_string() + "' is revealed by no test case");
  if (cases.size() > limit)
    throw Error("fault purpose '" + cause.to_string() + "' is revealed by " +
                std::to_string(cases.size()) + " of " + std::to_string(suite.cases.size()) +
                " test cases (limit " + std::to_string(limit) + ")");
  return cases;
}

PlantedFaults plant_faults(const LtsModel& model, const TestSuite& suite, std::size_t count,
                           RandomSource& rng, const PlantOptions& options) {
  if (suite.cases.empty()) throw Error("cannot plant faults into an empty test suite");
  if (count == 0) throw Error("fault count must be at least 1");
  check_suite_against(suite, model);
  std::vector<std::vector<std::string>> labels;
  for (const auto& tc : suite.cases) labels.push_back(tc.labels());
  const std::size_t limit = reveal_limit(suite.cases.size(), options);
  const std::size_t max_literals = std::max<std::size_t>(1, options.max_literals);

  PlantedFaults out;
  for (std::size_t f = 1; f <= count; ++f) {
    const std::string id = "F" + std::to_string(f);
    bool planted = false;
    for (std::size_t retry = 0; retry < options.retries && !planted; ++retry) {
      const std::size_t pick = rng.uniform_index(suite.cases.size());
      const auto& seq = labels[pick];
      const std::size_t k = std::min(seq.size(), 1 + rng.uniform_index(max_literals));
      std::vector<std::size_t> positions(seq.size());
      std::iota(positions.begin(), positions.end(), std::size_t{0});
      for (std::size_t i = 0; i < k; ++i)
        std::swap(positions[i], positions[i + rng.uniform_index(positions.size() - i)]);
      positions.resize(k);
      std::sort(positions.begin(), positions.end());
      std::vector<std::string> literals;
      for (std::size_t pos : positions) literals.push_back(seq[pos]);
      TestPurpose cause = interleaved_purpose(literals);

      std::vector<std::string> failing;
      for (std::size_t i = 0; i < suite.cases.size(); ++i)
        if (cause.matches_labels(labels[i])) failing.push_back(suite.cases[i].id);
      if (failing.empty() || failing.size() > limit) continue;
      out.report.faults.emplace(id, std::move(failing));
      out.causes.emplace(id, std::move(cause));
      planted = true;
    }
    if (!planted)
      throw Error("could not plant fault " + id + " revealed by 1.." + std::to_string(limit) +
                  " of " + std::to_string(suite.cases.size()) + " test cases after " +
                  std::to_string(options.retries) + " draws");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Configuration

namespace {

std::size_t parse_count(std::string_view v, std::size_t line, const std::string& key) {
  std::size_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ParseError(line, 1, "'" + key + "' expects a non-negative integer, got '" + std::string(v) + "'");
  return out;
}

double parse_double(std::string_view v, std::size_t line, const std::string& key) {
  double out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ParseError(line, 1, "'" + key + "' expects a number, got '" + std::string(v) + "'");
  return out;
}

Range parse_range(std::string_view v, std::size_t line, const std::string& key) {
  const auto dash = v.find('-');
  if (dash == std::string_view::npos) {
    const std::size_t x = parse_count(v, line, key);
    return {x, x};
  }
  Range r{parse_count(text::trim(v.substr(0, dash)), line, key),
          parse_count(text::trim(v.substr(dash + 1)), line, key)};
  if (r.lo > r.hi) throw ParseError(line, 1, "'" + key + "' range has lo > hi");
  return r;
}

std::vector<std::string_view> list_items(std::string_view v) {
  std::vector<std::string_view> out;
  for (auto piece : text::split(v, ',')) {
    piece = text::trim(piece);
    if (!piece.empty()) out.push_back(piece);
  }
  return out;
}

// "good", "good:0.2-0.5" or "bad".
HintQualityTarget parse_target(std::string_view item, std::size_t line) {
  const auto colon = item.find(':');
  const auto kind = parse_hint_kind(item.substr(0, colon));
  if (!kind) throw ParseError(line, 1, "unknown hint kind '" + std::string(item) + "'");
  if (*kind == HintKind::bad) {
    if (colon != std::string_view::npos) throw ParseError(line, 1, "bad hints take no range");
    return HintQualityTarget::bad();
  }
  if (colon == std::string_view::npos) return HintQualityTarget::good();
  const std::string_view range = item.substr(colon + 1);
  const auto dash = range.find('-');
  if (dash == std::string_view::npos) throw ParseError(line, 1, "expected good:<lo>-<hi>");
  try {
    return HintQualityTarget::good(parse_double(range.substr(0, dash), line, "hint_targets"),
                                   parse_double(range.substr(dash + 1), line, "hint_targets"));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(line, 1, e.what());
  }
}

}  // namespace

ExperimentConfig parse_experiment_config(std::string_view document) {
  ExperimentConfig c;
  std::set<std::string> seen;
  const auto lines = text::lines(document);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::size_t line = ln + 1;
    if (text::is_comment_or_blank(lines[ln])) continue;
    const auto eq = lines[ln].find('=');
    if (eq == std::string_view::npos) throw ParseError(line, 1, "expected 'key = value'");
    const std::string key(text::trim(lines[ln].substr(0, eq)));
    const std::string_view value = text::trim(lines[ln].substr(eq + 1));
    if (!seen.insert(key).second) throw ParseError(line, 1, "duplicate key '" + key + "'");

    if (key == "techniques") {
      c.techniques.clear();
      for (auto item : list_items(value)) {
        const auto t = parse_technique(item);
        if (!t) throw ParseError(line, 1, "unknown technique '" + std::string(item) + "'");
        c.techniques.push_back(*t);
      }
    } else if (key == "metrics") {
      c.metrics.clear();
      for (auto item : list_items(value)) {
        const auto m = parse_metric(item);
        if (!m) throw ParseError(line, 1, "unknown metric '" + std::string(item) + "'");
        c.metrics.push_back(*m);
      }
    } else if (key == "hint_targets") {
      c.hint_targets.clear();
      for (auto item : list_items(value)) {
        const auto t = parse_target(item, line);
        for (const auto& other : c.hint_targets)
          if (other.kind == t.kind) throw ParseError(line, 1, "duplicate hint kind");
        c.hint_targets.push_back(t);
      }
    } else if (key == "models") {
      for (auto item : list_items(value)) c.model_files.emplace_back(item);
    } else if (key == "repetitions") {
      c.repetitions = parse_count(value, line, key);
    } else if (key == "seed") {
      std::uint64_t s = 0;
      const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), s);
      if (ec != std::errc() || ptr != value.data() + value.size())
        throw ParseError(line, 1, "'seed' expects an unsigned 64-bit integer");
      c.seed = s;
    } else if (key == "synthetic_models") {
      c.synthetic_models = parse_count(value, line, key);
    } else if (key == "states") {
      c.states = parse_range(value, line, key);
    } else if (key == "branches") {
      c.branches = parse_range(value, line, key);
    } else if (key == "joins") {
      c.joins = parse_range(value, line, key);
    } else if (key == "loops") {
      c.loops = parse_range(value, line, key);
    } else if (key == "sinks") {
      c.min_sinks = parse_count(value, line, key);
    } else if (key == "faults_per_model") {
      c.faults_per_model = parse_count(value, line, key);
    } else if (key == "fault_max_revealing") {
      c.fault_max_revealing = parse_count(value, line, key);
    } else if (key == "loop_bound") {
      c.loop_bound = parse_count(value, line, key);
    } else if (key == "min_suite_size") {
      c.min_suite_size = parse_count(value, line, key);
    } else if (key == "max_suite_size") {
      c.max_suite_size = parse_count(value, line, key);
    } else if (key == "max_object_attempts") {
      c.max_object_attempts = parse_count(value, line, key);
    } else if (key == "threads") {
      c.threads = parse_count(value, line, key);
    } else {
      throw ParseError(line, 1, "unknown key '" + key + "'");
    }
  }
  if (c.repetitions == 0) throw ParseError(1, 0, "repetitions must be at least 1");
  if (c.techniques.empty()) throw ParseError(1, 0, "at least one technique is required");
  if (c.metrics.empty()) throw ParseError(1, 0, "at least one metric is required");
  if (c.faults_per_model == 0) throw ParseError(1, 0, "faults_per_model must be at least 1");
  const bool uses_harp =
      std::find(c.techniques.begin(), c.techniques.end(), Technique::harp) != c.techniques.end();
  if (uses_harp && c.hint_targets.empty())
    throw ParseError(1, 0, "technique harp needs at least one hint target");
  if (c.min_suite_size > c.max_suite_size)
    throw ParseError(1, 0, "min_suite_size exceeds max_suite_size");
  return c;
}

// ---------------------------------------------------------------------------
// Objects

ExperimentObject prepare_object(std::string id, LtsModel model, const ExperimentConfig& config,
                                RandomSource& rng) {
  TestSuite suite = generate(model, {config.loop_bound, std::max<std::size_t>(config.max_suite_size, 1)});
  if (suite.cases.empty()) throw Error("model '" + id + "' yields an empty test suite");

  PlantOptions plant;
  plant.max_revealing = config.fault_max_revealing;
  PlantedFaults faults = plant_faults(model, suite, config.faults_per_model, rng, plant);

  ExperimentObject obj{std::move(id), std::move(model), std::move(suite), std::move(faults), {}, {}, {}};
  const bool uses_hints = std::find(config.techniques.begin(), config.techniques.end(),
                                    Technique::harp) != config.techniques.end();
  for (const auto& target : uses_hints ? config.hint_targets : std::vector<HintQualityTarget>{}) {
    HintSet set;
    auto& list = obj.hints[target.kind];
    for (const auto& [fault_id, cases] : obj.faults.report.faults) {
      list.push_back(synthesize_hint(obj.suite, obj.faults.report, fault_id, obj.model, target));
      set.purposes.push_back(list.back().purpose);
      set.provenance.push_back(list.back().to_line());
    }
    obj.hinted[target.kind] = filter_indices(obj.suite, set, obj.model);
  }
  TransitionIndex index;
  obj.profiles = make_profiles(obj.suite, index);
  return obj;
}

namespace {

std::size_t draw(const Range& r, RandomSource& rng) { return r.lo + rng.uniform_index(r.hi - r.lo + 1); }

std::string object_id(std::size_t index) {
  std::string n = std::to_string(index + 1);
  if (n.size() < 2) n.insert(0, "0");
  return "syn" + n;
}

}  // namespace

ExperimentObject synthetic_object(std::size_t index, const ExperimentConfig& config) {
  const std::string id = object_id(index);
  std::string last_error = "no attempt made";
  for (std::size_t attempt = 0; attempt < config.max_object_attempts; ++attempt) {
    RandomSource rng(splitmix64(splitmix64(config.seed ^ fnv1a(id)) + attempt));
    SyntheticModelParams p;
    p.states = draw(config.states, rng);
    p.branches = draw(config.branches, rng);
    p.joins = draw(config.joins, rng);
    p.loops = draw(config.loops, rng);
    p.min_sinks = config.min_sinks;
    try {
      LtsModel model = gen_random_lts(p, rng, id, 50);
      const TestSuite suite = generate(model, {config.loop_bound, config.max_suite_size});
      if (suite.cases.size() < config.min_suite_size) {
        last_error = "suite of " + std::to_string(suite.cases.size()) + " test cases is below min_suite_size";
        continue;
      }
      return prepare_object(id, std::move(model), config, rng);
    } catch (const Error& e) {
      last_error = e.what();
    }
  }
  throw Error("could not build synthetic object " + id + " in " +
              std::to_string(config.max_object_attempts) + " attempts; last failure: " + last_error);
}

// ---------------------------------------------------------------------------
// Running

std::uint64_t trial_seed(std::uint64_t base, std::string_view model, std::string_view technique,
                         std::string_view hint, std::size_t trial) {
  std::uint64_t h = splitmix64(base);
  h = splitmix64(h ^ fnv1a(model));
  h = splitmix64(h ^ fnv1a(technique));
  h = splitmix64(h ^ fnv1a(hint));
  return splitmix64(h ^ static_cast<std::uint64_t>(trial));
}

std::string treatment_name(std::string_view technique, std::string_view hint) {
  std::string out(technique);
  if (hint != "none") out += "-" + std::string(hint);
  return out;
}

namespace {

struct Treatment {
  Technique technique;
  std::optional<HintKind> hint;
  std::string hint_name() const { return hint ? std::string(hint_kind_name(*hint)) : "none"; }
};

struct Job {
  std::size_t object;
  std::size_t treatment;
  std::size_t trial;
};

double rounded(double v) {
  const std::string s = text::fixed(v, 6);
  double out = 0;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

auto record_key(const TrialRecord& r) {
  return std::tie(r.model, r.technique, r.hint, r.trial, r.metric);
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config,
                                std::span<const ExperimentObject> objects) {
  if (objects.empty()) throw Error("experiment has no models");
  if (config.repetitions == 0) throw Error("repetitions must be at least 1");

  std::vector<Treatment> treatments;
  for (Technique t : config.techniques) {
    if (t == Technique::harp)
      for (const auto& target : config.hint_targets) treatments.push_back({t, target.kind});
    else
      treatments.push_back({t, std::nullopt});
  }

  std::vector<Job> jobs;
  for (std::size_t o = 0; o < objects.size(); ++o)
    for (std::size_t t = 0; t < treatments.size(); ++t)
      for (std::size_t k = 0; k < config.repetitions; ++k) jobs.push_back({o, t, k});

  const std::size_t per_job = config.metrics.size();
  std::vector<TrialRecord> records(jobs.size() * per_job);

  auto run_job = [&](std::size_t j) {
    const Job& job = jobs[j];
    const ExperimentObject& obj = objects[job.object];
    const Treatment& tr = treatments[job.treatment];
    const std::string technique(technique_name(tr.technique));
    const std::string hint = tr.hint_name();
    const std::uint64_t seed = trial_seed(config.seed, obj.id, technique, hint, job.trial);
    try {
      RandomSource rng(seed);
      PrioritizedSuite order;
      switch (tr.technique) {
        case Technique::harp: {
          auto it = obj.hinted.find(*tr.hint);
          if (it == obj.hinted.end()) throw Error("no " + hint + " hints prepared");
          order = harp_prioritize(obj.suite, obj.profiles, it->second, rng);
          break;
        }
        case Technique::arp_jaccard: order = arp_jaccard_prioritize(obj.suite, obj.profiles, rng); break;
        case Technique::greedy: order = greedy_steps(obj.suite); break;
        case Technique::random: order = random_order(obj.suite, rng); break;
      }
      for (std::size_t m = 0; m < per_job; ++m) {
        const MetricValue v = evaluate(config.metrics[m], order, obj.faults.report);
        records[j * per_job + m] = TrialRecord{obj.id, technique, hint, seed, job.trial,
                                               std::string(metric_name(config.metrics[m])),
                                               rounded(v.value)};
      }
    } catch (const Error& e) {
      throw Error("trial failed (model=" + obj.id + ", technique=" + technique + ", hint=" + hint +
                  ", seed=" + std::to_string(seed) + "): " + e.what());
    }
  };

  const std::size_t threads = std::max<std::size_t>(1, std::min(config.threads, jobs.size()));
  if (threads == 1) {
    for (std::size_t j = 0; j < jobs.size(); ++j) run_job(j);
  } else {
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::optional<std::string> first_error;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < threads; ++w)
      pool.emplace_back([&] {
        for (std::size_t j = next++; j < jobs.size() && !failed; j = next++) {
          try {
            run_job(j);
          } catch (const std::exception& e) {
            std::lock_guard lock(error_mutex);
            if (!first_error) first_error = e.what();
            failed = true;
          }
        }
      });
    for (auto& t : pool) t.join();
    if (first_error) throw Error(*first_error);
  }

  std::sort(records.begin(), records.end(),
            [](const TrialRecord& a, const TrialRecord& b) { return record_key(a) < record_key(b); });
  ExperimentResult result;
  result.summary = summarize(records);
  result.records = std::move(records);
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  std::vector<ExperimentObject> objects;
  for (std::size_t i = 0; i < config.model_files.size(); ++i) {
    const std::string& path = config.model_files[i];
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read model file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    LtsModel model = [&] {
      try {
        return parse_model(buf.str());
      } catch (const ParseError& e) {
        throw Error(path + ":" + e.what());
      }
    }();
    std::string id = model.name();
    RandomSource rng(splitmix64(config.seed ^ fnv1a(id)));
    objects.push_back(prepare_object(std::move(id), std::move(model), config, rng));
  }
  for (std::size_t i = 0; i < config.synthetic_models; ++i)
    objects.push_back(synthetic_object(i, config));
  std::set<std::string> ids;
  for (const auto& o : objects)
    if (!ids.insert(o.id).second) throw Error("duplicate model id '" + o.id + "' in experiment");
  return run_experiment(config, objects);
}

// ---------------------------------------------------------------------------
// Reports

namespace {
constexpr std::string_view kRecordsHeader = "model,technique,hint,seed,trial,metric,value";
constexpr std::string_view kSummaryHeader = "model,metric,treatment_a,treatment_b,a12,effect";
}  // namespace

std::string records_csv(std::span<const TrialRecord> records) {
  std::string out(kRecordsHeader);
  out += "\n";
  for (const auto& r : records) {
    out += r.model + "," + r.technique + "," + r.hint + "," + std::to_string(r.seed) + "," +
           std::to_string(r.trial) + "," + r.metric + "," + text::fixed(r.value, 6) + "\n";
  }
  return out;
}

std::vector<TrialRecord> parse_records_csv(std::string_view document) {
  const auto lines = text::lines(document);
  if (lines.empty() || lines[0] != kRecordsHeader)
    throw ParseError(1, 1, "expected header '" + std::string(kRecordsHeader) + "'");
  std::vector<TrialRecord> out;
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    if (lines[ln].empty()) continue;
    const auto f = text::split(lines[ln], ',');
    if (f.size() != 7) throw ParseError(ln + 1, 1, "expected 7 fields");
    TrialRecord r;
    r.model = std::string(f[0]);
    r.technique = std::string(f[1]);
    r.hint = std::string(f[2]);
    r.metric = std::string(f[5]);
    const auto bad = [&](std::string_view what) { return ParseError(ln + 1, 1, "invalid " + std::string(what)); };
    if (std::from_chars(f[3].data(), f[3].data() + f[3].size(), r.seed).ec != std::errc()) throw bad("seed");
    if (std::from_chars(f[4].data(), f[4].data() + f[4].size(), r.trial).ec != std::errc()) throw bad("trial");
    if (std::from_chars(f[6].data(), f[6].data() + f[6].size(), r.value).ec != std::errc()) throw bad("value");
    out.push_back(std::move(r));
  }
  return out;
}

std::string summary_csv(std::span<const A12Row> rows) {
  std::string out(kSummaryHeader);
  out += "\n";
  for (const auto& r : rows)
    out += r.model + "," + r.metric + "," + r.treatment_a + "," + r.treatment_b + "," +
           text::fixed(r.statistic, 6) + "," + std::string(effect_label_name(r.label)) + "\n";
  return out;
}

std::vector<A12Row> summarize(std::span<const TrialRecord> records) {
  // (model, metric) -> treatment -> values in trial order
  std::map<std::pair<std::string, std::string>, std::map<std::string, std::vector<std::pair<std::size_t, double>>>>
      groups;
  for (const auto& r : records)
    groups[{r.model, r.metric}][treatment_name(r.technique, r.hint)].emplace_back(r.trial, r.value);

  std::vector<A12Row> rows;
  std::map<std::tuple<std::string, std::string, std::string>, std::vector<double>> per_pair;
  for (auto& [key, treatments] : groups) {
    std::vector<std::string> names;
    std::vector<std::vector<double>> values;
    for (auto& [name, samples] : treatments) {
      std::sort(samples.begin(), samples.end());
      names.push_back(name);
      std::vector<double> v;
      for (const auto& s : samples) v.push_back(s.second);
      values.push_back(std::move(v));
    }
    for (std::size_t a = 0; a < names.size(); ++a)
      for (std::size_t b = a + 1; b < names.size(); ++b) {
        const EffectSize e = a12(values[a], values[b]);
        rows.push_back({key.first, key.second, names[a], names[b], e.statistic, e.label});
        per_pair[{key.second, names[a], names[b]}].push_back(e.statistic);
      }
  }
  for (auto& [key, stats] : per_pair) {
    std::sort(stats.begin(), stats.end());
    const std::size_t n = stats.size();
    const double median = n % 2 ? stats[n / 2] : (stats[n / 2 - 1] + stats[n / 2]) / 2.0;
    rows.push_back({"median", std::get<0>(key), std::get<1>(key), std::get<2>(key), median,
                    classify_a12(median)});
  }
  return rows;
}

}  // namespace harp
