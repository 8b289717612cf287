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

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "harp/evaluation.hpp"
#include "harp/harness.hpp"
#include "harp/hints.hpp"
#include "harp/lts.hpp"
#include "harp/prioritizers.hpp"
#include "harp/purpose.hpp"
#include "harp/testgen.hpp"

namespace harp::cli {

namespace {

namespace fs = std::filesystem;

// Usage problems detected after CLI11 parsing.
struct UsageError {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

template <typename Parse>
auto load(const std::string& path, Parse&& parse) {
  const std::string doc = read_file(path);
  try {
    return parse(doc);
  } catch (const ParseError& e) {
    throw Error(path + ":" + e.what());
  }
}

LtsModel load_model(const std::string& path) {
  return load(path, [](const std::string& d) { return parse_model(d); });
}

TestSuite load_suite(const std::string& path, const LtsModel* model) {
  return load(path, [&](const std::string& d) { return parse_suite(d, model); });
}

// Writes through a temporary file in the same directory, then renames.
void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write '" + path + "'");
    f << content;
    if (!f.flush()) throw Error("cannot write '" + path + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error("cannot write '" + path + "'");
  }
}

std::vector<double> load_samples(const std::string& path) {
  std::vector<double> out;
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string tok = line.substr(first, last - first + 1);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw Error(path + ":" + std::to_string(ln) + ":1: not a number: '" + tok + "'");
    }
  }
  if (out.empty()) throw Error(path + ": no samples");
  return out;
}

std::string fixed6(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 6);
  return std::string(buf, r.ptr);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hint-based adaptive random prioritization of model-based test suites", "harp"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every command");

  std::string model_path, suite_path, purposes_path, faults_path, output, fault_id, kind_name,
      technique_name_arg, metric_name_arg, file_a, file_b, config_path, summary_path, order_path;
  std::size_t loop_bound = 2;
  std::size_t max_paths = 100000;
  std::optional<std::uint64_t> seed;
  double lo = 0.20, hi = 0.50;
  std::optional<std::size_t> threads;

  auto* validate_cmd = app.add_subcommand("validate", "Check a model and print its metrics");
  validate_cmd->add_option("model", model_path, "Model file")->required();

  auto* generate_cmd = app.add_subcommand("generate", "Generate a test suite from a model");
  generate_cmd->add_option("model", model_path, "Model file")->required();
  generate_cmd->add_option("--loop-bound", loop_bound, "Times a state may repeat on one path")
      ->capture_default_str();
  generate_cmd->add_option("--max-paths", max_paths, "Abort when more paths would be generated")
      ->capture_default_str();
  generate_cmd->add_option("--seed", seed, "Accepted for uniformity; generation is deterministic");
  generate_cmd->add_option("-o,--output", output, "Output file (default: stdout)");

  auto* filter_cmd = app.add_subcommand("filter", "Keep the test cases accepted by a hint file");
  filter_cmd->add_option("suite", suite_path, "Suite file")->required();
  filter_cmd->add_option("--model", model_path, "Model file")->required();
  filter_cmd->add_option("--purposes", purposes_path, "Purpose file")->required();
  filter_cmd->add_option("-o,--output", output, "Output file (default: stdout)");

  auto* prioritize_cmd = app.add_subcommand("prioritize", "Order a test suite");
  prioritize_cmd->add_option("suite", suite_path, "Suite file")->required();
  prioritize_cmd->add_option("--technique", technique_name_arg, "harp | arp-jaccard | greedy | random")
      ->required()
      ->check(CLI::IsMember({"harp", "arp-jaccard", "greedy", "random"}));
  prioritize_cmd->add_option("--model", model_path, "Model file (required by harp)");
  prioritize_cmd->add_option("--purposes", purposes_path, "Purpose file (required by harp)");
  prioritize_cmd->add_option("--seed", seed, "Random seed (required by randomized techniques)");
  prioritize_cmd->add_option("-o,--output", output, "Output file (default: stdout)");

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score an order against a fault report");
  evaluate_cmd->add_option("order", order_path, "Order file")->required();
  evaluate_cmd->add_option("--faults", faults_path, "Fault report")->required();
  evaluate_cmd->add_option("--metric", metric_name_arg, "apfd | fmeasure")
      ->required()
      ->check(CLI::IsMember({"apfd", "fmeasure"}));

  auto* synth_cmd = app.add_subcommand("synthesize-hints", "Derive a good or bad hint for a fault");
  synth_cmd->add_option("suite", suite_path, "Suite file")->required();
  synth_cmd->add_option("--model", model_path, "Model file")->required();
  synth_cmd->add_option("--faults", faults_path, "Fault report")->required();
  synth_cmd->add_option("--fault", fault_id, "Fault id")->required();
  synth_cmd->add_option("--kind", kind_name, "good | bad")
      ->required()
      ->check(CLI::IsMember({"good", "bad"}));
  synth_cmd->add_option("--lo", lo, "Lowest failing proportion of a good hint")->capture_default_str();
  synth_cmd->add_option("--hi", hi, "Highest failing proportion of a good hint")->capture_default_str();
  synth_cmd->add_option("-o,--output", output, "Output file (default: stdout)");

  auto* a12_cmd = app.add_subcommand("a12", "Vargha-Delaney effect size of two samples");
  a12_cmd->add_option("a", file_a, "Sample A, one number per line")->required();
  a12_cmd->add_option("b", file_b, "Sample B, one number per line")->required();

  auto* experiment_cmd = app.add_subcommand("experiment", "Run a configured experiment");
  experiment_cmd->add_option("config", config_path, "Experiment config (key = value lines)")->required();
  experiment_cmd->add_option("-o,--output", output, "Trial records CSV (default: stdout)");
  experiment_cmd->add_option("--summary", summary_path, "Pairwise A12 summary CSV");
  experiment_cmd->add_option("--threads", threads, "Worker threads (overrides the config)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (validate_cmd->parsed()) {
      const LtsModel model = load_model(model_path);
      const auto violations = validate(model);
      if (!violations.empty()) {
        for (const auto& v : violations) err << model_path << ": " << v << "\n";
        return kDomain;
      }
      const ModelMetrics m = model_metrics(model);
      out << "model " << model.name() << ": " << model.states().size() << " states, "
          << model.transitions().size() << " transitions\n";
      out << "branches=" << m.branches << " joins=" << m.joins << " loops=" << m.loops;
      if (m.min_depth) out << " min_depth=" << *m.min_depth << " max_depth=" << *m.max_depth;
      out << "\n";
      for (const auto& w : m.warnings) err << "warning: " << w << "\n";
    } else if (generate_cmd->parsed()) {
      const LtsModel model = load_model(model_path);
      const TestSuite suite = generate(model, {loop_bound, max_paths});
      if (suite.cases.empty()) err << "warning: initial state has no transitions; suite is empty\n";
      emit(output, serialize_suite(suite), out);
    } else if (filter_cmd->parsed()) {
      const LtsModel model = load_model(model_path);
      const TestSuite suite = load_suite(suite_path, &model);
      const HintSet hints = load(purposes_path, [](const std::string& d) { return parse_hint_set(d); });
      TestSuite kept{suite.model_name, {}};
      for (const TestCase* tc : filter(suite, hints, model)) kept.cases.push_back(*tc);
      emit(output, serialize_suite(kept), out);
    } else if (prioritize_cmd->parsed()) {
      const Technique technique = *parse_technique(technique_name_arg);
      if (technique == Technique::harp && purposes_path.empty())
        throw UsageError{"--technique harp requires --purposes"};
      if (technique == Technique::harp && model_path.empty())
        throw UsageError{"--technique harp requires --model"};
      if (is_randomized(technique) && !seed)
        throw UsageError{"--technique " + technique_name_arg + " requires --seed"};

      std::optional<LtsModel> model;
      if (!model_path.empty()) model = load_model(model_path);
      const TestSuite suite = load_suite(suite_path, model ? &*model : nullptr);
      PrioritizedSuite order;
      switch (technique) {
        case Technique::harp: {
          const HintSet hints =
              load(purposes_path, [](const std::string& d) { return parse_hint_set(d); });
          RandomSource rng(*seed);
          order = harp(suite, hints, *model, rng);
          break;
        }
        case Technique::arp_jaccard: {
          RandomSource rng(*seed);
          if (model) {
            order = arp_jaccard(suite, *model, rng);
          } else {
            TransitionIndex index;
            const auto profiles = make_profiles(suite, index);
            order = arp_jaccard_prioritize(suite, profiles, rng);
          }
          break;
        }
        case Technique::greedy: order = greedy_steps(suite); break;
        case Technique::random: {
          RandomSource rng(*seed);
          order = random_order(suite, rng);
          break;
        }
      }
      emit(output, serialize_order(order), out);
    } else if (evaluate_cmd->parsed()) {
      const PrioritizedSuite order =
          load(order_path, [](const std::string& d) { return parse_order(d); });
      const FaultReport faults =
          load(faults_path, [](const std::string& d) { return parse_fault_report(d); });
      check_fault_report(faults, order.order);
      const MetricValue v = evaluate(*parse_metric(metric_name_arg), order, faults);
      out << metric_name(v.kind) << " " << fixed6(v.value) << " (" << v.exact.num << "/"
          << v.exact.den << ")\n";
    } else if (synth_cmd->parsed()) {
      const LtsModel model = load_model(model_path);
      const TestSuite suite = load_suite(suite_path, &model);
      const FaultReport faults =
          load(faults_path, [](const std::string& d) { return parse_fault_report(d); });
      std::vector<std::string> ids;
      for (const auto& tc : suite.cases) ids.push_back(tc.id);
      check_fault_report(faults, ids);
      const HintQualityTarget target =
          kind_name == "good" ? HintQualityTarget::good(lo, hi) : HintQualityTarget::bad();
      const SynthesizedHint hint = synthesize_hint(suite, faults, fault_id, model, target);
      emit(output, hint.to_line() + "\n", out);
    } else if (a12_cmd->parsed()) {
      const auto a = load_samples(file_a);
      const auto b = load_samples(file_b);
      const EffectSize e = a12(a, b);
      out << "a12 " << fixed6(e.statistic) << " " << effect_label_name(e.label) << "\n";
    } else if (experiment_cmd->parsed()) {
      ExperimentConfig config =
          load(config_path, [](const std::string& d) { return parse_experiment_config(d); });
      const fs::path base = fs::path(config_path).parent_path();
      for (auto& file : config.model_files)
        if (fs::path(file).is_relative()) file = (base / file).string();
      if (threads) config.threads = *threads;
      const ExperimentResult result = run_experiment(config);
      emit(output, records_csv(result.records), out);
      if (!summary_path.empty()) emit(summary_path, summary_csv(result.summary), out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.message << "\n";
    for (auto* sub : app.get_subcommands()) err << sub->help();
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  }
  return kOk;
}

}  // namespace harp::cli
