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

#include "harp/purpose.hpp"

#include "harp/error.hpp"
#include "text.hpp"

namespace harp {

TestPurpose::TestPurpose(std::vector<PurposeToken> tokens) : tokens_(std::move(tokens)) {
  if (tokens_.empty()) throw Error("test purpose must contain at least one token");
  for (const auto& tok : tokens_) {
    if (const auto* lit = std::get_if<LabelLiteral>(&tok)) {
      if (text::trim(lit->text).empty()) throw Error("test purpose literal is empty");
      if (lit->text.find('|') != std::string::npos)
        throw Error("test purpose literal contains '|': " + lit->text);
    }
  }
}

std::string TestPurpose::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (i) out += '|';
    if (const auto* lit = std::get_if<LabelLiteral>(&tokens_[i]))
      out += lit->text;
    else
      out += '*';
  }
  return out;
}

bool TestPurpose::matches_labels(const std::vector<std::string>& labels) const {
  // Glob matching with single-star backtracking: on a literal mismatch, retry
  // from the most recent wildcard with one more label absorbed by it.
  std::size_t t = 0;
  std::size_t l = 0;
  std::size_t star_t = tokens_.size();
  std::size_t star_l = 0;
  while (l < labels.size()) {
    if (t < tokens_.size()) {
      if (std::holds_alternative<Wildcard>(tokens_[t])) {
        star_t = t++;
        star_l = l;
        continue;
      }
      if (std::get<LabelLiteral>(tokens_[t]).text == labels[l]) {
        ++t;
        ++l;
        continue;
      }
    }
    if (star_t == tokens_.size()) return false;
    t = star_t + 1;
    l = ++star_l;
  }
  while (t < tokens_.size() && std::holds_alternative<Wildcard>(tokens_[t])) ++t;
  return t == tokens_.size();
}

TestPurpose parse_purpose(std::string_view text) {
  if (text::trim(text).empty()) throw Error("empty test purpose");
  std::vector<PurposeToken> tokens;
  std::size_t index = 0;
  for (std::string_view piece : text::split(text, '|')) {
    ++index;
    piece = text::trim(piece);
    if (piece.empty())
      throw Error("empty piece #" + std::to_string(index) + " in test purpose '" +
                  std::string(text) + "'");
    if (piece == "*")
      tokens.emplace_back(Wildcard{});
    else
      tokens.emplace_back(LabelLiteral{std::string(piece)});
  }
  return TestPurpose(std::move(tokens));
}

TestPurpose interleaved_purpose(const std::vector<std::string>& literals) {
  std::vector<PurposeToken> tokens{Wildcard{}};
  for (const auto& l : literals) {
    tokens.emplace_back(LabelLiteral{l});
    tokens.emplace_back(Wildcard{});
  }
  return TestPurpose(std::move(tokens));
}

HintSet parse_hint_set(std::string_view document) {
  HintSet hints;
  const auto lines = text::lines(document);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    std::string_view line = lines[ln];
    if (text::is_comment_or_blank(line)) continue;
    std::string provenance;
    if (auto pos = line.find("  #"); pos != std::string_view::npos) {
      provenance = std::string(text::trim(line.substr(pos + 3)));
      line = line.substr(0, pos);
    }
    try {
      hints.purposes.push_back(parse_purpose(line));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(ln + 1, 1, e.what());
    }
    hints.provenance.push_back(std::move(provenance));
  }
  if (hints.purposes.empty()) throw Error("hint set contains no test purposes");
  return hints;
}

std::string serialize_hint_set(const HintSet& hints) {
  std::string out;
  for (std::size_t i = 0; i < hints.purposes.size(); ++i) {
    out += hints.purposes[i].to_string();
    if (i < hints.provenance.size() && !hints.provenance[i].empty())
      out += "  # " + hints.provenance[i];
    out += "\n";
  }
  return out;
}

bool matches(const TestPurpose& purpose, const TestCase& tc, const LtsModel& model) {
  std::vector<std::string> labels;
  labels.reserve(tc.steps.size());
  for (std::size_t k = 0; k < tc.steps.size(); ++k) {
    const Transition& step = tc.steps[k];
    const auto idx = model.find(step);
    if (!idx)
      throw Error("test case " + tc.id + " step " + std::to_string(k + 1) + " (" + step.src +
                  " -> " + step.dst + ") cannot be resolved in model '" + model.name() + "'");
    labels.push_back(model.transitions()[*idx].label);
  }
  return purpose.matches_labels(labels);
}

std::vector<std::size_t> filter_indices(const TestSuite& suite, const HintSet& hints,
                                        const LtsModel& model) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < suite.cases.size(); ++i) {
    for (const auto& p : hints.purposes) {
      if (matches(p, suite.cases[i], model)) {
        out.push_back(i);
        break;
      }
    }
  }
  return out;
}

std::vector<const TestCase*> filter(const TestSuite& suite, const HintSet& hints,
                                    const LtsModel& model) {
  std::vector<const TestCase*> out;
  for (std::size_t i : filter_indices(suite, hints, model)) out.push_back(&suite.cases[i]);
  return out;
}

}  // namespace harp
