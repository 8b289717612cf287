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

#include <gtest/gtest.h>

#include "harp/evaluation.hpp"
#include "harp/hints.hpp"
#include "harp/purpose.hpp"
#include "harp/random.hpp"
#include "support.hpp"

namespace harp {
namespace {

std::vector<std::string> ids_of(const std::vector<const TestCase*>& cases) {
  std::vector<std::string> out;
  for (const auto* tc : cases) out.push_back(tc->id);
  return out;
}

// Oracle: exhaustive recursion over how many labels each wildcard absorbs.
bool naive_match(const std::vector<PurposeToken>& toks, std::size_t t,
                 const std::vector<std::string>& labels, std::size_t l) {
  if (t == toks.size()) return l == labels.size();
  if (std::holds_alternative<Wildcard>(toks[t])) {
    for (std::size_t k = l; k <= labels.size(); ++k)
      if (naive_match(toks, t + 1, labels, k)) return true;
    return false;
  }
  return l < labels.size() && std::get<LabelLiteral>(toks[t]).text == labels[l] &&
         naive_match(toks, t + 1, labels, l + 1);
}

TEST(Purpose, ParseAndRender) {
  const TestPurpose p = parse_purpose("* | C - Invalid Login |*");
  ASSERT_EQ(p.tokens().size(), 3u);
  EXPECT_TRUE(std::holds_alternative<Wildcard>(p.tokens()[0]));
  EXPECT_EQ(std::get<LabelLiteral>(p.tokens()[1]).text, "C - Invalid Login");
  EXPECT_EQ(p.to_string(), "*|C - Invalid Login|*");
  EXPECT_EQ(parse_purpose(p.to_string()), p);
}

TEST(Purpose, ParseRejectsEmptyPieces) {
  EXPECT_THROW(parse_purpose(""), Error);
  EXPECT_THROW(parse_purpose("   "), Error);
  EXPECT_THROW(parse_purpose("*||*"), Error);
  EXPECT_THROW(parse_purpose("a|"), Error);
}

TEST(Purpose, AnchoredMatching) {
  const std::vector<std::string> labels{"a", "b", "c"};
  EXPECT_TRUE(parse_purpose("*").matches_labels(labels));
  EXPECT_TRUE(parse_purpose("*").matches_labels({}));
  EXPECT_TRUE(parse_purpose("a|b|c").matches_labels(labels));
  EXPECT_FALSE(parse_purpose("a|b").matches_labels(labels));
  EXPECT_TRUE(parse_purpose("a|*").matches_labels(labels));
  EXPECT_FALSE(parse_purpose("b|*").matches_labels(labels));
  EXPECT_TRUE(parse_purpose("*|c").matches_labels(labels));
  EXPECT_TRUE(parse_purpose("a|*|b|*|c").matches_labels(labels));
  EXPECT_FALSE(parse_purpose("*|c|*|a|*").matches_labels(labels));
  EXPECT_FALSE(parse_purpose("a").matches_labels({}));
}

TEST(Purpose, AgreesWithExhaustiveMatcher) {
  RandomSource rng(7);
  const std::vector<std::string> alphabet{"a", "b", "c"};
  for (int round = 0; round < 20000; ++round) {
    std::vector<PurposeToken> toks;
    const std::size_t nt = 1 + rng.uniform_index(6);
    for (std::size_t i = 0; i < nt; ++i) {
      if (rng.uniform01() < 0.4)
        toks.emplace_back(Wildcard{});
      else
        toks.emplace_back(LabelLiteral{alphabet[rng.uniform_index(3)]});
    }
    std::vector<std::string> labels;
    const std::size_t nl = rng.uniform_index(8);
    for (std::size_t i = 0; i < nl; ++i) labels.push_back(alphabet[rng.uniform_index(3)]);
    const TestPurpose p(toks);
    ASSERT_EQ(p.matches_labels(labels), naive_match(toks, 0, labels, 0))
        << p.to_string() << " on " << labels.size() << " labels";
  }
}

TEST(PurposeFilter, InvalidLoginSelectsFourCases) {
  const LtsModel m = testing::login_model();
  const TestSuite suite = generate(m);
  const HintSet hints = parse_hint_set("*|C - Invalid Login|*\n");
  EXPECT_EQ(ids_of(filter(suite, hints, m)),
            (std::vector<std::string>{"TC4", "TC5", "TC6", "TC7"}));
  FaultReport f;
  f.faults["F1"] = {"TC7"};
  EXPECT_DOUBLE_EQ(hint_quality(suite, hints.purposes[0], f, m), 0.25);
}

TEST(PurposeFilter, DoubledInvalidLoginSelectsOnlyTc7) {
  const LtsModel m = testing::login_model();
  const TestSuite suite = generate(m);
  const HintSet hints = parse_hint_set("*|C - Invalid Login|*|C - Invalid Login|*\n");
  EXPECT_EQ(ids_of(filter(suite, hints, m)), std::vector<std::string>{"TC7"});
  FaultReport f;
  f.faults["F1"] = {"TC7"};
  EXPECT_DOUBLE_EQ(hint_quality(suite, hints.purposes[0], f, m), 1.0);
}

TEST(PurposeFilter, WildcardKeepsEverything) {
  const LtsModel m = testing::login_model();
  const TestSuite suite = generate(m);
  EXPECT_EQ(filter(suite, parse_hint_set("*\n"), m).size(), 7u);
}

TEST(PurposeFilter, UnionOfPurposesInSuiteOrder) {
  const LtsModel m = testing::login_model();
  const TestSuite suite = generate(m);
  const HintSet hints = parse_hint_set(
      "# two hints\n"
      "*|C - Invalid Login|*|C - Invalid Login|*\n"
      "R - Show main screen|*|C - Password match|*  # from review\n");
  ASSERT_EQ(hints.provenance.size(), 2u);
  EXPECT_EQ(hints.provenance[1], "from review");
  EXPECT_EQ(ids_of(filter(suite, hints, m)),
            (std::vector<std::string>{"TC1", "TC2", "TC5", "TC7"}));
}

TEST(PurposeFilter, UnknownLabelMatchesNothing) {
  const LtsModel m = testing::login_model();
  EXPECT_TRUE(filter(generate(m), parse_hint_set("*|No such step|*\n"), m).empty());
}

TEST(PurposeFilter, UnresolvableStepIsAnError) {
  const LtsModel m = testing::login_model();
  TestSuite suite = generate(m);
  suite.cases[0].steps[0].dst = "99";
  try {
    filter(suite, parse_hint_set("*\n"), m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("TC1 step 1"), std::string::npos);
  }
}

TEST(HintSetFormat, RoundTrip) {
  const std::string doc = "*|a|*  # synthesized good, proportion=0.250000, fault=F1\n*|b|*\n";
  EXPECT_EQ(serialize_hint_set(parse_hint_set(doc)), doc);
  EXPECT_THROW(parse_hint_set("# nothing\n"), Error);
}

}  // namespace
}  // namespace harp
