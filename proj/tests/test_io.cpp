// Copyright 2026 The taskground Authors
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

#include <random>

#include <gtest/gtest.h>

#include "support.hpp"
#include "taskground/catalog.hpp"
#include "taskground/io.hpp"

namespace taskground {
namespace {

TEST(Io, SystemRoundTrip) {
  for (const auto& name : catalog_names()) {
    const auto r = catalog(name).system;
    const Json j = to_json(r.to_raw());
    const auto back = make_system(raw_system_from_json(Json::parse(j.dump())));
    EXPECT_EQ(to_json(back.to_raw()), j) << name;
  }
}

TEST(Io, SystemSchemaErrors) {
  EXPECT_THROW(raw_system_from_json(Json::parse(R"({"states": ["a"]})")), std::invalid_argument);
  EXPECT_THROW(raw_system_from_json(Json::parse("[]")), std::invalid_argument);
  Json j = to_json(catalog("corridor_blind").system.to_raw());
  j["states"][0] = 3;
  EXPECT_THROW(raw_system_from_json(j), std::invalid_argument);
}

TEST(Io, LassoRoundTrip) {
  const auto r = catalog("corridor_sign").system;
  for (int k = 0; k < 50; ++k) {
    const auto t = random_complete_lasso(r, k, k % 3, 1 + k % 3);
    EXPECT_EQ(lasso_from_json(r, Json::parse(to_json(r, t).dump())), t);
  }
  EXPECT_THROW(lasso_from_json(r, Json::parse(R"({"cycle": [["4", "R", "0"]]})")), std::invalid_argument);
  EXPECT_THROW(lasso_from_json(r, Json::parse(R"({"cycle": []})")), std::invalid_argument);
  EXPECT_THROW(lasso_from_json(r, Json::parse(R"({"cycle": [["4", "R"]]})")), std::invalid_argument);
}

TEST(Io, PropLasso) {
  PropLasso s{{{"@start", "x:4"}}, {{"x:5"}, {}}};
  EXPECT_EQ(to_json(s), Json::parse(R"({"prefix": [["@start", "x:4"]], "cycle": [["x:5"], []]})"));
}

TEST(Io, AutomatonRoundTrip) {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 100; ++k) {
    const auto a = testing::random_nba(rng, 5, 2);
    const auto b = automaton_from_json(Json::parse(to_json(a).dump()));
    EXPECT_EQ(to_json(b), to_json(a));
    for (int n = 0; n < 20; ++n) {
      const auto w = testing::random_word(rng, 2, 6);
      ASSERT_EQ(member(a, w), member(b, w));
    }
  }
}

TEST(Io, AutomatonRemapsToTargetAlphabet) {
  const Json j = Json::parse(R"({"alphabet": ["b"], "states": ["q"], "initial": ["q"], "accepting": ["q"],
                                 "trans": [{"from": "q", "letter": "b", "to": "q"}]})");
  const std::vector<std::string> target = {"a", "b"};
  const auto a = automaton_from_json(j, &target);
  EXPECT_EQ(a.alphabet(), target);
  EXPECT_TRUE(member(a, LassoWord{{}, {1}}));
  EXPECT_FALSE(member(a, LassoWord{{}, {0}}));
  const std::vector<std::string> other = {"a"};
  EXPECT_THROW(automaton_from_json(j, &other), std::invalid_argument);
}

TEST(Io, AutomatonSchemaErrors) {
  EXPECT_THROW(automaton_from_json(Json::parse(R"({"alphabet": ["a"], "states": ["q"], "initial": ["p"],
                                                   "accepting": [], "trans": []})")),
               std::invalid_argument);
  EXPECT_THROW(automaton_from_json(Json::parse(R"({"alphabet": ["a"], "states": ["q"], "initial": ["q"],
                                                   "accepting": [], "trans": [{"from": "q", "letter": "z",
                                                   "to": "q"}]})")),
               std::invalid_argument);
}

TEST(Io, ReportSchema) {
  const auto e = catalog("corridor_sign");
  const auto spec = TaskSpec::from_formula(parse(e.formula), e.grounding);
  const auto report = posability_profile(e.system, spec);
  const Json j = to_json(e.system, report);
  EXPECT_EQ(j["state"], false);
  EXPECT_EQ(j["ao"], true);
  EXPECT_EQ(j["istate"], false);
  ASSERT_TRUE(j["counterexamples"].contains("state"));
  EXPECT_FALSE(j["counterexamples"].contains("ao"));
  const auto w = lasso_from_json(e.system, j["counterexamples"]["state"]["w"]);
  EXPECT_TRUE(is_complete_trace(e.system, w));
  EXPECT_TRUE(same_word(w, report.bits[0].counterexample->w));
}

}  // namespace
}  // namespace taskground
