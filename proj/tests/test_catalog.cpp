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

#include <gtest/gtest.h>

#include "taskground/catalog.hpp"

namespace taskground {
namespace {

TEST(Catalog, Names) {
  const auto names = catalog_names();
  EXPECT_EQ(names.size(), 4u);
  for (const auto& n : names) EXPECT_EQ(catalog(n).name, n);
  EXPECT_THROW(catalog("maze"), std::invalid_argument);
}

TEST(Catalog, CorridorSign) {
  const auto e = catalog("corridor_sign");
  EXPECT_EQ(e.system.num_states(), 10u);
  EXPECT_EQ(e.system.num_observations(), 20u);
  EXPECT_EQ(e.system.init().size(), 10u);
  EXPECT_FALSE(e.system.find_observation("0").has_value());
  EXPECT_EQ(e.grounding, Grounding::ActionObservation);
  // h(x, u, x') = {x', -x'}.
  const auto& r = e.system;
  const auto ys = r.observations(r.find_state("4").value(), r.find_action("R").value(), r.find_state("5").value());
  ASSERT_EQ(ys.size(), 2u);
  EXPECT_EQ(std::set<std::string>({r.name(ys[0]), r.name(ys[1])}), (std::set<std::string>{"5", "-5"}));
}

TEST(Catalog, CorridorBlind) {
  const auto e = catalog("corridor_blind");
  EXPECT_EQ(e.system.num_states(), 10u);
  EXPECT_EQ(e.system.observation_names(), std::vector<std::string>{"none"});
  EXPECT_EQ(e.formula, "F x:1");
}

TEST(Catalog, CorridorLengthParameter) {
  const auto e = catalog("corridor_sign", CatalogParams{.corridor_length = 4});
  EXPECT_EQ(e.system.num_states(), 4u);
  EXPECT_EQ(e.system.num_observations(), 8u);
}

TEST(Catalog, LightDark) {
  const auto e = catalog("light_dark");
  const auto& r = e.system;
  ASSERT_EQ(r.init().size(), 2u);
  EXPECT_EQ(r.name(r.init()[0]), "c1r1E");
  EXPECT_EQ(r.name(r.init()[1]), "c4r2W");
  const ObsId indet = r.find_observation("indet").value();
  // Indet can be reported on every transition.
  for (std::uint32_t x = 0; x < r.num_states(); ++x)
    for (std::uint32_t u = 0; u < r.num_actions(); ++u)
      for (StateId x2 : r.successors(StateId{x}, ActionId{u}))
        EXPECT_TRUE(r.can_observe(StateId{x}, ActionId{u}, x2, indet));
}

TEST(Catalog, GoalDetector) {
  const auto e = catalog("light_dark_goal_detector");
  const auto& r = e.system;
  EXPECT_EQ(r.observation_names(), (std::vector<std::string>{"0", "1"}));
  const ObsId one = r.find_observation("1").value();
  for (std::uint32_t x = 0; x < r.num_states(); ++x) {
    const bool goal = r.name(StateId{x}).rfind("c4r1", 0) == 0;
    for (std::uint32_t u = 0; u < r.num_actions(); ++u)
      for (StateId x2 : r.successors(StateId{x}, ActionId{u}))
        EXPECT_EQ(r.can_observe(StateId{x}, ActionId{u}, x2, one), goal);
  }
}

}  // namespace
}  // namespace taskground
