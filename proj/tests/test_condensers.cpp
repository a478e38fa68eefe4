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
#include "taskground/condensers.hpp"

namespace taskground {
namespace {

using testing::brute_force_istates;
using testing::history_twin;

const RobotTransitionSystem& corridor() {
  static const RobotTransitionSystem r = catalog("corridor_sign").system;
  return r;
}

const RobotTransitionSystem& light_dark() {
  static const RobotTransitionSystem r = catalog("light_dark").system;
  return r;
}

StateId X(const RobotTransitionSystem& r, const std::string& n) { return r.find_state(n).value(); }
ActionId U(const RobotTransitionSystem& r, const std::string& n) { return r.find_action(n).value(); }
ObsId Y(const RobotTransitionSystem& r, const std::string& n) { return r.find_observation(n).value(); }

Letter L(const RobotTransitionSystem& r, const std::string& x, const std::string& u, const std::string& y) {
  return {X(r, x), U(r, u), Y(r, y)};
}

StateSet states(const RobotTransitionSystem& r, std::initializer_list<const char*> names) {
  StateSet s;
  for (const char* n : names) s.push_back(X(r, n));
  std::sort(s.begin(), s.end());
  return s;
}

CompleteLassoTrace example_trace() {
  const auto& r = corridor();
  return {{L(r, "4", "R", "5")}, {L(r, "5", "R", "6"), L(r, "6", "L", "5")}};
}

TEST(Consistent, CorridorExamples) {
  const auto& r = corridor();
  EXPECT_EQ(f_consistent_successors(r, X(r, "4"), U(r, "R"), Y(r, "5")), states(r, {"5"}));
  EXPECT_EQ(f_consistent_successors(r, X(r, "4"), U(r, "R"), Y(r, "-5")), states(r, {"5"}));
  EXPECT_TRUE(f_consistent_successors(r, X(r, "4"), U(r, "R"), Y(r, "7")).empty());
}

TEST(Consistent, MatchesFilterDefinition) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto r = random_system(seed, 4, 2, 2);
    for (std::uint32_t x = 0; x < r.num_states(); ++x)
      for (std::uint32_t u = 0; u < r.num_actions(); ++u)
        for (std::uint32_t y = 0; y < r.num_observations(); ++y) {
          StateSet expect;
          for (StateId z : r.successors(StateId{x}, ActionId{u}))
            if (r.can_observe(StateId{x}, ActionId{u}, z, ObsId{y})) expect.push_back(z);
          ASSERT_EQ(f_consistent_successors(r, StateId{x}, ActionId{u}, ObsId{y}), expect);
        }
  }
}

TEST(IStateUpdate, Examples) {
  const auto& r = corridor();
  EXPECT_EQ(istate_update(r, r.init(), U(r, "R"), Y(r, "5")), states(r, {"5"}));
  EXPECT_TRUE(istate_update(r, {}, U(r, "L"), Y(r, "-3")).empty());
  EXPECT_EQ(istate_update(r, states(r, {"10"}), U(r, "R"), Y(r, "10")), states(r, {"10"}));
}

TEST(Condense, StateAndHistoryProjections) {
  const auto& r = corridor();
  const auto t = example_trace();
  const auto xs = condense_state(t);
  EXPECT_EQ(xs.prefix, (std::vector<StateId>{X(r, "4")}));
  EXPECT_EQ(xs.cycle, (std::vector<StateId>{X(r, "5"), X(r, "6")}));
  const auto hs = condense_history(t);
  ASSERT_EQ(hs.prefix.size(), 1u);
  EXPECT_EQ(hs.prefix[0].u, U(r, "R"));
  EXPECT_EQ(hs.prefix[0].y, Y(r, "5"));
}

TEST(Condense, PositionalChecks) {
  const auto& r = corridor();
  for (int k = 0; k < 200; ++k) {
    const auto t = random_complete_lasso(r, k, k % 4, 1 + k % 3);
    const auto xs = condense_state(t);
    const auto hs = condense_history(t);
    for (std::size_t i = 1; i <= 2 * t.span(); ++i) {
      ASSERT_EQ(xs.at(i), t.at(i).x);
      ASSERT_EQ(hs.at(i).u, t.at(i).u);
      ASSERT_EQ(hs.at(i).y, t.at(i).y);
    }
  }
}

TEST(Condense, HistoryIgnoresStates) {
  const auto& r = corridor();
  CompleteLassoTrace a{{L(r, "4", "R", "5")}, {L(r, "5", "L", "-4")}};
  CompleteLassoTrace b{{L(r, "7", "R", "5")}, {L(r, "2", "L", "-4")}};
  EXPECT_EQ(condense_history(a), condense_history(b));
}

TEST(Ndet, CorridorFirstStep) {
  const auto& r = corridor();
  const auto is = condense_ndet(r, example_trace());
  EXPECT_EQ(is.at(1), states(r, {"5"}));
  EXPECT_EQ(is.at(2), states(r, {"6"}));
  EXPECT_EQ(is.at(3), states(r, {"5"}));
}

TEST(Ndet, LightReadingResolvesAmbiguity) {
  const auto& r = light_dark();
  const ObsId light = Y(r, "light"), dark = Y(r, "dark");
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const auto t = random_complete_lasso(r, seed, 3, 3);
    const auto is = condense_ndet(r, t);
    const auto grounded = ground(r, t, Grounding::IState);
    std::size_t first = 0;
    for (std::size_t i = 1; i <= t.span() && first == 0; ++i)
      if (t.at(i).y == light || t.at(i).y == dark) first = i;
    if (first == 0) {
      EXPECT_EQ(is.at(1).size(), 2u);
      continue;
    }
    ++checked;
    for (std::size_t i = first; i <= first + 2 * t.span(); ++i) {
      ASSERT_EQ(is.at(i).size(), 1u);
      std::size_t props = grounded.at(i).size() - (i == 1 ? 1 : 0);
      ASSERT_EQ(props, 1u);
    }
  }
  EXPECT_GT(checked, 100u);
}

TEST(Ndet, SoundAndTight) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto r = random_system(seed, 4, 2, 2);
    CompleteLassoTrace t;
    try {
      t = random_complete_lasso(r, seed, seed % 4, 1 + seed % 3);
    } catch (const LassoGenerationError&) {
      continue;
    }
    const auto is = condense_ndet(r, t);
    const auto brute = brute_force_istates(r, t, 8);
    for (std::size_t i = 1; i <= 8; ++i) {
      const auto& iota = is.at(i);
      ASSERT_TRUE(std::binary_search(iota.begin(), iota.end(), t.at(i + 1).x)) << "seed " << seed << " i " << i;
      ASSERT_EQ(iota, brute[i]) << "seed " << seed << " i " << i;
    }
  }
}

TEST(Ndet, RollingAgreesWithIteration) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto r = random_system(seed, 4, 2, 2);
    CompleteLassoTrace t;
    try {
      t = random_complete_lasso(r, seed + 1, seed % 3, 1 + seed % 4);
    } catch (const LassoGenerationError&) {
      continue;
    }
    const auto is = condense_ndet(r, t);
    StateSet iota = r.init();
    for (std::size_t i = 1; i <= t.prefix.size() + 3 * t.cycle.size() + is.span(); ++i) {
      iota = istate_update(r, iota, t.at(i).u, t.at(i).y);
      ASSERT_EQ(is.at(i), iota);
    }
  }
}

TEST(Ndet, EmptyOffCompleteTraces) {
  const auto& r = corridor();
  CompleteLassoTrace t{{L(r, "4", "R", "1")}, {L(r, "5", "R", "6")}};
  EXPECT_TRUE(condense_ndet(r, t).at(1).empty());
}

TEST(Ndet, HistoryDeterminism) {
  std::mt19937_64 rng(3);
  std::size_t pairs = 0, differing = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const auto r = random_system(seed, 4, 2, 2);
    CompleteLassoTrace v;
    try {
      v = random_complete_lasso(r, seed, seed % 3, 1 + seed % 3);
    } catch (const LassoGenerationError&) {
      continue;
    }
    const auto w = history_twin(r, v, rng);
    ASSERT_TRUE(w.has_value());
    ASSERT_TRUE(is_complete_trace(r, *w));
    ASSERT_TRUE(same_word(condense_history(v), condense_history(*w)));
    ASSERT_TRUE(same_word(condense_ndet(r, v), condense_ndet(r, *w)));
    ++pairs;
    if (!same_word(condense_state(v), condense_state(*w))) ++differing;
  }
  EXPECT_GT(pairs, 300u);
  EXPECT_GT(differing, 20u);
}

TEST(Ground, StateGrounding) {
  const auto g = ground(corridor(), example_trace(), Grounding::State);
  EXPECT_EQ(g.at(1), (PropSet{"@start", "x:4"}));
  EXPECT_EQ(g.at(2), (PropSet{"x:5"}));
  EXPECT_EQ(g.at(3), (PropSet{"x:6"}));
  EXPECT_EQ(g.at(4), (PropSet{"x:5"}));
}

TEST(Ground, ActionObservationMatchesHistory) {
  const auto& r = corridor();
  for (int k = 0; k < 100; ++k) {
    const auto t = random_complete_lasso(r, k, k % 3, 1 + k % 3);
    const auto g = ground(r, t, Grounding::ActionObservation);
    const auto hs = condense_history(t);
    for (std::size_t i = 1; i <= 2 * t.span(); ++i) {
      PropSet expect{"u:" + r.name(hs.at(i).u), "y:" + r.name(hs.at(i).y)};
      if (i == 1) expect.insert("@start");
      ASSERT_EQ(g.at(i), expect);
    }
  }
}

TEST(Ground, IStateStartsAfterFirstStep) {
  const auto& r = corridor();
  const auto g = ground(r, example_trace(), Grounding::IState);
  EXPECT_EQ(g.at(1), (PropSet{"@start", "x:5"}));
  EXPECT_EQ(g.at(2), (PropSet{"x:6"}));
}

TEST(Transducer, StateAndHistoryAgreement) {
  const auto& r = corridor();
  const auto ds = condenser_transducer(r, CondenserKind::State);
  const auto dh = condenser_transducer(r, CondenserKind::History);
  EXPECT_EQ(ds.num_states, 1u);
  for (int k = 0; k < 500; ++k) {
    const auto t = random_complete_lasso(r, k, k % 4, 1 + k % 3);
    const auto os = ds.apply(encode(r, t));
    const auto oh = dh.apply(encode(r, t));
    const auto xs = condense_state(t);
    const auto hs = condense_history(t);
    for (std::size_t i = 1; i <= 2 * t.span(); ++i) {
      ASSERT_EQ(os.at(i), idx(xs.at(i)));
      ASSERT_EQ(oh.at(i), r.history_id(hs.at(i)));
    }
  }
}

TEST(Transducer, IStateAgreement) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto r = random_system(seed, 4, 2, 2);
    const auto d = condenser_transducer(r, CondenserKind::IState);
    EXPECT_EQ(d.initial, 0u);
    EXPECT_EQ(d.output_names[d.initial], format_set(r, r.init()));
    CompleteLassoTrace t;
    try {
      t = random_complete_lasso(r, seed, 2, 2);
    } catch (const LassoGenerationError&) {
      continue;
    }
    const auto out = d.apply(encode(r, t));
    const auto is = condense_ndet(r, t);
    for (std::size_t i = 1; i <= 2 * t.span(); ++i) ASSERT_EQ(d.output_names[out.at(i)], format_set(r, is.at(i)));
  }
}

TEST(Transducer, Deterministic) {
  const auto& r = light_dark();
  const auto a = condenser_transducer(r, CondenserKind::IState);
  const auto b = condenser_transducer(r, CondenserKind::IState);
  ASSERT_EQ(a.table.size(), b.table.size());
  for (std::size_t k = 0; k < a.table.size(); ++k) {
    EXPECT_EQ(a.table[k].next, b.table[k].next);
    EXPECT_EQ(a.table[k].output, b.table[k].output);
  }
  EXPECT_EQ(a.output_names, b.output_names);
}

TEST(Transducer, GroundingAgreement) {
  for (Grounding g : {Grounding::State, Grounding::ActionObservation, Grounding::IState}) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto r = random_system(seed, 3, 2, 2);
      const auto ap = grounding_propositions(r, g);
      const auto d = grounding_transducer(r, g, ap);
      CompleteLassoTrace t;
      try {
        t = random_complete_lasso(r, seed, 1 + seed % 2, 1 + seed % 3);
      } catch (const LassoGenerationError&) {
        continue;
      }
      const auto out = d.apply(encode(r, t));
      const auto grounded = ground(r, t, g);
      for (std::size_t i = 1; i <= 2 * t.span(); ++i) ASSERT_EQ(out.at(i), proposition_letter(grounded.at(i), ap));
    }
  }
}

TEST(Transducer, BeliefGuard) {
  EXPECT_THROW(condenser_transducer(light_dark(), CondenserKind::IState, Guards{.belief_cap = 2}), ResourceError);
}

TEST(Parse, GroundingAndCondenserNames) {
  EXPECT_EQ(parse_grounding("ao"), Grounding::ActionObservation);
  EXPECT_EQ(parse_grounding("action_observation"), Grounding::ActionObservation);
  EXPECT_EQ(parse_condenser("ndet"), CondenserKind::IState);
  EXPECT_EQ(parse_condenser("history"), CondenserKind::History);
  EXPECT_THROW(parse_grounding("belief"), std::invalid_argument);
  for (Grounding g : {Grounding::State, Grounding::ActionObservation, Grounding::IState})
    EXPECT_EQ(parse_grounding(to_string(g)), g);
}

}  // namespace
}  // namespace taskground
