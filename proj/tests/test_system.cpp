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

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "taskground/buchi.hpp"
#include "taskground/catalog.hpp"
#include "taskground/condensers.hpp"
#include "taskground/system.hpp"

namespace taskground {
namespace {

Letter L(const RobotTransitionSystem& r, const std::string& x, const std::string& u, const std::string& y) {
  return {r.find_state(x).value(), r.find_action(u).value(), r.find_observation(y).value()};
}

std::vector<std::string> messages(const ValidationResult& res) {
  std::vector<std::string> out;
  if (const auto* v = std::get_if<std::vector<Violation>>(&res))
    for (const auto& e : *v) out.push_back(e.message);
  return out;
}

bool has(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

// One state, one action, one observation.
RawSystem unit_raw() {
  RawSystem raw;
  raw.states = {"s"};
  raw.actions = {"a"};
  raw.observations = {"o"};
  raw.init = {"s"};
  raw.trans = {{"s", "a", {"s"}}};
  raw.obs = {{"s", "a", "s", {"o"}}};
  return raw;
}

const RobotTransitionSystem& corridor() {
  static const RobotTransitionSystem r = catalog("corridor_sign").system;
  return r;
}

TEST(Validate, CorridorIsValid) {
  const auto res = validate_system(corridor().to_raw());
  ASSERT_TRUE(std::holds_alternative<RobotTransitionSystem>(res));
  const auto& r = std::get<RobotTransitionSystem>(res);
  EXPECT_EQ(r.num_states(), 10u);
  EXPECT_EQ(r.num_observations(), 20u);
}

TEST(Validate, EmptyImage) {
  RawSystem raw = unit_raw();
  raw.trans[0].succ.clear();
  EXPECT_TRUE(has(messages(validate_system(raw)), "transition image empty"));
}

TEST(Validate, ObservationOnImpossibleTransition) {
  RawSystem raw = unit_raw();
  raw.states.push_back("t");
  raw.trans.push_back({"t", "a", {"t"}});
  raw.obs.push_back({"t", "a", "t", {"o"}});
  raw.obs.push_back({"s", "a", "t", {"o"}});
  const auto m = messages(validate_system(raw));
  EXPECT_TRUE(has(m, "observation on impossible transition"));
  EXPECT_EQ(m.size(), 1u);
}

TEST(Validate, EmptyInitialAndDuplicates) {
  RawSystem raw = unit_raw();
  raw.init.clear();
  raw.actions.push_back("a");
  const auto m = messages(validate_system(raw));
  EXPECT_TRUE(has(m, "initial set empty"));
  EXPECT_TRUE(has(m, "duplicate identifier in actions"));
}

TEST(Validate, MissingEntries) {
  RawSystem raw = unit_raw();
  raw.trans.clear();
  raw.obs.clear();
  EXPECT_TRUE(has(messages(validate_system(raw)), "transition missing"));
  raw = unit_raw();
  raw.obs.clear();
  EXPECT_TRUE(has(messages(validate_system(raw)), "observation missing"));
}

TEST(Validate, Identifiers) {
  EXPECT_TRUE(is_valid_identifier("c1r2N"));
  EXPECT_TRUE(is_valid_identifier("-10"));
  EXPECT_FALSE(is_valid_identifier(""));
  EXPECT_FALSE(is_valid_identifier("a b"));
  EXPECT_FALSE(is_valid_identifier("{x}"));
  RawSystem raw = unit_raw();
  raw.observations = {"o,p"};
  raw.obs[0].ys = {"o,p"};
  EXPECT_TRUE(has(messages(validate_system(raw)), "invalid identifier in observations"));
}

TEST(Validate, MakeSystemThrows) {
  RawSystem raw = unit_raw();
  raw.trans[0].succ.clear();
  EXPECT_THROW(make_system(raw), std::invalid_argument);
}

TEST(CompleteTrace, CorridorExamples) {
  const auto& r = corridor();
  CompleteLassoTrace t{{L(r, "4", "R", "5")}, {L(r, "5", "R", "6"), L(r, "6", "L", "5")}};
  EXPECT_TRUE(is_complete_trace(r, t));

  CompleteLassoTrace bad = t;
  bad.prefix[0].x = StateId{10};  // an 11th state does not exist
  const auto c1 = is_complete_trace(r, bad);
  EXPECT_FALSE(c1);
  EXPECT_EQ(c1.position, 1u);

  bad = t;
  bad.prefix[0].y = r.find_observation("7").value();
  const auto c2 = is_complete_trace(r, bad);
  EXPECT_FALSE(c2);
  EXPECT_EQ(c2.position, 1u);
  EXPECT_EQ(c2.reason, "y_i not in h(x_i,u_i,x_{i+1})");
}

TEST(CompleteTrace, WrapAroundIsChecked) {
  const auto& r = corridor();
  // 6 -L-> 5, but the cycle restarts at 4.
  CompleteLassoTrace t{{}, {L(r, "4", "R", "5"), L(r, "5", "R", "6"), L(r, "6", "L", "5")}};
  const auto c = is_complete_trace(r, t);
  EXPECT_FALSE(c);
  EXPECT_EQ(c.position, 3u);
  EXPECT_EQ(c.reason, "x_{i+1} not in f(x_i,u_i)");
}

TEST(CompleteTrace, InitialState) {
  const RobotTransitionSystem r = catalog("light_dark").system;
  const auto t = random_complete_lasso(r, 3, 2, 2);
  ASSERT_TRUE(is_complete_trace(r, t));
  CompleteLassoTrace bad = t;
  bad.prefix[0].x = r.find_state("c2r1N").value();
  EXPECT_EQ(is_complete_trace(r, bad).reason, "x_1 not in X0");
}

TEST(Corridor, Clamping) {
  const auto& r = corridor();
  for (int x = 1; x <= 10; ++x) {
    const StateId sx = r.find_state(std::to_string(x)).value();
    EXPECT_EQ(r.successors(sx, r.find_action("R").value()),
              StateSet{r.find_state(std::to_string(std::min(x + 1, 10))).value()});
    EXPECT_EQ(r.successors(sx, r.find_action("L").value()),
              StateSet{r.find_state(std::to_string(std::max(x - 1, 1))).value()});
  }
}

TEST(OmegaSafety, UnitSystem) {
  const auto r = make_system(unit_raw());
  const auto a = omega_safety_automaton(r);
  EXPECT_TRUE(member(a, LassoWord{{}, {0}}));
  EXPECT_TRUE(member(a, LassoWord{{0, 0}, {0}}));
}

CompleteLassoTrace corrupt(const RobotTransitionSystem& r, CompleteLassoTrace t, std::mt19937_64& rng) {
  const std::size_t n = t.prefix.size() + t.cycle.size();
  const std::size_t i = rng() % n;
  Letter& l = i < t.prefix.size() ? t.prefix[i] : t.cycle[i - t.prefix.size()];
  switch (rng() % 3) {
    case 0: l.x = StateId{static_cast<std::uint32_t>(rng() % r.num_states())}; break;
    case 1: l.u = ActionId{static_cast<std::uint32_t>(rng() % r.num_actions())}; break;
    default: l.y = ObsId{static_cast<std::uint32_t>(rng() % r.num_observations())}; break;
  }
  return t;
}

TEST(OmegaSafety, AgreesWithTraceCheck) {
  std::mt19937_64 rng(11);
  std::size_t complete = 0, incomplete = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto r = random_system(seed, 4, 2, 2);
    const auto a = omega_safety_automaton(r);
    for (int k = 0; k < 4; ++k) {
      CompleteLassoTrace t;
      try {
        t = random_complete_lasso(r, seed * 31 + k, rng() % 4, 1 + rng() % 3);
      } catch (const LassoGenerationError&) {
        continue;
      }
      if (k % 2) t = corrupt(r, t, rng);
      const bool ok = static_cast<bool>(is_complete_trace(r, t));
      (ok ? complete : incomplete)++;
      ASSERT_EQ(member(a, encode(r, t)), ok) << "seed " << seed;
    }
  }
  EXPECT_GT(complete, 300u);
  EXPECT_GT(incomplete, 100u);
}

TEST(OmegaSafety, CorridorRandomLassos) {
  const auto& r = corridor();
  const auto a = omega_safety_automaton(r);
  std::mt19937_64 rng(5);
  for (int k = 0; k < 1000; ++k) {
    CompleteLassoTrace t = random_complete_lasso(r, k, k % 3, 1 + k % 3);
    if (k % 2) t = corrupt(r, t, rng);
    ASSERT_EQ(member(a, encode(r, t)), static_cast<bool>(is_complete_trace(r, t)));
  }
}

TEST(Encode, RoundTrip) {
  const auto& r = corridor();
  const auto t = random_complete_lasso(r, 7, 2, 2);
  EXPECT_EQ(decode(r, encode(r, t)), t);
}

TEST(Belief, LightDarkInitialBelief) {
  const RobotTransitionSystem r = catalog("light_dark").system;
  const BeliefSystem b = belief_system(r);
  ASSERT_EQ(b.system.init().size(), 1u);
  const StateSet& x0 = b.beliefs[idx(b.system.init()[0])];
  EXPECT_EQ(x0, r.init());
  EXPECT_EQ(x0.size(), 2u);
  EXPECT_TRUE(std::holds_alternative<RobotTransitionSystem>(validate_system(b.system.to_raw())));
}

TEST(Belief, DeterministicSystemIsIsomorphic) {
  // Deterministic, fully observed: beliefs stay singletons.
  RawSystem raw;
  raw.states = {"p", "q"};
  raw.actions = {"go"};
  raw.observations = {"p", "q"};
  raw.init = {"p"};
  raw.trans = {{"p", "go", {"q"}}, {"q", "go", {"p"}}};
  raw.obs = {{"p", "go", "q", {"q"}}, {"q", "go", "p", {"p"}}};
  const auto r = make_system(raw);
  const BeliefSystem b = belief_system(r);
  EXPECT_EQ(b.system.num_states(), 2u);
  for (const auto& s : b.beliefs) EXPECT_EQ(s.size(), 1u);
}

TEST(Belief, StateTracesMatchIStateTraces) {
  const auto& r = corridor();
  const BeliefSystem b = belief_system(r);
  auto belief_id = [&b](const StateSet& s) {
    const auto it = std::find(b.beliefs.begin(), b.beliefs.end(), s);
    EXPECT_NE(it, b.beliefs.end());
    return StateId{static_cast<std::uint32_t>(it - b.beliefs.begin())};
  };
  for (int k = 0; k < 200; ++k) {
    const auto t = random_complete_lasso(r, k, k % 4, 1 + k % 3);
    // Letter i of the belief trace sits in the I-state before step i.
    const auto tb = run_on_lasso(t, r.init(), [&](StateSet& iota, const Letter& l) {
      const Letter out{belief_id(iota), l.u, l.y};
      iota = istate_update(r, iota, l.u, l.y);
      return out;
    });
    ASSERT_TRUE(is_complete_trace(b.system, tb));
    const auto xs = condense_state(tb);
    const auto is = condense_ndet(r, t);
    const std::size_t n = comparison_horizon(xs, is) + 1;
    for (std::size_t i = 1; i < n; ++i) ASSERT_EQ(b.beliefs[idx(xs.at(i + 1))], is.at(i));
  }
}

TEST(Belief, Guard) {
  EXPECT_THROW(belief_system(catalog("light_dark").system, 2), ResourceError);
}

TEST(Random, SystemsAreValidAndDeterministic) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto r = random_system(seed, 3, 2, 2);
    ASSERT_TRUE(std::holds_alternative<RobotTransitionSystem>(validate_system(r.to_raw())));
    ASSERT_LE(r.num_states(), 3u);
  }
  const auto a = random_system(1, 3, 2, 2).to_raw();
  const auto b = random_system(1, 3, 2, 2).to_raw();
  EXPECT_EQ(a.states, b.states);
  EXPECT_EQ(a.init, b.init);
  ASSERT_EQ(a.trans.size(), b.trans.size());
  for (std::size_t k = 0; k < a.trans.size(); ++k) EXPECT_EQ(a.trans[k].succ, b.trans[k].succ);
  ASSERT_EQ(a.obs.size(), b.obs.size());
  for (std::size_t k = 0; k < a.obs.size(); ++k) EXPECT_EQ(a.obs[k].ys, b.obs[k].ys);
}

TEST(Random, CompleteLassos) {
  std::size_t drawn = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto r = random_system(seed, 4, 2, 2);
    try {
      ASSERT_TRUE(is_complete_trace(r, random_complete_lasso(r, seed, seed % 3, 1 + seed % 2)));
      ++drawn;
    } catch (const LassoGenerationError&) {
    }
  }
  EXPECT_GT(drawn, 900u);
  EXPECT_TRUE(is_complete_trace(corridor(), random_complete_lasso(corridor(), 7, 2, 2)));
}

TEST(Random, SingleStateLassoIsUnique) {
  const auto r = make_system(unit_raw());
  const auto t1 = random_complete_lasso(r, 1, 1, 2);
  const auto t2 = random_complete_lasso(r, 99, 1, 2);
  EXPECT_TRUE(same_word(t1, t2));
}

}  // namespace
}  // namespace taskground
