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

#pragma once

// Random generators shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "taskground/buchi.hpp"
#include "taskground/ltl.hpp"
#include "taskground/system.hpp"

namespace taskground::testing {

inline PropLasso random_prop_lasso(std::mt19937_64& rng, const std::vector<std::string>& ap,
                                   std::size_t max_len) {
  PropLasso s;
  const std::size_t len = 1 + rng() % max_len;
  const std::size_t cyc = 1 + rng() % len;
  for (std::size_t i = 0; i < len; ++i) {
    PropSet p;
    for (const auto& a : ap)
      if (rng() % 2) p.insert(a);
    (i < len - cyc ? s.prefix : s.cycle).push_back(std::move(p));
  }
  return s;
}

inline LassoWord random_word(std::mt19937_64& rng, std::size_t letters, std::size_t max_len) {
  LassoWord w;
  const std::size_t len = 1 + rng() % max_len;
  const std::size_t cyc = 1 + rng() % len;
  for (std::size_t i = 0; i < len; ++i)
    (i < len - cyc ? w.prefix : w.cycle).push_back(static_cast<LetterId>(rng() % letters));
  return w;
}

/// Random NBA with the given state bound over `letters` letters.
inline BuchiAutomaton random_nba(std::mt19937_64& rng, std::size_t max_states, std::size_t letters) {
  std::vector<std::string> alphabet;
  for (std::size_t l = 0; l < letters; ++l) alphabet.push_back("l" + std::to_string(l));
  BuchiAutomaton a(alphabet);
  const std::size_t n = 1 + rng() % max_states;
  for (std::size_t q = 0; q < n; ++q) a.add_state(rng() % 3 == 0);
  a.add_initial(0);
  if (n > 1 && rng() % 3 == 0) a.add_initial(static_cast<AutState>(1 + rng() % (n - 1)));
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t l = 0; l < letters; ++l)
      for (std::size_t r = 0; r < n; ++r)
        if (rng() % 100 < 35) a.add_edge(static_cast<AutState>(q), static_cast<LetterId>(l), static_cast<AutState>(r));
  a.finalize();
  return a;
}

inline std::vector<Formula> state_leaves(const std::vector<std::string>& names) {
  std::vector<Formula> out;
  for (const auto& n : names) out.push_back(Formula::atom(AtomType::State, n));
  return out;
}

/// I-states after steps 1..n by enumerating every state path x_1 .. x_{i+1}
/// that is consistent with the action/observation letters of t.
inline std::vector<StateSet> brute_force_istates(const RobotTransitionSystem& r, const CompleteLassoTrace& t,
                                                 std::size_t n) {
  std::vector<std::vector<bool>> reached(n + 1, std::vector<bool>(r.num_states(), false));
  std::vector<StateId> path;
  auto dfs = [&](auto&& self, StateId x, std::size_t i) -> void {
    if (i > 0) reached[i][idx(x)] = true;
    if (i == n) return;
    const Letter& l = t.at(i + 1);
    for (std::uint32_t z = 0; z < r.num_states(); ++z) {
      const auto& f = r.successors(x, l.u);
      if (std::find(f.begin(), f.end(), StateId{z}) == f.end()) continue;
      if (!r.can_observe(x, l.u, StateId{z}, l.y)) continue;
      self(self, StateId{z}, i + 1);
    }
  };
  for (StateId x0 : r.init()) dfs(dfs, x0, 0);
  std::vector<StateSet> out(n + 1);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::uint32_t z = 0; z < r.num_states(); ++z)
      if (reached[i][z]) out[i].push_back(StateId{z});
  return out;
}

/// A complete lasso with the same action/observation word as v and a
/// randomly chosen consistent state sequence. The cycle of v may be unrolled.
inline std::optional<CompleteLassoTrace> history_twin(const RobotTransitionSystem& r, const CompleteLassoTrace& v,
                                                      std::mt19937_64& rng) {
  const std::size_t p = v.prefix.size(), c = v.cycle.size();
  auto post = [&r](const StateSet& from, const Letter& l) {
    std::vector<bool> in(r.num_states(), false);
    for (StateId x : from)
      for (StateId z : r.consistent_successors(x, l.u, l.y)) in[idx(z)] = true;
    StateSet out;
    for (std::uint32_t z = 0; z < r.num_states(); ++z)
      if (in[z]) out.push_back(StateId{z});
    return out;
  };
  auto pick = [&rng](const StateSet& s) { return s[rng() % s.size()]; };
  // Forward sets over the prefix: fwd[i] holds the possible x_{i+1}.
  std::vector<StateSet> fwd = {r.init()};
  for (std::size_t i = 0; i < p; ++i) fwd.push_back(post(fwd.back(), v.prefix[i]));
  for (std::size_t k = 1; k <= r.num_states() + 1; ++k) {
    const std::size_t len = k * c;
    StateSet starts = fwd[p];
    std::shuffle(starts.begin(), starts.end(), rng);
    for (StateId s : starts) {
      std::vector<StateSet> cyc = {{s}};
      for (std::size_t j = 0; j < len; ++j) cyc.push_back(post(cyc.back(), v.cycle[j % c]));
      if (!std::binary_search(cyc[len].begin(), cyc[len].end(), s)) continue;
      // Walk back from the wrap target s, choosing predecessors at random.
      std::vector<StateId> xs(p + len);
      StateId next = s;
      for (std::size_t j = len; j-- > 0;) {
        StateSet pred;
        for (StateId x : cyc[j]) {
          const auto& f = r.consistent_successors(x, v.cycle[j % c].u, v.cycle[j % c].y);
          if (std::binary_search(f.begin(), f.end(), next)) pred.push_back(x);
        }
        if (j == 0) pred = {s};
        xs[p + j] = next = pick(pred);
      }
      for (std::size_t i = p; i-- > 0;) {
        StateSet pred;
        for (StateId x : fwd[i]) {
          const auto& f = r.consistent_successors(x, v.prefix[i].u, v.prefix[i].y);
          if (std::binary_search(f.begin(), f.end(), next)) pred.push_back(x);
        }
        xs[i] = next = pick(pred);
      }
      CompleteLassoTrace out;
      for (std::size_t i = 0; i < p; ++i) out.prefix.push_back({xs[i], v.prefix[i].u, v.prefix[i].y});
      for (std::size_t j = 0; j < len; ++j) out.cycle.push_back({xs[p + j], v.cycle[j % c].u, v.cycle[j % c].y});
      return out;
    }
  }
  return std::nullopt;
}

}  // namespace taskground::testing
