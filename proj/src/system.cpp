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

#include "taskground/system.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <unordered_map>

namespace taskground {

namespace {

template <class Id>
std::optional<Id> lookup(const std::vector<std::string>& names, const std::string& n) {
  auto it = std::find(names.begin(), names.end(), n);
  if (it == names.end()) return std::nullopt;
  return static_cast<Id>(it - names.begin());
}

const std::vector<ObsId> kNoObservations;

}  // namespace

std::optional<StateId> RobotTransitionSystem::find_state(const std::string& n) const {
  return lookup<StateId>(state_names_, n);
}
std::optional<ActionId> RobotTransitionSystem::find_action(const std::string& n) const {
  return lookup<ActionId>(action_names_, n);
}
std::optional<ObsId> RobotTransitionSystem::find_observation(const std::string& n) const {
  return lookup<ObsId>(obs_names_, n);
}

bool RobotTransitionSystem::is_initial(StateId x) const {
  return std::binary_search(init_.begin(), init_.end(), x);
}

const std::vector<ObsId>& RobotTransitionSystem::observations(StateId x, ActionId u, StateId x2) const {
  const std::size_t k = idx(x) * num_actions() + idx(u);
  const auto& succ = succ_[k];
  auto it = std::lower_bound(succ.begin(), succ.end(), x2);
  if (it == succ.end() || *it != x2) return kNoObservations;
  return obs_[k][static_cast<std::size_t>(it - succ.begin())];
}

bool RobotTransitionSystem::can_observe(StateId x, ActionId u, StateId x2, ObsId y) const {
  const auto& ys = observations(x, u, x2);
  return std::binary_search(ys.begin(), ys.end(), y);
}

Letter RobotTransitionSystem::letter(LetterId id) const {
  const std::size_t y = id % num_observations();
  const std::size_t rest = id / num_observations();
  return Letter{static_cast<StateId>(rest / num_actions()), static_cast<ActionId>(rest % num_actions()),
                static_cast<ObsId>(y)};
}

History RobotTransitionSystem::history(LetterId id) const {
  return History{static_cast<ActionId>(id / num_observations()), static_cast<ObsId>(id % num_observations())};
}

std::string RobotTransitionSystem::letter_name(const Letter& l) const {
  return name(l.x) + "," + name(l.u) + "," + name(l.y);
}

std::string RobotTransitionSystem::history_name(const History& h) const {
  return name(h.u) + "," + name(h.y);
}

std::vector<std::string> RobotTransitionSystem::letter_alphabet() const {
  std::vector<std::string> out;
  out.reserve(num_letters());
  for (LetterId l = 0; l < num_letters(); ++l) out.push_back(letter_name(letter(l)));
  return out;
}

std::vector<std::string> RobotTransitionSystem::history_alphabet() const {
  std::vector<std::string> out;
  out.reserve(num_histories());
  for (LetterId l = 0; l < num_histories(); ++l) out.push_back(history_name(history(l)));
  return out;
}

RawSystem RobotTransitionSystem::to_raw() const {
  RawSystem raw;
  raw.states = state_names_;
  raw.actions = action_names_;
  raw.observations = obs_names_;
  for (StateId x : init_) raw.init.push_back(name(x));
  for (std::uint32_t x = 0; x < num_states(); ++x) {
    for (std::uint32_t u = 0; u < num_actions(); ++u) {
      RawSystem::Transition t{state_names_[x], action_names_[u], {}};
      const auto& succ = successors(StateId{x}, ActionId{u});
      for (std::size_t k = 0; k < succ.size(); ++k) {
        t.succ.push_back(name(succ[k]));
        RawSystem::Observation o{state_names_[x], action_names_[u], name(succ[k]), {}};
        for (ObsId y : obs_[x * num_actions() + u][k]) o.ys.push_back(name(y));
        raw.obs.push_back(std::move(o));
      }
      raw.trans.push_back(std::move(t));
    }
  }
  return raw;
}

bool is_valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '+' || c == '-';
  });
}

ValidationResult validate_system(const RawSystem& raw) {
  std::vector<Violation> v;
  auto check_names = [&v](const std::vector<std::string>& names, const char* kind) {
    std::set<std::string> seen;
    for (const auto& n : names) {
      if (!is_valid_identifier(n)) v.push_back({std::string("invalid identifier in ") + kind, n});
      if (!seen.insert(n).second) v.push_back({std::string("duplicate identifier in ") + kind, n});
    }
    if (names.empty()) v.push_back({std::string("empty set of ") + kind, ""});
  };
  check_names(raw.states, "states");
  check_names(raw.actions, "actions");
  check_names(raw.observations, "observations");
  if (raw.init.empty()) v.push_back({"initial set empty", ""});

  RobotTransitionSystem r;
  r.state_names_ = raw.states;
  r.action_names_ = raw.actions;
  r.obs_names_ = raw.observations;
  if (!v.empty()) return v;

  const std::size_t nx = raw.states.size(), nu = raw.actions.size(), ny = raw.observations.size();
  for (const auto& n : raw.init) {
    if (auto x = r.find_state(n)) r.init_.push_back(*x);
    else v.push_back({"initial state not in X", n});
  }
  std::sort(r.init_.begin(), r.init_.end());
  r.init_.erase(std::unique(r.init_.begin(), r.init_.end()), r.init_.end());

  r.succ_.assign(nx * nu, {});
  std::vector<bool> given(nx * nu, false);
  for (const auto& t : raw.trans) {
    const std::string where = "(" + t.x + "," + t.u + ")";
    auto x = r.find_state(t.x);
    auto u = r.find_action(t.u);
    if (!x || !u) {
      v.push_back({"transition uses unknown symbol", where});
      continue;
    }
    const std::size_t k = idx(*x) * nu + idx(*u);
    if (given[k]) {
      v.push_back({"duplicate transition entry", where});
      continue;
    }
    given[k] = true;
    for (const auto& s : t.succ) {
      if (auto x2 = r.find_state(s)) r.succ_[k].push_back(*x2);
      else v.push_back({"transition target not in X", where + "->" + s});
    }
    std::sort(r.succ_[k].begin(), r.succ_[k].end());
    r.succ_[k].erase(std::unique(r.succ_[k].begin(), r.succ_[k].end()), r.succ_[k].end());
    if (t.succ.empty()) v.push_back({"transition image empty", where});
  }
  for (std::size_t k = 0; k < nx * nu; ++k)
    if (!given[k]) v.push_back({"transition missing", "(" + raw.states[k / nu] + "," + raw.actions[k % nu] + ")"});

  r.obs_.assign(nx * nu, {});
  for (std::size_t k = 0; k < nx * nu; ++k) r.obs_[k].assign(r.succ_[k].size(), {});
  std::vector<std::vector<bool>> obs_given(nx * nu);
  for (std::size_t k = 0; k < nx * nu; ++k) obs_given[k].assign(r.succ_[k].size(), false);
  for (const auto& o : raw.obs) {
    const std::string where = "(" + o.x + "," + o.u + "," + o.x2 + ")";
    auto x = r.find_state(o.x);
    auto u = r.find_action(o.u);
    auto x2 = r.find_state(o.x2);
    if (!x || !u || !x2) {
      v.push_back({"observation entry uses unknown symbol", where});
      continue;
    }
    const std::size_t k = idx(*x) * nu + idx(*u);
    const auto& succ = r.succ_[k];
    auto it = std::lower_bound(succ.begin(), succ.end(), *x2);
    if (it == succ.end() || *it != *x2) {
      v.push_back({"observation on impossible transition", where});
      continue;
    }
    const std::size_t pos = static_cast<std::size_t>(it - succ.begin());
    if (obs_given[k][pos]) {
      v.push_back({"duplicate observation entry", where});
      continue;
    }
    obs_given[k][pos] = true;
    auto& ys = r.obs_[k][pos];
    for (const auto& yn : o.ys) {
      if (auto y = r.find_observation(yn)) ys.push_back(*y);
      else v.push_back({"observation not in Y", where + "->" + yn});
    }
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    if (o.ys.empty()) v.push_back({"observation set empty", where});
  }
  for (std::size_t k = 0; k < nx * nu; ++k) {
    for (std::size_t pos = 0; pos < r.succ_[k].size(); ++pos) {
      if (!obs_given[k][pos])
        v.push_back({"observation missing",
                     "(" + raw.states[k / nu] + "," + raw.actions[k % nu] + "," + r.name(r.succ_[k][pos]) + ")"});
    }
  }
  if (!v.empty()) return v;

  r.consistent_.assign(nx * nu * ny, {});
  for (std::size_t k = 0; k < nx * nu; ++k)
    for (std::size_t pos = 0; pos < r.succ_[k].size(); ++pos)
      for (ObsId y : r.obs_[k][pos]) r.consistent_[k * ny + idx(y)].push_back(r.succ_[k][pos]);
  return r;
}

RobotTransitionSystem make_system(const RawSystem& raw) {
  auto result = validate_system(raw);
  if (auto* errs = std::get_if<std::vector<Violation>>(&result)) {
    std::string msg = "invalid robot transition system:";
    for (const auto& e : *errs) msg += "\n  " + e.message + (e.where.empty() ? "" : " " + e.where);
    throw std::invalid_argument(msg);
  }
  return std::get<RobotTransitionSystem>(std::move(result));
}

TraceCheck is_complete_trace(const RobotTransitionSystem& r, const CompleteLassoTrace& t) {
  if (t.cycle.empty()) return {false, 1, "empty cycle"};
  const std::size_t n = t.span();
  for (std::size_t i = 1; i <= n; ++i) {
    const Letter& l = t.at(i);
    if (idx(l.x) >= r.num_states()) return {false, i, "state outside X"};
    if (idx(l.u) >= r.num_actions()) return {false, i, "action outside U"};
    if (idx(l.y) >= r.num_observations()) return {false, i, "observation outside Y"};
  }
  if (!r.is_initial(t.at(1).x)) return {false, 1, "x_1 not in X0"};
  // Positions 1..n cover the prefix, one cycle unrolling and the wrap-around.
  for (std::size_t i = 1; i <= n; ++i) {
    const Letter& cur = t.at(i);
    const Letter& nxt = t.at(i + 1);
    const auto& succ = r.successors(cur.x, cur.u);
    if (!std::binary_search(succ.begin(), succ.end(), nxt.x)) return {false, i, "x_{i+1} not in f(x_i,u_i)"};
    if (!r.can_observe(cur.x, cur.u, nxt.x, cur.y)) return {false, i, "y_i not in h(x_i,u_i,x_{i+1})"};
  }
  return {};
}

BuchiAutomaton omega_safety_automaton(const RobotTransitionSystem& r) {
  BuchiAutomaton a(r.letter_alphabet());
  std::map<StateSet, AutState> ids;
  std::vector<std::pair<StateSet, AutState>> pending;
  auto state_of = [&](const StateSet& allowed, bool first) {
    auto [it, inserted] = ids.try_emplace(allowed, 0);
    if (inserted) {
      it->second = a.add_state(true, first ? "init" : format_set(r, allowed));
      pending.emplace_back(allowed, it->second);
    }
    return it->second;
  };
  a.add_initial(state_of(r.init(), true));
  std::optional<AutState> sink;
  for (std::size_t s = 0; s < pending.size(); ++s) {
    const auto [allowed, from] = pending[s];
    for (LetterId id = 0; id < r.num_letters(); ++id) {
      const Letter l = r.letter(id);
      const auto& next = r.consistent_successors(l.x, l.u, l.y);
      if (std::binary_search(allowed.begin(), allowed.end(), l.x) && !next.empty()) {
        a.add_edge(from, id, state_of(next, false));
      } else {
        if (!sink) sink = a.add_state(false, "sink");
        a.add_edge(from, id, *sink);
      }
    }
  }
  if (sink)
    for (LetterId id = 0; id < r.num_letters(); ++id) a.add_edge(*sink, id, *sink);
  a.finalize();
  return a;
}

LassoWord encode(const RobotTransitionSystem& r, const CompleteLassoTrace& t) {
  return map_lasso(t, [&r](const Letter& l) { return r.letter_id(l); });
}

CompleteLassoTrace decode(const RobotTransitionSystem& r, const LassoWord& w) {
  return map_lasso(w, [&r](LetterId l) { return r.letter(l); });
}

std::string format_set(const RobotTransitionSystem& r, const StateSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + r.name(s[i]);
  return out + "}";
}

BeliefSystem belief_system(const RobotTransitionSystem& r, std::size_t cap) {
  std::map<StateSet, std::size_t> ids;
  std::vector<StateSet> beliefs;
  auto intern = [&](const StateSet& b) {
    auto [it, inserted] = ids.try_emplace(b, beliefs.size());
    if (inserted) {
      if (beliefs.size() >= cap)
        throw ResourceError("reachable beliefs exceed the guard of " + std::to_string(cap));
      beliefs.push_back(b);
    }
    return it->second;
  };
  auto update = [&r](const StateSet& b, ActionId u, ObsId y) {
    StateSet out;
    for (StateId x : b) {
      const auto& f = r.consistent_successors(x, u, y);
      out.insert(out.end(), f.begin(), f.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  intern(r.init());
  // successor[b][u] : list of (y, belief id)
  std::vector<std::vector<std::vector<std::pair<ObsId, std::size_t>>>> next;
  for (std::size_t b = 0; b < beliefs.size(); ++b) {
    next.emplace_back(r.num_actions());
    for (std::uint32_t u = 0; u < r.num_actions(); ++u) {
      for (std::uint32_t y = 0; y < r.num_observations(); ++y) {
        StateSet nb = update(beliefs[b], ActionId{u}, ObsId{y});
        if (nb.empty()) continue;
        next[b][u].emplace_back(ObsId{y}, intern(nb));
      }
    }
  }

  RawSystem raw;
  for (const auto& b : beliefs) raw.states.push_back(format_set(r, b));
  // Belief names use braces and commas; replace them with identifier-safe text.
  for (auto& n : raw.states) {
    std::string safe;
    for (char c : n) safe += (c == '{' || c == '}') ? '_' : (c == ',' ? '+' : c);
    n = safe;
  }
  raw.actions = r.action_names();
  raw.observations = r.observation_names();
  raw.init = {raw.states[0]};
  for (std::size_t b = 0; b < beliefs.size(); ++b) {
    for (std::uint32_t u = 0; u < r.num_actions(); ++u) {
      std::map<std::size_t, std::vector<std::string>> by_target;
      for (const auto& [y, nb] : next[b][u]) by_target[nb].push_back(r.name(y));
      RawSystem::Transition t{raw.states[b], r.name(ActionId{u}), {}};
      for (const auto& [nb, ys] : by_target) {
        t.succ.push_back(raw.states[nb]);
        raw.obs.push_back({raw.states[b], r.name(ActionId{u}), raw.states[nb], ys});
      }
      raw.trans.push_back(std::move(t));
    }
  }
  return BeliefSystem{make_system(raw), std::move(beliefs)};
}

RobotTransitionSystem random_system(std::uint64_t seed, std::size_t max_states, std::size_t max_actions,
                                    std::size_t max_observations) {
  std::mt19937_64 rng(seed);
  auto below = [&rng](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  auto subset = [&](std::size_t n, std::size_t percent) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
      if (below(100) < percent) out.push_back(i);
    if (out.empty()) out.push_back(below(n));
    return out;
  };
  const std::size_t nx = 1 + below(std::max<std::size_t>(max_states, 1));
  const std::size_t nu = 1 + below(std::max<std::size_t>(max_actions, 1));
  const std::size_t ny = 1 + below(std::max<std::size_t>(max_observations, 1));
  RawSystem raw;
  for (std::size_t i = 0; i < nx; ++i) raw.states.push_back("s" + std::to_string(i));
  for (std::size_t i = 0; i < nu; ++i) raw.actions.push_back("a" + std::to_string(i));
  for (std::size_t i = 0; i < ny; ++i) raw.observations.push_back("o" + std::to_string(i));
  for (std::size_t x : subset(nx, 50)) raw.init.push_back(raw.states[x]);
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t u = 0; u < nu; ++u) {
      RawSystem::Transition t{raw.states[x], raw.actions[u], {}};
      for (std::size_t x2 : subset(nx, 35)) {
        t.succ.push_back(raw.states[x2]);
        RawSystem::Observation o{raw.states[x], raw.actions[u], raw.states[x2], {}};
        for (std::size_t y : subset(ny, 50)) o.ys.push_back(raw.observations[y]);
        raw.obs.push_back(std::move(o));
      }
      raw.trans.push_back(std::move(t));
    }
  }
  return make_system(raw);
}

CompleteLassoTrace random_complete_lasso(const RobotTransitionSystem& r, std::uint64_t seed,
                                         std::size_t prefix_len, std::size_t cycle_len) {
  if (cycle_len == 0) throw std::invalid_argument("cycle length must be positive");
  std::mt19937_64 rng(seed);
  auto pick = [&rng](const auto& v) { return v[static_cast<std::size_t>(rng() % v.size())]; };
  const std::size_t nx = r.num_states();
  constexpr int kAttempts = 64;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    CompleteLassoTrace t;
    StateId x = pick(r.init());
    for (std::size_t i = 0; i < prefix_len; ++i) {
      const ActionId u{static_cast<std::uint32_t>(rng() % r.num_actions())};
      const StateId x2 = pick(r.successors(x, u));
      const ObsId y = pick(r.observations(x, u, x2));
      t.prefix.push_back({x, u, y});
      x = x2;
    }
    // back[k][s]: s reaches the cycle start in exactly k steps.
    const StateId start = x;
    std::vector<std::vector<bool>> back(cycle_len + 1, std::vector<bool>(nx, false));
    back[0][idx(start)] = true;
    for (std::size_t k = 1; k <= cycle_len; ++k)
      for (std::uint32_t s = 0; s < nx; ++s)
        for (std::uint32_t u = 0; u < r.num_actions() && !back[k][s]; ++u)
          for (StateId s2 : r.successors(StateId{s}, ActionId{u}))
            if (back[k - 1][idx(s2)]) back[k][s] = true;
    if (!back[cycle_len][idx(start)]) continue;
    for (std::size_t remaining = cycle_len; remaining > 0; --remaining) {
      std::vector<std::pair<ActionId, StateId>> moves;
      for (std::uint32_t u = 0; u < r.num_actions(); ++u)
        for (StateId s2 : r.successors(x, ActionId{u}))
          if (back[remaining - 1][idx(s2)]) moves.emplace_back(ActionId{u}, s2);
      const auto [u, x2] = pick(moves);
      t.cycle.push_back({x, u, pick(r.observations(x, u, x2))});
      x = x2;
    }
    return t;
  }
  throw LassoGenerationError("no cycle of length " + std::to_string(cycle_len) + " closes within " +
                             std::to_string(kAttempts) + " attempts");
}

}  // namespace taskground
