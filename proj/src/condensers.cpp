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

#include "taskground/condensers.hpp"

#include <map>
#include <stdexcept>
#include <tuple>

namespace taskground {

std::string to_string(Grounding g) {
  switch (g) {
    case Grounding::State: return "state";
    case Grounding::ActionObservation: return "ao";
    case Grounding::IState: return "istate";
  }
  return "?";
}

std::string to_string(CondenserKind c) {
  switch (c) {
    case CondenserKind::State: return "state";
    case CondenserKind::History: return "ao";
    case CondenserKind::IState: return "istate";
  }
  return "?";
}

Grounding parse_grounding(const std::string& s) {
  if (s == "state") return Grounding::State;
  if (s == "ao" || s == "action_observation") return Grounding::ActionObservation;
  if (s == "istate") return Grounding::IState;
  throw std::invalid_argument("unknown grounding '" + s + "'");
}

CondenserKind parse_condenser(const std::string& s) {
  if (s == "state") return CondenserKind::State;
  if (s == "ao" || s == "action_observation" || s == "history") return CondenserKind::History;
  if (s == "istate" || s == "ndet") return CondenserKind::IState;
  throw std::invalid_argument("unknown condenser '" + s + "'");
}

CondenserKind condenser_of(Grounding g) {
  switch (g) {
    case Grounding::State: return CondenserKind::State;
    case Grounding::ActionObservation: return CondenserKind::History;
    case Grounding::IState: return CondenserKind::IState;
  }
  return CondenserKind::State;
}

StateSet istate_update(const RobotTransitionSystem& r, const StateSet& prior, ActionId u, ObsId y) {
  StateSet out;
  for (StateId x : prior) {
    const auto& f = r.consistent_successors(x, u, y);
    out.insert(out.end(), f.begin(), f.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Lasso<StateId> condense_state(const CompleteLassoTrace& t) {
  return map_lasso(t, [](const Letter& l) { return l.x; });
}

Lasso<History> condense_history(const CompleteLassoTrace& t) {
  return map_lasso(t, [](const Letter& l) { return History{l.u, l.y}; });
}

Lasso<StateSet> condense_ndet(const RobotTransitionSystem& r, const CompleteLassoTrace& t) {
  return run_on_lasso(t, r.init(), [&r](StateSet& iota, const Letter& l) {
    iota = istate_update(r, iota, l.u, l.y);
    return iota;
  });
}

namespace {

PropSet props_of(const RobotTransitionSystem& r, const Letter& l, const StateSet& iota, Grounding g) {
  PropSet p;
  switch (g) {
    case Grounding::State: p.insert("x:" + r.name(l.x)); break;
    case Grounding::ActionObservation:
      p.insert("u:" + r.name(l.u));
      p.insert("y:" + r.name(l.y));
      break;
    case Grounding::IState:
      for (StateId z : iota) p.insert("x:" + r.name(z));
      break;
  }
  return p;
}

}  // namespace

PropLasso ground(const RobotTransitionSystem& r, const CompleteLassoTrace& t, Grounding g) {
  struct Machine {
    bool first = true;
    StateSet iota;
    bool operator<(const Machine& o) const { return std::tie(first, iota) < std::tie(o.first, o.iota); }
  };
  return run_on_lasso(t, Machine{true, r.init()}, [&](Machine& m, const Letter& l) {
    if (g == Grounding::IState) m.iota = istate_update(r, m.iota, l.u, l.y);
    PropSet p = props_of(r, l, m.iota, g);
    if (m.first) p.insert(kStartProp);
    m.first = false;
    return p;
  });
}

std::vector<std::string> grounding_propositions(const RobotTransitionSystem& r, Grounding g) {
  std::vector<std::string> out;
  if (g == Grounding::ActionObservation) {
    for (const auto& n : r.action_names()) out.push_back("u:" + n);
    for (const auto& n : r.observation_names()) out.push_back("y:" + n);
  } else {
    for (const auto& n : r.state_names()) out.push_back("x:" + n);
  }
  out.push_back(kStartProp);
  return out;
}

std::vector<StateSet> reachable_istates(const RobotTransitionSystem& r, std::size_t cap) {
  std::map<StateSet, std::size_t> ids;
  std::vector<StateSet> out;
  auto intern = [&](const StateSet& s) {
    if (ids.try_emplace(s, out.size()).second) {
      if (out.size() >= cap) throw ResourceError("reachable I-states exceed the guard of " + std::to_string(cap));
      out.push_back(s);
    }
  };
  intern(r.init());
  for (std::size_t k = 0; k < out.size(); ++k) {
    for (std::uint32_t u = 0; u < r.num_actions(); ++u)
      for (std::uint32_t y = 0; y < r.num_observations(); ++y) {
        StateSet next = istate_update(r, out[k], ActionId{u}, ObsId{y});
        intern(next);
      }
  }
  return out;
}

Transducer condenser_transducer(const RobotTransitionSystem& r, CondenserKind kind, const Guards& guards) {
  Transducer d;
  d.input_size = r.num_letters();
  switch (kind) {
    case CondenserKind::State:
    case CondenserKind::History: {
      d.num_states = 1;
      d.output_names = kind == CondenserKind::State ? r.state_names() : r.history_alphabet();
      d.state_names = {"*"};
      for (LetterId id = 0; id < r.num_letters(); ++id) {
        const Letter l = r.letter(id);
        d.table.push_back({0, kind == CondenserKind::State ? idx(l.x) : r.history_id({l.u, l.y})});
      }
      return d;
    }
    case CondenserKind::IState: {
      const auto istates = reachable_istates(r, guards.belief_cap);
      std::map<StateSet, std::uint32_t> ids;
      for (std::size_t k = 0; k < istates.size(); ++k) {
        ids.emplace(istates[k], static_cast<std::uint32_t>(k));
        d.output_names.push_back(format_set(r, istates[k]));
      }
      d.state_names = d.output_names;
      d.num_states = istates.size();
      d.table.reserve(istates.size() * r.num_letters());
      for (const auto& iota : istates) {
        for (LetterId id = 0; id < r.num_letters(); ++id) {
          const Letter l = r.letter(id);
          const std::uint32_t next = ids.at(istate_update(r, iota, l.u, l.y));
          d.table.push_back({next, next});
        }
      }
      return d;
    }
  }
  throw std::logic_error("unknown condenser kind");
}

Transducer grounding_transducer(const RobotTransitionSystem& r, Grounding g, const std::vector<std::string>& ap,
                                const Guards& guards) {
  std::vector<StateSet> istates = {r.init()};
  if (g == Grounding::IState) istates = reachable_istates(r, guards.belief_cap);
  std::map<StateSet, std::uint32_t> ids;
  for (std::size_t k = 0; k < istates.size(); ++k) ids.emplace(istates[k], static_cast<std::uint32_t>(k));

  // Internal state = 2 * istate index + (first step pending ? 1 : 0).
  Transducer d;
  d.input_size = r.num_letters();
  d.num_states = 2 * istates.size();
  d.initial = 1;
  d.output_names = proposition_alphabet(ap);
  for (std::size_t k = 0; k < istates.size(); ++k) {
    d.state_names.push_back(format_set(r, istates[k]));
    d.state_names.push_back(format_set(r, istates[k]) + "^");
  }
  d.table.resize(d.num_states * d.input_size);
  for (std::uint32_t s = 0; s < d.num_states; ++s) {
    const bool first = s % 2 == 1;
    const StateSet& iota = istates[s / 2];
    for (LetterId id = 0; id < r.num_letters(); ++id) {
      const Letter l = r.letter(id);
      std::uint32_t next_iota = 0;
      PropSet p;
      if (g == Grounding::IState) {
        StateSet next = istate_update(r, iota, l.u, l.y);
        next_iota = ids.at(next);
        p = props_of(r, l, next, g);
      } else {
        p = props_of(r, l, iota, g);
      }
      if (first) p.insert(kStartProp);
      d.table[s * d.input_size + id] = {2 * next_iota, proposition_letter(p, ap)};
    }
  }
  return d;
}

}  // namespace taskground
