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

#include <string>
#include <vector>

#include "taskground/buchi.hpp"
#include "taskground/common.hpp"
#include "taskground/ltl.hpp"
#include "taskground/system.hpp"

namespace taskground {

/// How formula propositions are read off a complete trace.
enum class Grounding { State, ActionObservation, IState };

/// Which view of a complete trace a condenser keeps.
enum class CondenserKind { State, History, IState };

std::string to_string(Grounding g);
std::string to_string(CondenserKind c);
/// Accepts "state", "ao", "action_observation" and "istate".
Grounding parse_grounding(const std::string& s);
CondenserKind parse_condenser(const std::string& s);
/// The condenser whose view a grounding exposes.
CondenserKind condenser_of(Grounding g);

/// F(x, u, y): successors of x under u that can emit y.
inline const StateSet& f_consistent_successors(const RobotTransitionSystem& r, StateId x, ActionId u, ObsId y) {
  return r.consistent_successors(x, u, y);
}

/// Union of F(x, u, y) over x in prior. May be empty off complete traces.
StateSet istate_update(const RobotTransitionSystem& r, const StateSet& prior, ActionId u, ObsId y);

Lasso<StateId> condense_state(const CompleteLassoTrace& t);
Lasso<History> condense_history(const CompleteLassoTrace& t);
/// Position k holds the I-state after the k-th action/observation pair,
/// starting from X0. The result is rolled into a proper lasso.
Lasso<StateSet> condense_ndet(const RobotTransitionSystem& r, const CompleteLassoTrace& t);

/// Proposition sets per position; kStartProp is added at position 1.
PropLasso ground(const RobotTransitionSystem& r, const CompleteLassoTrace& t, Grounding g);

/// Every proposition a grounding can emit on r, kStartProp included.
std::vector<std::string> grounding_propositions(const RobotTransitionSystem& r, Grounding g);

/// Transducer from X×U×Y letters to the condenser's output letters:
/// state names, "u,y" pairs, or I-states reachable from X0 (named as sets).
/// For the I-state kind, internal state k and output letter k denote the
/// same I-state. Throws ResourceError beyond guards.belief_cap I-states.
Transducer condenser_transducer(const RobotTransitionSystem& r, CondenserKind kind, const Guards& guards = {});

/// Transducer from X×U×Y letters to letters of proposition_alphabet(ap).
/// Propositions outside ap are dropped.
Transducer grounding_transducer(const RobotTransitionSystem& r, Grounding g, const std::vector<std::string>& ap,
                                const Guards& guards = {});

/// I-states reachable from X0 under arbitrary (u, y) letters, X0 first.
std::vector<StateSet> reachable_istates(const RobotTransitionSystem& r, std::size_t cap);

}  // namespace taskground
