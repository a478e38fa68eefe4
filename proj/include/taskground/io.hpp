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

// JSON forms of systems, lassos, automata and reports. Readers throw
// std::invalid_argument on schema errors; syntax errors surface as
// nlohmann::json::parse_error from the caller's parse.

#include <string>
#include <vector>

#include <json.hpp>

#include "taskground/buchi.hpp"
#include "taskground/ltl.hpp"
#include "taskground/posability.hpp"
#include "taskground/system.hpp"

namespace taskground {

using Json = nlohmann::json;

RawSystem raw_system_from_json(const Json& j);
Json to_json(const RawSystem& raw);

/// {prefix: [[x,u,y], ...], cycle: [...]}, symbols by name.
CompleteLassoTrace lasso_from_json(const RobotTransitionSystem& r, const Json& j);
Json to_json(const RobotTransitionSystem& r, const CompleteLassoTrace& t);

/// {prefix: [[p, ...], ...], cycle: [...]}.
Json to_json(const PropLasso& s);

/// {alphabet, states, initial, accepting, trans: [{from, letter, to}]}.
/// With a target alphabet, letters are resolved by name against it and the
/// result uses it; every letter named in the file must exist there.
BuchiAutomaton automaton_from_json(const Json& j, const std::vector<std::string>* target_alphabet = nullptr);
Json to_json(const BuchiAutomaton& a);

/// {state, ao, istate, counterexamples: {kind: {w, wbar}}, notes}.
Json to_json(const RobotTransitionSystem& r, const PosabilityReport& report);

}  // namespace taskground
