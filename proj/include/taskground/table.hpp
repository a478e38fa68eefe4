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

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "taskground/posability.hpp"

namespace taskground {

/// One computed row of the posability summary table.
struct TableRow {
  std::string example;
  std::string formula;
  Grounding grounding = Grounding::State;
  std::array<bool, 3> expected{};
  PosabilityReport report;

  bool matches() const;
};

/// Profiles of every catalog entry's reference task.
std::vector<TableRow> compute_table(const Guards& guards = {});

/// Profiles that no formula task may have, with the rule each breaks.
struct ImpossibleRow {
  std::array<bool, 3> profile;
  std::string rule;
};
const std::vector<ImpossibleRow>& impossible_rows();

struct FuzzOptions {
  std::size_t runs = 1000;
  std::uint64_t seed = 0;
  std::size_t max_states = 4;
  std::size_t max_actions = 2;
  std::size_t max_observations = 2;
  std::size_t max_depth = 4;
  /// Called after each run with its system, task and report.
  std::function<void(const RobotTransitionSystem&, const TaskSpec&, const PosabilityReport&)> observer;
};

struct FuzzResult {
  std::size_t runs = 0;
  std::size_t undecided = 0;
  /// Negative bits whose counterexample passed verification.
  std::size_t verified_counterexamples = 0;
  std::map<std::string, std::size_t> profiles;
  /// Count per impossible profile, e.g. "(1,1,0)".
  std::map<std::string, std::size_t> impossible;
  /// Human-readable description of each closure violation.
  std::vector<std::string> violations;
};

/// Random systems and formulas, cycling through the three groundings.
/// Deterministic in the options.
FuzzResult run_fuzz(const FuzzOptions& options, const Guards& guards = {});

}  // namespace taskground
