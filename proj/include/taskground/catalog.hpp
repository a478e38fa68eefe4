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
#include <string>
#include <vector>

#include "taskground/condensers.hpp"
#include "taskground/system.hpp"

namespace taskground {

/// Built-in example systems with their reference tasks.
struct CatalogEntry {
  std::string name;
  RobotTransitionSystem system;
  std::string formula;
  Grounding grounding = Grounding::State;
  /// Expected (state, ao, istate) posability of the task.
  std::array<bool, 3> expected{};
  std::string description;
};

struct CatalogParams {
  /// Number of corridor cells.
  std::size_t corridor_length = 10;
};

std::vector<std::string> catalog_names();

/// Throws std::invalid_argument for unknown names.
CatalogEntry catalog(const std::string& name, const CatalogParams& params = {});

}  // namespace taskground
