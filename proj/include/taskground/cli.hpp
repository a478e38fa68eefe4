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

#include <iosfwd>
#include <string>
#include <vector>

namespace taskground {

/// Exit statuses shared by the commands. Commands also use 1 for a
/// negative answer (invalid system, a bit that is false, a row mismatch).
enum ExitCode : int {
  kExitOk = 0,
  kExitNegative = 1,
  kExitBadInput = 2,
  kExitResource = 3,
  kExitInconclusive = 4,
};

/// Runs `taskground <command> [args]`. args excludes the program name.
/// Everything is written to out/err; nothing touches the process streams.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace taskground
