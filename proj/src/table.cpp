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

#include "taskground/table.hpp"

#include <random>

#include "taskground/catalog.hpp"

namespace taskground {

bool TableRow::matches() const {
  for (std::size_t k = 0; k < 3; ++k) {
    const Verdict v = report.bits[k].verdict;
    if (v == Verdict::Undecided || (v == Verdict::Yes) != expected[k]) return false;
  }
  return true;
}

std::vector<TableRow> compute_table(const Guards& guards) {
  std::vector<TableRow> rows;
  for (const auto& name : catalog_names()) {
    const CatalogEntry e = catalog(name);
    TableRow row;
    row.example = name;
    row.formula = e.formula;
    row.grounding = e.grounding;
    row.expected = e.expected;
    row.report = posability_profile(e.system, TaskSpec::from_formula(parse(e.formula), e.grounding), guards);
    rows.push_back(std::move(row));
  }
  return rows;
}

const std::vector<ImpossibleRow>& impossible_rows() {
  static const std::vector<ImpossibleRow> rows = {
      {{false, false, true}, "istate-posable implies ao-posable"},
      {{true, false, true}, "istate-posable implies ao-posable"},
      {{true, true, false}, "state- and ao-posable implies istate-posable"},
  };
  return rows;
}

namespace {

std::vector<Formula> leaves_for(const RobotTransitionSystem& r, Grounding g) {
  std::vector<Formula> out;
  if (g == Grounding::ActionObservation) {
    for (const auto& n : r.action_names()) out.push_back(Formula::atom(AtomType::Action, n));
    for (const auto& n : r.observation_names()) out.push_back(Formula::atom(AtomType::Obs, n));
  } else {
    for (const auto& n : r.state_names()) out.push_back(Formula::atom(AtomType::State, n));
  }
  return out;
}

}  // namespace

FuzzResult run_fuzz(const FuzzOptions& options, const Guards& guards) {
  FuzzResult out;
  std::mt19937_64 rng(options.seed);
  constexpr Grounding kCycle[] = {Grounding::State, Grounding::ActionObservation, Grounding::IState};
  for (std::size_t k = 0; k < options.runs; ++k) {
    const std::uint64_t system_seed = rng();
    const RobotTransitionSystem r =
        random_system(system_seed, options.max_states, options.max_actions, options.max_observations);
    const Grounding g = kCycle[k % 3];
    const Formula f = random_formula(rng, options.max_depth, leaves_for(r, g));
    const TaskSpec spec = TaskSpec::from_formula(f, g);
    const ClosureRecord rec = check_istate_closure(r, spec, guards, {{true, true, true}, false});
    ++out.runs;
    if (options.observer) options.observer(r, spec, rec.report);
    const std::string prof = rec.report.profile();
    ++out.profiles[prof];
    for (const auto& bit : rec.report.bits) {
      if (bit.verdict == Verdict::Undecided) ++out.undecided;
      if (bit.counterexample) ++out.verified_counterexamples;
    }
    for (const auto& row : impossible_rows()) {
      bool hit = true;
      for (std::size_t b = 0; b < 3; ++b)
        hit = hit && rec.report.bits[b].verdict == (row.profile[b] ? Verdict::Yes : Verdict::No);
      if (hit) ++out.impossible[prof];
    }
    for (const auto& v : rec.violations)
      out.violations.push_back("run " + std::to_string(k) + " (system seed " + std::to_string(system_seed) + ", " +
                               to_string(g) + " grounding, " + to_string(f) + "): " + v);
  }
  return out;
}

}  // namespace taskground
