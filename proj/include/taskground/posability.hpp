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
#include <optional>
#include <string>
#include <vector>

#include "taskground/buchi.hpp"
#include "taskground/condensers.hpp"
#include "taskground/ltl.hpp"
#include "taskground/system.hpp"

namespace taskground {

/// A task description: a grounded formula, or an automaton over X×U×Y
/// letters (intersected with the complete traces on use).
struct TaskSpec {
  std::optional<Formula> formula;
  Grounding grounding = Grounding::State;
  std::optional<BuchiAutomaton> automaton;

  static TaskSpec from_formula(Formula f, Grounding g);
  static TaskSpec from_automaton(BuchiAutomaton a);
};

/// Throws std::invalid_argument if the spec does not fit r: atom kinds
/// incompatible with the grounding, unknown symbols, or an automaton over
/// a different alphabet.
void check_spec(const RobotTransitionSystem& r, const TaskSpec& spec);

/// Proposition universe of a formula spec: its atoms plus kStartProp.
std::vector<std::string> spec_propositions(const Formula& f);

/// The task T as an automaton over X×U×Y: complete traces whose grounding
/// satisfies the formula (or that the raw automaton accepts).
BuchiAutomaton task_automaton(const RobotTransitionSystem& r, const TaskSpec& spec, const Guards& guards = {});

/// T and its complement within the complete traces. Formula specs get the
/// complement from the negated formula; raw automata are complemented.
struct TaskPair {
  BuchiAutomaton pos;
  BuchiAutomaton neg;
};
TaskPair task_automata(const RobotTransitionSystem& r, const TaskSpec& spec, const Guards& guards = {});

/// w in T and wbar not in T with equal condenser output.
struct Counterexample {
  CompleteLassoTrace w;
  CompleteLassoTrace wbar;
};

struct WellPosedness {
  bool well_posed = true;
  std::optional<Counterexample> counterexample;
};

/// Decides whether no two complete traces with equal condenser output are
/// split by the task. Searches the synchronized product of T and its
/// complement for a pair of accepted lassos.
WellPosedness is_well_posed(const RobotTransitionSystem& r, const TaskPair& task, CondenserKind kind,
                            const Guards& guards = {});

/// Checks a counterexample against the report invariants. Returns an
/// empty string when it passes, otherwise the first failed check.
std::string verify_counterexample(const RobotTransitionSystem& r, const TaskSpec& spec, const TaskPair& task,
                                  CondenserKind kind, const Counterexample& c);

enum class Verdict { Yes, No, Undecided };

struct BitResult {
  Verdict verdict = Verdict::Undecided;
  std::optional<Counterexample> counterexample;
  /// Reason for an undecided bit.
  std::string note;
};

struct PosabilityReport {
  /// Indexed by CondenserKind: state, ao, istate.
  std::array<BitResult, 3> bits;

  const BitResult& bit(CondenserKind k) const { return bits[static_cast<std::size_t>(k)]; }
  /// "1", "0" or "?" per bit, e.g. "(0,1,1)".
  std::string profile() const;
};

struct ProfileOptions {
  std::array<bool, 3> condensers{true, true, true};
  bool parallel = true;
};

/// Runs the requested well-posedness checks and verifies every
/// counterexample before returning. Resource errors make a bit Undecided.
PosabilityReport posability_profile(const RobotTransitionSystem& r, const TaskSpec& spec, const Guards& guards = {},
                                    const ProfileOptions& options = {});

/// Product of an automaton over state propositions with r, reading U×Y
/// letters. `a` is over proposition_alphabet(ap); the run on a complete
/// trace feeds a the grounded state letters, kStartProp at position 1.
BuchiAutomaton rts_product(const BuchiAutomaton& a, const RobotTransitionSystem& r,
                           const std::vector<std::string>& ap);

enum class AoVerdict { NotPosable, Expressible, Inconclusive };
std::string to_string(AoVerdict v);

struct AoResult {
  AoVerdict verdict = AoVerdict::Inconclusive;
  std::optional<Counterexample> counterexample;
  /// The product automaton over U×Y letters (trimmed).
  std::optional<BuchiAutomaton> product;
  std::optional<CounterWitness> counter;
  std::size_t monoid_size = 0;
  /// An equivalent ao-grounded formula when one was certified.
  std::optional<Formula> witness;
  /// "counter-free product" or "propositional substitution".
  std::string method;
};

/// Whether a state-grounded formula has an equivalent ao-grounded one.
/// NotPosable comes with a counterexample under the history condenser.
/// Expressible is certified either by a counter-free product automaton or
/// by an explicit ao formula whose task is checked equal to the original.
AoResult exists_ao_formula(const RobotTransitionSystem& r, const Formula& psi, const Guards& guards = {});

struct ClosureRecord {
  PosabilityReport report;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Profile plus the consistency rules between the three bits: istate
/// implies ao; state and ao imply istate; a formula task is posable under
/// its own grounding; an istate-grounded formula is ao-posable.
ClosureRecord check_istate_closure(const RobotTransitionSystem& r, const TaskSpec& spec, const Guards& guards = {},
                                   const ProfileOptions& options = {});

}  // namespace taskground
