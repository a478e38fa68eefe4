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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "taskground/buchi.hpp"
#include "taskground/common.hpp"

namespace taskground {

/// Unvalidated system description, as read from a file or built by hand.
struct RawSystem {
  struct Transition {
    std::string x;
    std::string u;
    std::vector<std::string> succ;
  };
  struct Observation {
    std::string x;
    std::string u;
    std::string x2;
    std::vector<std::string> ys;
  };

  std::vector<std::string> states;
  std::vector<std::string> actions;
  std::vector<std::string> observations;
  std::vector<std::string> init;
  std::vector<Transition> trans;
  std::vector<Observation> obs;
};

struct Violation {
  std::string message;
  /// The offending tuple, rendered.
  std::string where;
};

/// A finite robot transition system (X, U, f, h, Y, X0). Instances are only
/// produced by validation, so f(x,u) and h(x,u,x') are always nonempty and
/// X0 is a nonempty subset of X.
class RobotTransitionSystem {
 public:
  std::size_t num_states() const { return state_names_.size(); }
  std::size_t num_actions() const { return action_names_.size(); }
  std::size_t num_observations() const { return obs_names_.size(); }

  const std::string& name(StateId x) const { return state_names_[idx(x)]; }
  const std::string& name(ActionId u) const { return action_names_[idx(u)]; }
  const std::string& name(ObsId y) const { return obs_names_[idx(y)]; }
  const std::vector<std::string>& state_names() const { return state_names_; }
  const std::vector<std::string>& action_names() const { return action_names_; }
  const std::vector<std::string>& observation_names() const { return obs_names_; }

  std::optional<StateId> find_state(const std::string& n) const;
  std::optional<ActionId> find_action(const std::string& n) const;
  std::optional<ObsId> find_observation(const std::string& n) const;

  const StateSet& init() const { return init_; }
  bool is_initial(StateId x) const;
  /// f(x, u).
  const StateSet& successors(StateId x, ActionId u) const {
    return succ_[idx(x) * num_actions() + idx(u)];
  }
  /// h(x, u, x'); empty when x' is not in f(x, u).
  const std::vector<ObsId>& observations(StateId x, ActionId u, StateId x2) const;
  bool can_observe(StateId x, ActionId u, StateId x2, ObsId y) const;
  /// F(x, u, y) = { x' in f(x,u) : y in h(x,u,x') }.
  const StateSet& consistent_successors(StateId x, ActionId u, ObsId y) const {
    return consistent_[(idx(x) * num_actions() + idx(u)) * num_observations() + idx(y)];
  }

  // Dense encodings of X×U×Y and U×Y letters.
  std::size_t num_letters() const { return num_states() * num_actions() * num_observations(); }
  std::size_t num_histories() const { return num_actions() * num_observations(); }
  LetterId letter_id(const Letter& l) const {
    return static_cast<LetterId>((idx(l.x) * num_actions() + idx(l.u)) * num_observations() + idx(l.y));
  }
  Letter letter(LetterId id) const;
  LetterId history_id(const History& h) const {
    return static_cast<LetterId>(idx(h.u) * num_observations() + idx(h.y));
  }
  History history(LetterId id) const;
  std::string letter_name(const Letter& l) const;
  std::string history_name(const History& h) const;
  std::vector<std::string> letter_alphabet() const;
  std::vector<std::string> history_alphabet() const;

  RawSystem to_raw() const;

 private:
  friend std::variant<RobotTransitionSystem, std::vector<Violation>> validate_system(const RawSystem&);

  std::vector<std::string> state_names_;
  std::vector<std::string> action_names_;
  std::vector<std::string> obs_names_;
  StateSet init_;
  std::vector<StateSet> succ_;                          // [x*U + u]
  std::vector<std::vector<std::vector<ObsId>>> obs_;    // [x*U + u][k], aligned with succ_
  std::vector<StateSet> consistent_;                    // [(x*U + u)*Y + y]
};

using ValidationResult = std::variant<RobotTransitionSystem, std::vector<Violation>>;

/// Checks every structural invariant and reports all violations at once.
ValidationResult validate_system(const RawSystem& raw);

/// validate_system, throwing std::invalid_argument listing the violations.
RobotTransitionSystem make_system(const RawSystem& raw);

/// Valid identifiers are nonempty runs of [A-Za-z0-9_.+-], so that they can
/// appear in formula atoms and letter names.
bool is_valid_identifier(const std::string& s);

struct TraceCheck {
  bool complete = true;
  /// 1-indexed position of the first violated constraint.
  std::size_t position = 0;
  std::string reason;

  explicit operator bool() const { return complete; }
};

/// Decides membership of a lasso in the set of complete traces of `r`.
TraceCheck is_complete_trace(const RobotTransitionSystem& r, const CompleteLassoTrace& t);

/// Deterministic automaton over X×U×Y letters whose language is exactly the
/// set of complete traces. Each live state records the constraint on the
/// next state that the previous letter imposes, F(x,u,y) (X0 at the start);
/// a rejecting sink absorbs every violation.
BuchiAutomaton omega_safety_automaton(const RobotTransitionSystem& r);

LassoWord encode(const RobotTransitionSystem& r, const CompleteLassoTrace& t);
CompleteLassoTrace decode(const RobotTransitionSystem& r, const LassoWord& w);

struct BeliefSystem {
  RobotTransitionSystem system;
  /// The subset of the original states that each belief state stands for.
  std::vector<StateSet> beliefs;
};

/// The system whose states are the nonempty I-states reachable from X0.
/// Throws ResourceError beyond `cap` beliefs.
BeliefSystem belief_system(const RobotTransitionSystem& r, std::size_t cap = 4096);

/// Random valid system with 1..max_* states, actions and observations.
RobotTransitionSystem random_system(std::uint64_t seed, std::size_t max_states, std::size_t max_actions,
                                    std::size_t max_observations);

class LassoGenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Random complete lasso with the requested prefix and cycle lengths.
/// Throws LassoGenerationError when no cycle of that length closes within
/// the retry bound.
CompleteLassoTrace random_complete_lasso(const RobotTransitionSystem& r, std::uint64_t seed,
                                         std::size_t prefix_len, std::size_t cycle_len);

std::string format_set(const RobotTransitionSystem& r, const StateSet& s);

}  // namespace taskground
