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
#include <string>
#include <vector>

#include "taskground/common.hpp"
#include "taskground/graph.hpp"

namespace taskground {

using LetterId = std::uint32_t;
using AutState = std::uint32_t;
using LassoWord = Lasso<LetterId>;

struct Edge {
  LetterId letter = 0;
  AutState to = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Nondeterministic Büchi automaton over an explicit finite alphabet.
///
/// Letters are dense ids into `alphabet()`, whose entries are display
/// names only. Transitions are stored sparsely per source state, sorted by
/// (letter, target); a missing (state, letter) pair means the empty set.
class BuchiAutomaton {
 public:
  BuchiAutomaton() = default;
  explicit BuchiAutomaton(std::vector<std::string> alphabet) : alphabet_(std::move(alphabet)) {}

  AutState add_state(bool accepting, std::string name = {});
  void add_initial(AutState s);
  void add_edge(AutState from, LetterId letter, AutState to);
  /// Sorts and deduplicates edge lists. Call after bulk construction.
  void finalize();

  std::size_t num_states() const { return out_.size(); }
  std::size_t num_letters() const { return alphabet_.size(); }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::vector<AutState>& initial() const { return initial_; }
  bool accepting(AutState s) const { return accepting_[s]; }
  const std::vector<Edge>& edges(AutState s) const { return out_[s]; }
  const std::string& state_name(AutState s) const { return names_[s]; }
  void set_state_name(AutState s, std::string name) { names_[s] = std::move(name); }
  std::size_t num_edges() const;

  /// Successors of `s` on `letter` (edges must be finalized).
  std::vector<AutState> successors(AutState s, LetterId letter) const;
  bool all_accepting() const;

 private:
  std::vector<std::string> alphabet_;
  std::vector<std::vector<Edge>> out_;
  std::vector<bool> accepting_;
  std::vector<std::string> names_;
  std::vector<AutState> initial_;
};

/// Automaton accepting every word (one accepting state, self-loop on all letters).
BuchiAutomaton universal_automaton(std::vector<std::string> alphabet);
/// Automaton accepting nothing.
BuchiAutomaton empty_automaton(std::vector<std::string> alphabet);

/// Deterministic letter-to-letter transducer with an explicit step table.
/// Input letters are ids of some input alphabet; outputs are ids of
/// `output_names`.
struct Transducer {
  struct Step {
    std::uint32_t next = 0;
    LetterId output = 0;
  };

  std::size_t input_size = 0;
  std::size_t num_states = 0;
  std::uint32_t initial = 0;
  std::vector<Step> table;  // [state * input_size + letter]
  std::vector<std::string> output_names;
  std::vector<std::string> state_names;

  const Step& step(std::uint32_t state, LetterId letter) const {
    return table[static_cast<std::size_t>(state) * input_size + letter];
  }
  /// Output word of the transducer on `w`, rolled into a lasso.
  LassoWord apply(const LassoWord& w) const;
};

bool member(const BuchiAutomaton& a, const LassoWord& w);

/// L(a) ∩ L(b). Safety operands (every useful state accepting) are combined
/// without the two-track flag.
BuchiAutomaton intersect(const BuchiAutomaton& a, const BuchiAutomaton& b);

/// Rank-based complement restricted to tight level rankings. Throws
/// ResourceError if `a` has more than `guards.complement_states` states
/// after trimming, or the result exceeds `guards.automaton_states`.
BuchiAutomaton complement(const BuchiAutomaton& a, const Guards& guards = {});

/// Empty iff nullopt; otherwise an accepted lasso.
std::optional<LassoWord> find_accepted_word(const BuchiAutomaton& a);
inline bool is_empty(const BuchiAutomaton& a) { return !find_accepted_word(a).has_value(); }

struct InclusionResult {
  bool holds = true;
  /// Word in L(a) \ L(b) when inclusion fails.
  std::optional<LassoWord> counterexample;
};

InclusionResult includes(const BuchiAutomaton& a, const BuchiAutomaton& b, const Guards& guards = {});
bool equivalent(const BuchiAutomaton& a, const BuchiAutomaton& b, const Guards& guards = {});

/// { w : d(w) ∈ L(a) } over d's input alphabet.
BuchiAutomaton inverse_image(const BuchiAutomaton& a, const Transducer& d,
                             std::vector<std::string> input_alphabet);
/// { d(w) : w ∈ L(a) } over d's output alphabet.
BuchiAutomaton image(const BuchiAutomaton& a, const Transducer& d);

/// Removes states that are unreachable or cannot reach an accepting cycle.
/// An automaton with empty language keeps a single dead initial state.
BuchiAutomaton trim(const BuchiAutomaton& a);

struct CounterWitness {
  std::vector<LetterId> word;
  std::size_t power = 0;
  /// q_0 ... q_{n-1} with q_k --word--> q_{k+1 mod n}.
  std::vector<AutState> states;
};

struct CounterFreeness {
  bool counter_free = true;
  std::optional<CounterWitness> counter;
  std::size_t monoid_size = 0;
};

/// Structural counter check on the transition monoid: a counter is a word
/// u, a state q and n >= 2 with q --u^n--> q but not q --u--> q.
CounterFreeness is_counter_free(const BuchiAutomaton& a, const Guards& guards = {});

/// GraphViz text with states in index order.
std::string to_dot(const BuchiAutomaton& a, const std::string& name = "A");

/// Accepting lasso search over the product of `a` and the lasso automaton
/// of `w`; exposed for tests of the graph engine.
LabeledGraph<LetterId> lasso_product(const BuchiAutomaton& a, const LassoWord& w);

}  // namespace taskground
