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

#include <memory>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "taskground/buchi.hpp"
#include "taskground/common.hpp"

namespace taskground {

/// Proposition emitted by every grounding at position 1 only.
inline constexpr const char* kStartProp = "@start";

enum class Kind {
  True,
  False,
  Start,
  Atom,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Next,
  Until,
  Release,
  Eventually,
  Always,
  Unless,
};

enum class AtomType { State, Action, Obs };

struct Atom {
  AtomType type = AtomType::State;
  std::string name;

  /// "x:<name>", "u:<name>" or "y:<name>".
  std::string prop() const;

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

bool is_unary(Kind k);
bool is_binary(Kind k);

/// Immutable LTL syntax tree with shared subterms.
class Formula {
 public:
  /// The formula `true`.
  Formula();

  static Formula top();
  static Formula bottom();
  static Formula start();
  static Formula atom(AtomType type, std::string name);
  static Formula unary(Kind k, Formula f);
  static Formula binary(Kind k, Formula a, Formula b);

  Kind kind() const;
  const Atom& atom() const;
  /// Operand of a unary node.
  const Formula& child() const { return lhs(); }
  const Formula& lhs() const;
  const Formula& rhs() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator<(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position);
  /// 0-indexed character offset.
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Grammar, loosest to tightest: <->, ->, |, &, {U W R}, {! X F G}. Binary
/// operators associate to the right. Runs of X/F/G such as `GF` are read as
/// nested unary operators.
Formula parse(const std::string& text);

std::string to_string(const Formula& f);

/// Core kinds only: True, Start, Atom, Not, Or, Next, Until.
Formula normalize(const Formula& f);

/// Negation normal form. Not appears only above Atom or Start; the result
/// uses True, False, Start, Atom, Not, And, Or, Next, Until, Release,
/// Eventually and Always.
Formula nnf(const Formula& f);

/// Proposition names mentioned by f, including kStartProp when `start` occurs.
std::set<std::string> atoms(const Formula& f);
std::size_t depth(const Formula& f);

using PropSet = std::set<std::string>;
using PropLasso = Lasso<PropSet>;

/// <s, i> |= f for i >= 1.
bool evaluate(const PropLasso& s, const Formula& f, std::size_t i = 1);

/// Letters of 2^ap: letter id m is the set { ap[k] : bit k of m }.
std::vector<std::string> proposition_alphabet(const std::vector<std::string>& ap);
/// Letter id of a proposition set; names outside ap are ignored.
LetterId proposition_letter(const PropSet& s, const std::vector<std::string>& ap);
LassoWord encode(const PropLasso& s, const std::vector<std::string>& ap);

/// Büchi automaton over 2^ap accepting { w : <w,1> |= f }. Every atom of f
/// must appear in ap. Throws ResourceError when |ap| exceeds
/// guards.max_propositions or the automaton exceeds guards.automaton_states.
BuchiAutomaton to_buchi(const Formula& f, const std::vector<std::string>& ap, const Guards& guards = {});

/// Random formula of at most the given depth over the given leaves, using
/// every operator kind.
Formula random_formula(std::mt19937_64& rng, std::size_t depth, const std::vector<Formula>& leaves);

}  // namespace taskground
