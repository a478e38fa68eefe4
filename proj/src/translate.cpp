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

// Tableau translation. Obligation sets of NNF subformulas become states;
// each state expands into covers (literal constraints, next obligations,
// pending untils). Untils give a generalized acceptance condition on
// transitions, which is degeneralized with a level counter.

#include <deque>
#include <map>
#include <tuple>

#include "taskground/ltl.hpp"

namespace taskground {

namespace {

enum class Op : std::uint8_t { True, False, Lit, And, Or, Next, Until, Release };

struct Term {
  Op op = Op::True;
  std::uint32_t a = 0;  // literal: proposition index; otherwise left operand
  std::uint32_t b = 0;  // literal: 1 if positive; otherwise right operand

  friend auto operator<=>(const Term&, const Term&) = default;
};

class Closure {
 public:
  explicit Closure(const std::vector<std::string>& ap) : ap_(ap) {}

  std::uint32_t build(const Formula& f) {
    switch (f.kind()) {
      case Kind::True: return intern({Op::True, 0, 0});
      case Kind::False: return intern({Op::False, 0, 0});
      case Kind::Start: return intern({Op::Lit, prop(kStartProp), 1});
      case Kind::Atom: return intern({Op::Lit, prop(f.atom().prop()), 1});
      case Kind::Not: {
        const Formula& g = f.child();
        const std::string p = g.kind() == Kind::Start ? std::string(kStartProp) : g.atom().prop();
        return intern({Op::Lit, prop(p), 0});
      }
      case Kind::Next: return intern({Op::Next, build(f.child()), 0});
      case Kind::Eventually: return intern({Op::Until, build(Formula::top()), build(f.child())});
      case Kind::Always: return intern({Op::Release, build(Formula::bottom()), build(f.child())});
      case Kind::And: return intern({Op::And, build(f.lhs()), build(f.rhs())});
      case Kind::Or: return intern({Op::Or, build(f.lhs()), build(f.rhs())});
      case Kind::Until: return intern({Op::Until, build(f.lhs()), build(f.rhs())});
      case Kind::Release: return intern({Op::Release, build(f.lhs()), build(f.rhs())});
      default: throw std::logic_error("translation expects negation normal form");
    }
  }

  const Term& term(std::uint32_t id) const { return terms_[id]; }
  /// Acceptance index of an until term.
  std::uint32_t until_index(std::uint32_t id) const { return until_index_.at(id); }
  std::size_t num_untils() const { return until_index_.size(); }

 private:
  std::uint32_t prop(const std::string& p) const {
    for (std::size_t k = 0; k < ap_.size(); ++k)
      if (ap_[k] == p) return static_cast<std::uint32_t>(k);
    throw std::invalid_argument("proposition '" + p + "' is not in the alphabet");
  }

  std::uint32_t intern(const Term& t) {
    auto [it, inserted] = ids_.try_emplace(t, static_cast<std::uint32_t>(terms_.size()));
    if (inserted) {
      terms_.push_back(t);
      if (t.op == Op::Until) {
        const auto k = static_cast<std::uint32_t>(until_index_.size());
        until_index_.emplace(it->second, k);
      }
    }
    return it->second;
  }

  const std::vector<std::string>& ap_;
  std::vector<Term> terms_;
  std::map<Term, std::uint32_t> ids_;
  std::map<std::uint32_t, std::uint32_t> until_index_;
};

bool is(const Formula& f, Kind k) { return f.kind() == k; }

// Constant propagation and idempotence on negation normal form.
Formula simplify(const Formula& f) {
  const Formula T = Formula::top(), B = Formula::bottom();
  switch (f.kind()) {
    case Kind::Next: {
      Formula a = simplify(f.child());
      if (is(a, Kind::True) || is(a, Kind::False)) return a;
      return Formula::unary(Kind::Next, std::move(a));
    }
    case Kind::Eventually: {
      Formula a = simplify(f.child());
      if (is(a, Kind::True) || is(a, Kind::False) || is(a, Kind::Eventually)) return a;
      // F G F a = G F a.
      if (is(a, Kind::Always) && is(a.child(), Kind::Eventually)) return a;
      return Formula::unary(Kind::Eventually, std::move(a));
    }
    case Kind::Always: {
      Formula a = simplify(f.child());
      if (is(a, Kind::True) || is(a, Kind::False) || is(a, Kind::Always)) return a;
      // G F G a = F G a.
      if (is(a, Kind::Eventually) && is(a.child(), Kind::Always)) return a;
      return Formula::unary(Kind::Always, std::move(a));
    }
    case Kind::And: {
      Formula a = simplify(f.lhs()), b = simplify(f.rhs());
      if (is(a, Kind::False) || is(b, Kind::False)) return B;
      if (is(a, Kind::True) || a == b) return b;
      if (is(b, Kind::True)) return a;
      return Formula::binary(Kind::And, std::move(a), std::move(b));
    }
    case Kind::Or: {
      Formula a = simplify(f.lhs()), b = simplify(f.rhs());
      if (is(a, Kind::True) || is(b, Kind::True)) return T;
      if (is(a, Kind::False) || a == b) return b;
      if (is(b, Kind::False)) return a;
      return Formula::binary(Kind::Or, std::move(a), std::move(b));
    }
    case Kind::Until: {
      Formula a = simplify(f.lhs()), b = simplify(f.rhs());
      if (is(b, Kind::True) || is(b, Kind::False) || is(a, Kind::False) || a == b) return b;
      if (is(a, Kind::True)) return simplify(Formula::unary(Kind::Eventually, std::move(b)));
      return Formula::binary(Kind::Until, std::move(a), std::move(b));
    }
    case Kind::Release: {
      Formula a = simplify(f.lhs()), b = simplify(f.rhs());
      if (is(b, Kind::True) || is(b, Kind::False) || is(a, Kind::True) || a == b) return b;
      if (is(a, Kind::False)) return simplify(Formula::unary(Kind::Always, std::move(b)));
      return Formula::binary(Kind::Release, std::move(a), std::move(b));
    }
    default: return f;
  }
}

using TermSet = std::vector<std::uint32_t>;  // sorted

struct Cover {
  std::uint32_t pos = 0;
  std::uint32_t neg = 0;
  TermSet next;
  std::uint64_t pending = 0;  // bit per until index

  friend auto operator<=>(const Cover&, const Cover&) = default;
};

void insert_sorted(TermSet& s, std::uint32_t v) {
  auto it = std::lower_bound(s.begin(), s.end(), v);
  if (it == s.end() || *it != v) s.insert(it, v);
}

class Expander {
 public:
  explicit Expander(const Closure& c) : c_(c) {}

  std::vector<Cover> expand(const TermSet& obligations) {
    out_.clear();
    std::vector<std::uint32_t> todo(obligations.begin(), obligations.end());
    rec(todo, {}, Cover{});
    std::sort(out_.begin(), out_.end());
    out_.erase(std::unique(out_.begin(), out_.end()), out_.end());
    return out_;
  }

 private:
  void rec(std::vector<std::uint32_t> todo, TermSet done, Cover cover) {
    while (!todo.empty()) {
      const std::uint32_t id = todo.back();
      todo.pop_back();
      if (std::binary_search(done.begin(), done.end(), id)) continue;
      insert_sorted(done, id);
      const Term& t = c_.term(id);
      switch (t.op) {
        case Op::True: break;
        case Op::False: return;
        case Op::Lit: {
          const std::uint32_t bit = 1u << t.a;
          (t.b ? cover.pos : cover.neg) |= bit;
          if (cover.pos & cover.neg) return;
          break;
        }
        case Op::And:
          todo.push_back(t.a);
          todo.push_back(t.b);
          break;
        case Op::Next: insert_sorted(cover.next, t.a); break;
        case Op::Or: {
          auto left = todo;
          left.push_back(t.a);
          rec(std::move(left), done, cover);
          todo.push_back(t.b);
          break;
        }
        case Op::Until: {
          // Fulfil now, or hold the left side and postpone.
          auto now = todo;
          now.push_back(t.b);
          rec(std::move(now), done, cover);
          todo.push_back(t.a);
          insert_sorted(cover.next, id);
          cover.pending |= std::uint64_t{1} << c_.until_index(id);
          break;
        }
        case Op::Release: {
          // b holds now, and either a holds now or the release continues.
          auto now = todo;
          now.push_back(t.b);
          now.push_back(t.a);
          rec(std::move(now), done, cover);
          todo.push_back(t.b);
          insert_sorted(cover.next, id);
          break;
        }
      }
    }
    out_.push_back(std::move(cover));
  }

  const Closure& c_;
  std::vector<Cover> out_;
};

}  // namespace

BuchiAutomaton to_buchi(const Formula& f, const std::vector<std::string>& ap, const Guards& guards) {
  if (ap.size() > guards.max_propositions || ap.size() > 31)
    throw ResourceError("formula alphabet has " + std::to_string(ap.size()) + " propositions, guard is " +
                        std::to_string(guards.max_propositions));
  Closure closure(ap);
  const std::uint32_t root = closure.build(simplify(nnf(f)));
  const std::size_t k = closure.num_untils();
  if (k > 63) throw ResourceError("too many until subformulas");
  const std::uint32_t full = ap.size() == 0 ? 0u : ((1u << ap.size()) - 1u);

  BuchiAutomaton out(proposition_alphabet(ap));
  std::map<std::pair<TermSet, std::size_t>, AutState> ids;
  std::deque<std::pair<TermSet, std::size_t>> queue;
  std::map<TermSet, std::vector<Cover>> covers;
  Expander expander(closure);
  auto state_of = [&](const TermSet& s, std::size_t level) {
    auto [it, inserted] = ids.try_emplace({s, level}, 0);
    if (inserted) {
      if (ids.size() > guards.automaton_states)
        throw ResourceError("formula automaton exceeds " + std::to_string(guards.automaton_states) + " states");
      it->second = out.add_state(level == k);
      queue.emplace_back(s, level);
    }
    return it->second;
  };
  out.add_initial(state_of({root}, 0));
  while (!queue.empty()) {
    guards.poll();
    auto [s, level] = queue.front();
    queue.pop_front();
    const AutState from = ids.at({s, level});
    auto cit = covers.find(s);
    if (cit == covers.end()) cit = covers.emplace(s, expander.expand(s)).first;
    for (const Cover& c : cit->second) {
      // Advance the level over every until mark this transition satisfies.
      std::size_t next_level = level == k ? 0 : level;
      while (next_level < k && !(c.pending >> next_level & 1u)) ++next_level;
      const AutState to = state_of(c.next, next_level);
      const std::uint32_t free = full & ~(c.pos | c.neg);
      // Enumerate every subset of the unconstrained propositions.
      for (std::uint32_t sub = free;; sub = (sub - 1) & free) {
        out.add_edge(from, c.pos | sub, to);
        if (sub == 0) break;
      }
    }
  }
  out.finalize();
  return trim(out);
}

}  // namespace taskground
