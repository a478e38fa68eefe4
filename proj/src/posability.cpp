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

#include "taskground/posability.hpp"

#include <deque>
#include <future>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace taskground {

TaskSpec TaskSpec::from_formula(Formula f, Grounding g) {
  TaskSpec s;
  s.formula = std::move(f);
  s.grounding = g;
  return s;
}

TaskSpec TaskSpec::from_automaton(BuchiAutomaton a) {
  TaskSpec s;
  s.automaton = std::move(a);
  return s;
}

void check_spec(const RobotTransitionSystem& r, const TaskSpec& spec) {
  if (spec.formula.has_value() == spec.automaton.has_value())
    throw std::invalid_argument("a task needs exactly one of a formula or an automaton");
  if (spec.automaton) {
    if (spec.automaton->alphabet() != r.letter_alphabet())
      throw std::invalid_argument("task automaton alphabet must be the system's x,u,y letters in canonical order");
    return;
  }
  for (const std::string& p : atoms(*spec.formula)) {
    if (p == kStartProp) continue;
    const char t = p[0];
    const std::string name = p.substr(2);
    const bool state_atom = t == 'x';
    if (spec.grounding == Grounding::ActionObservation && state_atom)
      throw std::invalid_argument("atom '" + p + "' needs a state or istate grounding");
    if (spec.grounding != Grounding::ActionObservation && !state_atom)
      throw std::invalid_argument("atom '" + p + "' needs the ao grounding");
    const bool known = t == 'x' ? r.find_state(name).has_value()
                                : (t == 'u' ? r.find_action(name).has_value() : r.find_observation(name).has_value());
    if (!known) throw std::invalid_argument("atom '" + p + "' names an unknown symbol");
  }
}

std::vector<std::string> spec_propositions(const Formula& f) {
  std::set<std::string> s = atoms(f);
  s.insert(kStartProp);
  return {s.begin(), s.end()};
}

namespace {

BuchiAutomaton formula_task(const RobotTransitionSystem& r, const Formula& f, Grounding g,
                            const BuchiAutomaton& omega, const Guards& guards) {
  const auto ap = spec_propositions(f);
  const BuchiAutomaton a = to_buchi(f, ap, guards);
  const Transducer d = grounding_transducer(r, g, ap, guards);
  return trim(intersect(inverse_image(a, d, r.letter_alphabet()), omega));
}

}  // namespace

BuchiAutomaton task_automaton(const RobotTransitionSystem& r, const TaskSpec& spec, const Guards& guards) {
  check_spec(r, spec);
  const BuchiAutomaton omega = omega_safety_automaton(r);
  if (spec.automaton) return trim(intersect(*spec.automaton, omega));
  return formula_task(r, *spec.formula, spec.grounding, omega, guards);
}

TaskPair task_automata(const RobotTransitionSystem& r, const TaskSpec& spec, const Guards& guards) {
  check_spec(r, spec);
  const BuchiAutomaton omega = omega_safety_automaton(r);
  if (spec.automaton) {
    return {trim(intersect(*spec.automaton, omega)), trim(intersect(complement(*spec.automaton, guards), omega))};
  }
  const Formula& f = *spec.formula;
  return {formula_task(r, f, spec.grounding, omega, guards),
          formula_task(r, Formula::unary(Kind::Not, f), spec.grounding, omega, guards)};
}

WellPosedness is_well_posed(const RobotTransitionSystem& r, const TaskPair& task, CondenserKind kind,
                            const Guards& guards) {
  const BuchiAutomaton& a = task.pos;
  const BuchiAutomaton& b = task.neg;
  if (a.num_letters() != r.num_letters() || b.num_letters() != r.num_letters())
    throw std::invalid_argument("task automata are not over the system's letters");

  // Condenser output of a letter; for I-states it depends on the shared
  // I-state before the letter.
  std::vector<std::uint32_t> update;  // [iota * histories + history] -> iota'
  std::size_t num_istates = 1;
  if (kind == CondenserKind::IState) {
    const auto istates = reachable_istates(r, guards.belief_cap);
    num_istates = istates.size();
    std::map<StateSet, std::uint32_t> ids;
    for (std::size_t k = 0; k < istates.size(); ++k) ids.emplace(istates[k], static_cast<std::uint32_t>(k));
    update.resize(num_istates * r.num_histories());
    for (std::size_t i = 0; i < num_istates; ++i)
      for (LetterId h = 0; h < r.num_histories(); ++h) {
        const History hy = r.history(h);
        update[i * r.num_histories() + h] = ids.at(istate_update(r, istates[i], hy.u, hy.y));
      }
  }
  auto key = [&](LetterId l, std::uint32_t iota) -> std::uint32_t {
    const Letter x = r.letter(l);
    switch (kind) {
      case CondenserKind::State: return idx(x.x);
      case CondenserKind::History: return r.history_id({x.u, x.y});
      case CondenserKind::IState: return update[iota * r.num_histories() + r.history_id({x.u, x.y})];
    }
    return 0;
  };

  struct Node {
    AutState p, q;
    std::uint32_t iota;
    bool operator==(const Node&) const = default;
  };
  struct NodeHash {
    std::size_t operator()(const Node& n) const {
      std::size_t h = n.p;
      hash_combine(h, n.q);
      hash_combine(h, n.iota);
      return h;
    }
  };
  LabeledGraph<std::uint64_t> g;
  g.num_marks = 2;
  std::unordered_map<Node, std::uint32_t, NodeHash> ids;
  std::vector<Node> nodes;
  std::deque<std::uint32_t> queue;
  auto visit = [&](const Node& n) {
    auto [it, inserted] = ids.try_emplace(n, static_cast<std::uint32_t>(nodes.size()));
    if (inserted) {
      if (nodes.size() >= guards.product_states)
        throw ResourceError("pair product exceeds " + std::to_string(guards.product_states) + " states");
      nodes.push_back(n);
      g.add_node((a.accepting(n.p) ? 1u : 0u) | (b.accepting(n.q) ? 2u : 0u));
      queue.push_back(it->second);
    }
    return it->second;
  };
  for (AutState p : a.initial())
    for (AutState q : b.initial()) g.initial.push_back(visit({p, q, 0}));

  std::unordered_map<std::uint32_t, std::vector<const Edge*>> by_key;
  while (!queue.empty()) {
    guards.poll();
    const std::uint32_t id = queue.front();
    queue.pop_front();
    const Node n = nodes[id];
    by_key.clear();
    for (const Edge& e : b.edges(n.q)) by_key[key(e.letter, n.iota)].push_back(&e);
    for (const Edge& e1 : a.edges(n.p)) {
      const std::uint32_t k = key(e1.letter, n.iota);
      auto it = by_key.find(k);
      if (it == by_key.end()) continue;
      const std::uint32_t iota = kind == CondenserKind::IState ? k : 0;
      for (const Edge* e2 : it->second) {
        const std::uint32_t to = visit({e1.to, e2->to, iota});
        g.succ[id].emplace_back(to, (std::uint64_t{e1.letter} << 32) | e2->letter);
      }
    }
  }

  WellPosedness out;
  const auto lasso = find_accepting_lasso(g);
  if (!lasso) return out;
  out.well_posed = false;
  LassoWord w, wbar;
  for (std::uint64_t l : lasso->prefix) {
    w.prefix.push_back(static_cast<LetterId>(l >> 32));
    wbar.prefix.push_back(static_cast<LetterId>(l & 0xffffffffu));
  }
  for (std::uint64_t l : lasso->cycle) {
    w.cycle.push_back(static_cast<LetterId>(l >> 32));
    wbar.cycle.push_back(static_cast<LetterId>(l & 0xffffffffu));
  }
  out.counterexample = Counterexample{decode(r, w), decode(r, wbar)};
  return out;
}

std::string verify_counterexample(const RobotTransitionSystem& r, const TaskSpec& spec, const TaskPair& task,
                                  CondenserKind kind, const Counterexample& c) {
  if (auto t = is_complete_trace(r, c.w); !t) return "w is not a complete trace: " + t.reason;
  if (auto t = is_complete_trace(r, c.wbar); !t) return "wbar is not a complete trace: " + t.reason;
  const LassoWord w = encode(r, c.w), wbar = encode(r, c.wbar);
  if (!member(task.pos, w)) return "w is not accepted by the task automaton";
  if (member(task.pos, wbar)) return "wbar is accepted by the task automaton";
  if (!member(task.neg, wbar)) return "wbar is not accepted by the complement automaton";
  if (spec.formula) {
    if (!evaluate(ground(r, c.w, spec.grounding), *spec.formula)) return "grounded w does not satisfy the formula";
    if (evaluate(ground(r, c.wbar, spec.grounding), *spec.formula)) return "grounded wbar satisfies the formula";
  } else {
    if (!member(*spec.automaton, w)) return "w is not accepted by the raw automaton";
    if (member(*spec.automaton, wbar)) return "wbar is accepted by the raw automaton";
  }
  bool same = false;
  switch (kind) {
    case CondenserKind::State: same = same_word(condense_state(c.w), condense_state(c.wbar)); break;
    case CondenserKind::History: same = same_word(condense_history(c.w), condense_history(c.wbar)); break;
    case CondenserKind::IState: same = same_word(condense_ndet(r, c.w), condense_ndet(r, c.wbar)); break;
  }
  if (!same) return "condenser outputs differ";
  return {};
}

std::string PosabilityReport::profile() const {
  std::string out = "(";
  for (std::size_t k = 0; k < 3; ++k) {
    if (k) out += ',';
    out += bits[k].verdict == Verdict::Yes ? "1" : (bits[k].verdict == Verdict::No ? "0" : "?");
  }
  return out + ")";
}

PosabilityReport posability_profile(const RobotTransitionSystem& r, const TaskSpec& spec, const Guards& guards,
                                    const ProfileOptions& options) {
  PosabilityReport report;
  for (auto& b : report.bits) b.note = "not requested";
  TaskPair task;
  try {
    task = task_automata(r, spec, guards);
  } catch (const ResourceError& e) {
    for (std::size_t k = 0; k < 3; ++k)
      if (options.condensers[k]) report.bits[k].note = e.what();
    return report;
  }
  auto run = [&](CondenserKind kind) {
    BitResult bit;
    try {
      const WellPosedness wp = is_well_posed(r, task, kind, guards);
      bit.verdict = wp.well_posed ? Verdict::Yes : Verdict::No;
      bit.counterexample = wp.counterexample;
    } catch (const ResourceError& e) {
      bit.note = e.what();
    }
    return bit;
  };
  std::array<std::future<BitResult>, 3> pending;
  for (std::size_t k = 0; k < 3; ++k) {
    if (!options.condensers[k]) continue;
    pending[k] = std::async(options.parallel ? std::launch::async : std::launch::deferred, run,
                            static_cast<CondenserKind>(k));
  }
  for (std::size_t k = 0; k < 3; ++k)
    if (pending[k].valid()) report.bits[k] = pending[k].get();
  for (std::size_t k = 0; k < 3; ++k) {
    const auto& bit = report.bits[k];
    if (!bit.counterexample) continue;
    const std::string err = verify_counterexample(r, spec, task, static_cast<CondenserKind>(k), *bit.counterexample);
    if (!err.empty())
      throw std::logic_error("internal error: counterexample for " + to_string(static_cast<CondenserKind>(k)) +
                             " failed verification: " + err);
  }
  return report;
}

BuchiAutomaton rts_product(const BuchiAutomaton& a, const RobotTransitionSystem& r,
                           const std::vector<std::string>& ap) {
  if (a.num_letters() != (std::size_t{1} << ap.size()))
    throw std::invalid_argument("automaton alphabet does not match the proposition list");
  auto state_letter = [&](StateId x, bool first) {
    PropSet p = {"x:" + r.name(x)};
    if (first) p.insert(kStartProp);
    return proposition_letter(p, ap);
  };
  BuchiAutomaton out(r.history_alphabet());
  std::map<std::pair<AutState, StateId>, AutState> ids;
  std::deque<std::pair<AutState, StateId>> queue;
  auto visit = [&](AutState q, StateId x) {
    auto [it, inserted] = ids.try_emplace({q, x}, 0);
    if (inserted) {
      it->second = out.add_state(a.accepting(q), a.state_name(q) + "|" + r.name(x));
      queue.emplace_back(q, x);
    }
    return it->second;
  };
  for (StateId x : r.init())
    for (AutState q0 : a.initial())
      for (AutState q : a.successors(q0, state_letter(x, true))) out.add_initial(visit(q, x));
  while (!queue.empty()) {
    const auto [q, x] = queue.front();
    queue.pop_front();
    const AutState from = ids.at({q, x});
    for (LetterId h = 0; h < r.num_histories(); ++h) {
      const History hy = r.history(h);
      for (StateId x2 : r.consistent_successors(x, hy.u, hy.y))
        for (AutState q2 : a.successors(q, state_letter(x2, false))) out.add_edge(from, h, visit(q2, x2));
    }
  }
  if (out.initial().empty()) return empty_automaton(r.history_alphabet());
  out.finalize();
  return out;
}

std::string to_string(AoVerdict v) {
  switch (v) {
    case AoVerdict::NotPosable: return "not-posable";
    case AoVerdict::Expressible: return "expressible";
    case AoVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

bool is_propositional(const Formula& f) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
    case Kind::Start:
    case Kind::Atom: return true;
    case Kind::Not: return is_propositional(f.child());
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff: return is_propositional(f.lhs()) && is_propositional(f.rhs());
    default: return false;
  }
}

bool has_state_atom(const Formula& f) {
  for (const auto& p : atoms(f))
    if (p.rfind("x:", 0) == 0) return true;
  return false;
}

Formula disjunction(const std::vector<Formula>& terms) {
  if (terms.empty()) return Formula::bottom();
  Formula out = terms.back();
  for (std::size_t k = terms.size() - 1; k-- > 0;) out = Formula::binary(Kind::Or, terms[k], out);
  return out;
}

// Rewrites propositional state conditions as action/observation conditions,
// when every letter that can occur on a complete trace fixes the condition's
// value through (first step, u, y).
class Substitution {
 public:
  explicit Substitution(const RobotTransitionSystem& r) : r_(r) {
    std::vector<bool> reached(r.num_states(), false);
    std::deque<StateId> queue;
    for (StateId x : r.init()) queue.push_back(x);
    std::vector<bool> seen(r.num_states(), false);
    for (StateId x : r.init()) seen[idx(x)] = true;
    while (!queue.empty()) {
      const StateId x = queue.front();
      queue.pop_front();
      for (std::uint32_t u = 0; u < r.num_actions(); ++u)
        for (StateId x2 : r.successors(x, ActionId{u})) {
          reached[idx(x2)] = true;
          if (!seen[idx(x2)]) {
            seen[idx(x2)] = true;
            queue.push_back(x2);
          }
        }
    }
    later_ = reached;
  }

  std::optional<Formula> rewrite(const Formula& f) const {
    if (is_propositional(f)) {
      if (!has_state_atom(f)) return f;
      return replace(f);
    }
    if (is_unary(f.kind())) {
      auto c = rewrite(f.child());
      if (!c) return std::nullopt;
      return Formula::unary(f.kind(), *c);
    }
    auto a = rewrite(f.lhs());
    auto b = rewrite(f.rhs());
    if (!a || !b) return std::nullopt;
    return Formula::binary(f.kind(), *a, *b);
  }

 private:
  enum : std::uint8_t { kUnset, kTrue, kFalse };

  std::optional<Formula> replace(const Formula& beta) const {
    const std::size_t nu = r_.num_actions(), ny = r_.num_observations();
    // table[first][u][y]
    std::vector<std::uint8_t> table(2 * nu * ny, kUnset);
    auto at = [&](int first, std::size_t u, std::size_t y) -> std::uint8_t& { return table[(first * nu + u) * ny + y]; };
    for (int first = 0; first < 2; ++first) {
      for (std::uint32_t x = 0; x < r_.num_states(); ++x) {
        const bool possible = first ? r_.is_initial(StateId{x}) : later_[x];
        if (!possible) continue;
        PropSet p = {"x:" + r_.name(StateId{x})};
        if (first) p.insert(kStartProp);
        const bool v = evaluate(PropLasso{{}, {p}}, beta);
        for (std::uint32_t u = 0; u < nu; ++u)
          for (std::uint32_t y = 0; y < ny; ++y) {
            if (r_.consistent_successors(StateId{x}, ActionId{u}, ObsId{y}).empty()) continue;
            auto& cell = at(first, u, y);
            const std::uint8_t want = v ? kTrue : kFalse;
            if (cell != kUnset && cell != want) return std::nullopt;
            cell = want;
          }
      }
    }
    // Try the coarsest view that determines the value: y alone, u alone,
    // (u, y), then (first, u, y).
    auto consistent = [&](auto&& project, std::size_t buckets) -> std::optional<std::vector<std::uint8_t>> {
      std::vector<std::uint8_t> v(buckets, kUnset);
      for (int first = 0; first < 2; ++first)
        for (std::size_t u = 0; u < nu; ++u)
          for (std::size_t y = 0; y < ny; ++y) {
            const std::uint8_t c = at(first, u, y);
            if (c == kUnset) continue;
            auto& slot = v[project(first, u, y)];
            if (slot != kUnset && slot != c) return std::nullopt;
            slot = c;
          }
      return v;
    };
    auto obs = [&](std::size_t y) { return Formula::atom(AtomType::Obs, r_.name(ObsId{static_cast<std::uint32_t>(y)})); };
    auto act = [&](std::size_t u) {
      return Formula::atom(AtomType::Action, r_.name(ActionId{static_cast<std::uint32_t>(u)}));
    };
    std::vector<Formula> terms;
    if (auto v = consistent([&](int, std::size_t, std::size_t y) { return y; }, ny)) {
      for (std::size_t y = 0; y < ny; ++y)
        if ((*v)[y] == kTrue) terms.push_back(obs(y));
      return disjunction(terms);
    }
    if (auto v = consistent([&](int, std::size_t u, std::size_t) { return u; }, nu)) {
      for (std::size_t u = 0; u < nu; ++u)
        if ((*v)[u] == kTrue) terms.push_back(act(u));
      return disjunction(terms);
    }
    if (auto v = consistent([&](int, std::size_t u, std::size_t y) { return u * ny + y; }, nu * ny)) {
      for (std::size_t u = 0; u < nu; ++u)
        for (std::size_t y = 0; y < ny; ++y)
          if ((*v)[u * ny + y] == kTrue) terms.push_back(Formula::binary(Kind::And, act(u), obs(y)));
      return disjunction(terms);
    }
    std::vector<Formula> phases;
    for (int first = 0; first < 2; ++first) {
      std::vector<Formula> inner;
      for (std::size_t u = 0; u < nu; ++u)
        for (std::size_t y = 0; y < ny; ++y)
          if (at(first, u, y) == kTrue) inner.push_back(Formula::binary(Kind::And, act(u), obs(y)));
      const Formula when = first ? Formula::start() : Formula::unary(Kind::Not, Formula::start());
      phases.push_back(Formula::binary(Kind::And, when, disjunction(inner)));
    }
    return disjunction(phases);
  }

  const RobotTransitionSystem& r_;
  std::vector<bool> later_;
};

}  // namespace

AoResult exists_ao_formula(const RobotTransitionSystem& r, const Formula& psi, const Guards& guards) {
  const TaskSpec spec = TaskSpec::from_formula(psi, Grounding::State);
  const TaskPair task = task_automata(r, spec, guards);
  AoResult out;
  const WellPosedness wp = is_well_posed(r, task, CondenserKind::History, guards);
  if (!wp.well_posed) {
    const std::string err = verify_counterexample(r, spec, task, CondenserKind::History, *wp.counterexample);
    if (!err.empty()) throw std::logic_error("internal error: history counterexample failed verification: " + err);
    out.verdict = AoVerdict::NotPosable;
    out.counterexample = wp.counterexample;
    return out;
  }

  const auto ap = spec_propositions(psi);
  out.product = trim(rts_product(to_buchi(psi, ap, guards), r, ap));
  bool monoid_exhausted = false;
  try {
    const CounterFreeness cf = is_counter_free(*out.product, guards);
    out.monoid_size = cf.monoid_size;
    if (cf.counter_free) {
      out.verdict = AoVerdict::Expressible;
      out.method = "counter-free product";
      return out;
    }
    out.counter = cf.counter;
  } catch (const ResourceError&) {
    monoid_exhausted = true;
  }

  if (auto rewritten = Substitution(r).rewrite(psi)) {
    const TaskPair alt = task_automata(r, TaskSpec::from_formula(*rewritten, Grounding::ActionObservation), guards);
    if (is_empty(intersect(alt.pos, task.neg)) && is_empty(intersect(task.pos, alt.neg))) {
      out.verdict = AoVerdict::Expressible;
      out.witness = *rewritten;
      out.method = "propositional substitution";
      return out;
    }
  }
  out.verdict = AoVerdict::Inconclusive;
  out.method = monoid_exhausted ? "monoid guard exceeded" : "product has a counter";
  return out;
}

ClosureRecord check_istate_closure(const RobotTransitionSystem& r, const TaskSpec& spec, const Guards& guards,
                                   const ProfileOptions& options) {
  ClosureRecord rec;
  rec.report = posability_profile(r, spec, guards, options);
  const Verdict s = rec.report.bits[0].verdict;
  const Verdict a = rec.report.bits[1].verdict;
  const Verdict i = rec.report.bits[2].verdict;
  auto prof = rec.report.profile();
  if (i == Verdict::Yes && a == Verdict::No)
    rec.violations.push_back("istate-posable task that is not ao-posable " + prof);
  if (s == Verdict::Yes && a == Verdict::Yes && i == Verdict::No)
    rec.violations.push_back("state- and ao-posable task that is not istate-posable " + prof);
  if (spec.formula) {
    const Verdict own = rec.report.bit(condenser_of(spec.grounding)).verdict;
    if (own == Verdict::No)
      rec.violations.push_back("formula task is not posable under its own grounding (" + to_string(spec.grounding) +
                               ")");
    if (spec.grounding == Grounding::IState && a == Verdict::No)
      rec.violations.push_back("istate-grounded formula task that is not ao-posable");
  }
  return rec;
}

}  // namespace taskground
