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

#include "taskground/buchi.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <tuple>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace taskground {

AutState BuchiAutomaton::add_state(bool accepting, std::string name) {
  out_.emplace_back();
  accepting_.push_back(accepting);
  if (name.empty()) name = std::to_string(out_.size() - 1);
  names_.push_back(std::move(name));
  return static_cast<AutState>(out_.size() - 1);
}

void BuchiAutomaton::add_initial(AutState s) {
  if (std::find(initial_.begin(), initial_.end(), s) == initial_.end()) initial_.push_back(s);
}

void BuchiAutomaton::add_edge(AutState from, LetterId letter, AutState to) {
  out_[from].push_back(Edge{letter, to});
}

void BuchiAutomaton::finalize() {
  for (auto& edges : out_) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }
  std::sort(initial_.begin(), initial_.end());
}

std::size_t BuchiAutomaton::num_edges() const {
  std::size_t n = 0;
  for (const auto& e : out_) n += e.size();
  return n;
}

std::vector<AutState> BuchiAutomaton::successors(AutState s, LetterId letter) const {
  const auto& edges = out_[s];
  auto lo = std::lower_bound(edges.begin(), edges.end(), Edge{letter, 0});
  std::vector<AutState> result;
  for (; lo != edges.end() && lo->letter == letter; ++lo) result.push_back(lo->to);
  return result;
}

bool BuchiAutomaton::all_accepting() const {
  return std::all_of(accepting_.begin(), accepting_.end(), [](bool b) { return b; });
}

BuchiAutomaton universal_automaton(std::vector<std::string> alphabet) {
  BuchiAutomaton a(std::move(alphabet));
  const AutState s = a.add_state(true);
  a.add_initial(s);
  for (LetterId l = 0; l < a.num_letters(); ++l) a.add_edge(s, l, s);
  a.finalize();
  return a;
}

BuchiAutomaton empty_automaton(std::vector<std::string> alphabet) {
  BuchiAutomaton a(std::move(alphabet));
  a.add_initial(a.add_state(false));
  a.finalize();
  return a;
}

LassoWord Transducer::apply(const LassoWord& w) const {
  return run_on_lasso(w, initial, [this](std::uint32_t& s, LetterId l) {
    const Step& st = step(s, l);
    s = st.next;
    return st.output;
  });
}

// -- membership and emptiness ------------------------------------------------

LabeledGraph<LetterId> lasso_product(const BuchiAutomaton& a, const LassoWord& w) {
  if (w.cycle.empty()) throw std::invalid_argument("lasso word with empty cycle");
  const std::size_t n = w.span();
  LabeledGraph<LetterId> g;
  g.num_marks = 1;
  for (AutState q = 0; q < a.num_states(); ++q)
    for (std::size_t p = 0; p < n; ++p) g.add_node(a.accepting(q) ? 1u : 0u);
  auto node = [n](AutState q, std::size_t p) { return static_cast<std::uint32_t>(q * n + p); };
  for (AutState q = 0; q < a.num_states(); ++q) {
    for (std::size_t p = 0; p < n; ++p) {
      const LetterId l = w.at(p + 1);
      const std::size_t next = p + 1 < n ? p + 1 : w.prefix.size();
      for (AutState r : a.successors(q, l)) g.succ[node(q, p)].emplace_back(node(r, next), l);
    }
  }
  for (AutState q : a.initial()) g.initial.push_back(node(q, 0));
  return g;
}

bool member(const BuchiAutomaton& a, const LassoWord& w) {
  return find_accepting_lasso(lasso_product(a, w)).has_value();
}

namespace {

LabeledGraph<LetterId> as_graph(const BuchiAutomaton& a) {
  LabeledGraph<LetterId> g;
  g.num_marks = 1;
  for (AutState q = 0; q < a.num_states(); ++q) {
    g.add_node(a.accepting(q) ? 1u : 0u);
    for (const Edge& e : a.edges(q)) g.succ[q].emplace_back(e.to, e.letter);
  }
  g.initial = a.initial();
  return g;
}

}  // namespace

std::optional<LassoWord> find_accepted_word(const BuchiAutomaton& a) {
  auto lasso = find_accepting_lasso(as_graph(a));
  if (!lasso) return std::nullopt;
  return LassoWord{std::move(lasso->prefix), std::move(lasso->cycle)};
}

BuchiAutomaton trim(const BuchiAutomaton& a) {
  const auto g = as_graph(a);
  std::uint32_t num_sccs = 0;
  const auto comp = detail::scc_ids(g, num_sccs);
  std::vector<bool> good_scc(num_sccs, false);
  std::vector<bool> has_acc(num_sccs, false), nontrivial(num_sccs, false);
  for (AutState q = 0; q < a.num_states(); ++q) {
    if (comp[q] == detail::kNone) continue;
    if (a.accepting(q)) has_acc[comp[q]] = true;
    for (const Edge& e : a.edges(q))
      if (comp[e.to] == comp[q]) nontrivial[comp[q]] = true;
  }
  for (std::uint32_t c = 0; c < num_sccs; ++c) good_scc[c] = has_acc[c] && nontrivial[c];

  std::vector<std::vector<AutState>> pred(a.num_states());
  for (AutState q = 0; q < a.num_states(); ++q)
    for (const Edge& e : a.edges(q)) pred[e.to].push_back(q);
  std::vector<bool> useful(a.num_states(), false);
  std::deque<AutState> queue;
  for (AutState q = 0; q < a.num_states(); ++q) {
    if (comp[q] != detail::kNone && good_scc[comp[q]]) {
      useful[q] = true;
      queue.push_back(q);
    }
  }
  while (!queue.empty()) {
    const AutState q = queue.front();
    queue.pop_front();
    for (AutState p : pred[q]) {
      if (!useful[p] && comp[p] != detail::kNone) {
        useful[p] = true;
        queue.push_back(p);
      }
    }
  }

  BuchiAutomaton out(a.alphabet());
  std::vector<AutState> remap(a.num_states(), detail::kNone);
  for (AutState q = 0; q < a.num_states(); ++q)
    if (useful[q]) remap[q] = out.add_state(a.accepting(q), a.state_name(q));
  for (AutState q = 0; q < a.num_states(); ++q) {
    if (!useful[q]) continue;
    for (const Edge& e : a.edges(q))
      if (useful[e.to]) out.add_edge(remap[q], e.letter, remap[e.to]);
  }
  for (AutState q : a.initial())
    if (useful[q]) out.add_initial(remap[q]);
  if (out.initial().empty()) return empty_automaton(a.alphabet());
  out.finalize();
  return out;
}

// -- products ----------------------------------------------------------------

namespace {

/// Interning table from composite keys to dense automaton states.
template <class Key, class Hash = std::hash<Key>>
class StateTable {
 public:
  /// Returns (id, inserted).
  std::pair<AutState, bool> intern(const Key& k, std::size_t limit) {
    auto [it, inserted] = ids_.try_emplace(k, static_cast<AutState>(keys_.size()));
    if (inserted) {
      if (keys_.size() >= limit) throw ResourceError("product automaton exceeds state guard");
      keys_.push_back(k);
    }
    return {it->second, inserted};
  }
  const Key& key(AutState s) const { return keys_[s]; }
  std::size_t size() const { return keys_.size(); }

 private:
  std::unordered_map<Key, AutState, Hash> ids_;
  std::vector<Key> keys_;
};

struct TripleHash {
  std::size_t operator()(const std::tuple<AutState, AutState, std::uint8_t>& t) const {
    std::size_t h = std::get<0>(t);
    hash_combine(h, std::get<1>(t));
    hash_combine(h, std::get<2>(t));
    return h;
  }
};

void require_same_alphabet(const BuchiAutomaton& a, const BuchiAutomaton& b) {
  if (a.num_letters() != b.num_letters())
    throw std::invalid_argument("automata over different alphabets");
}

}  // namespace

BuchiAutomaton intersect(const BuchiAutomaton& a_in, const BuchiAutomaton& b_in) {
  require_same_alphabet(a_in, b_in);
  const BuchiAutomaton a = trim(a_in);
  const BuchiAutomaton b = trim(b_in);
  // Track 0 waits for an accepting a-state, track 1 for an accepting b-state.
  // With a safety operand only the other operand's acceptance matters.
  const bool a_safe = a.all_accepting();
  const bool b_safe = b.all_accepting();
  using Key = std::tuple<AutState, AutState, std::uint8_t>;
  StateTable<Key, TripleHash> table;
  BuchiAutomaton out(a.alphabet());
  std::deque<AutState> queue;
  auto is_acc = [&](const Key& k) {
    const auto [p, q, track] = k;
    if (a_safe) return b.accepting(q);
    if (b_safe) return a.accepting(p);
    return track == 0 && a.accepting(p);
  };
  auto visit = [&](const Key& k) {
    auto [id, inserted] = table.intern(k, std::size_t(-1));
    if (inserted) {
      out.add_state(is_acc(k), a.state_name(std::get<0>(k)) + "|" + b.state_name(std::get<1>(k)) +
                                   (a_safe || b_safe ? "" : "|" + std::to_string(std::get<2>(k))));
      queue.push_back(id);
    }
    return id;
  };
  for (AutState p : a.initial())
    for (AutState q : b.initial()) out.add_initial(visit({p, q, 0}));
  while (!queue.empty()) {
    const AutState s = queue.front();
    queue.pop_front();
    const auto [p, q, track] = table.key(s);
    std::uint8_t next_track = track;
    if (!a_safe && !b_safe) {
      if (track == 0 && a.accepting(p)) next_track = 1;
      else if (track == 1 && b.accepting(q)) next_track = 0;
    }
    const auto& ea = a.edges(p);
    const auto& eb = b.edges(q);
    std::size_t i = 0, j = 0;
    while (i < ea.size() && j < eb.size()) {
      if (ea[i].letter < eb[j].letter) {
        ++i;
      } else if (eb[j].letter < ea[i].letter) {
        ++j;
      } else {
        const LetterId l = ea[i].letter;
        std::size_t j_end = j;
        while (j_end < eb.size() && eb[j_end].letter == l) ++j_end;
        for (; i < ea.size() && ea[i].letter == l; ++i)
          for (std::size_t k = j; k < j_end; ++k) out.add_edge(s, l, visit({ea[i].to, eb[k].to, next_track}));
        j = j_end;
      }
    }
  }
  out.finalize();
  return out;
}

BuchiAutomaton inverse_image(const BuchiAutomaton& a, const Transducer& d,
                             std::vector<std::string> input_alphabet) {
  if (d.output_names.size() != a.num_letters())
    throw std::invalid_argument("transducer outputs do not match automaton alphabet");
  if (input_alphabet.size() != d.input_size)
    throw std::invalid_argument("input alphabet does not match transducer");
  using Key = std::pair<std::uint32_t, AutState>;
  struct PairHash {
    std::size_t operator()(const Key& k) const {
      std::size_t h = k.first;
      hash_combine(h, k.second);
      return h;
    }
  };
  StateTable<Key, PairHash> table;
  BuchiAutomaton out(std::move(input_alphabet));
  std::deque<AutState> queue;
  auto visit = [&](const Key& k) {
    auto [id, inserted] = table.intern(k, std::size_t(-1));
    if (inserted) {
      out.add_state(a.accepting(k.second), d.state_names.empty()
                                               ? std::to_string(k.first) + "|" + a.state_name(k.second)
                                               : d.state_names[k.first] + "|" + a.state_name(k.second));
      queue.push_back(id);
    }
    return id;
  };
  for (AutState q : a.initial()) out.add_initial(visit({d.initial, q}));
  while (!queue.empty()) {
    const AutState s = queue.front();
    queue.pop_front();
    const auto [ds, q] = table.key(s);
    for (LetterId sigma = 0; sigma < d.input_size; ++sigma) {
      const auto& st = d.step(ds, sigma);
      for (AutState r : a.successors(q, st.output)) out.add_edge(s, sigma, visit({st.next, r}));
    }
  }
  out.finalize();
  return out;
}

BuchiAutomaton image(const BuchiAutomaton& a, const Transducer& d) {
  if (d.input_size != a.num_letters())
    throw std::invalid_argument("transducer inputs do not match automaton alphabet");
  using Key = std::pair<AutState, std::uint32_t>;
  struct PairHash {
    std::size_t operator()(const Key& k) const {
      std::size_t h = k.first;
      hash_combine(h, k.second);
      return h;
    }
  };
  StateTable<Key, PairHash> table;
  BuchiAutomaton out(d.output_names);
  std::deque<AutState> queue;
  auto visit = [&](const Key& k) {
    auto [id, inserted] = table.intern(k, std::size_t(-1));
    if (inserted) {
      out.add_state(a.accepting(k.first), a.state_name(k.first) + "|" + std::to_string(k.second));
      queue.push_back(id);
    }
    return id;
  };
  for (AutState q : a.initial()) out.add_initial(visit({q, d.initial}));
  while (!queue.empty()) {
    const AutState s = queue.front();
    queue.pop_front();
    const auto [q, ds] = table.key(s);
    for (const Edge& e : a.edges(q)) {
      const auto& st = d.step(ds, e.letter);
      out.add_edge(s, st.output, visit({e.to, st.next}));
    }
  }
  out.finalize();
  return out;
}

// -- complementation ---------------------------------------------------------
//
// Two-phase construction: a subset phase, then a nondeterministic switch to
// tight level rankings (ranks on the current subset, accepting states even,
// odd ranks 1..r all present for the odd maximum r). Accepting states are
// the ranking states whose breakpoint set O is empty.

namespace {

constexpr std::uint8_t kNoRank = 0xff;

struct RankState {
  std::uint8_t phase = 0;  // 0 = subset, 1 = ranking
  std::uint32_t subset = 0;
  std::uint32_t breakpoint = 0;
  std::vector<std::uint8_t> rank;

  bool operator==(const RankState&) const = default;
};

struct RankStateHash {
  std::size_t operator()(const RankState& s) const {
    std::size_t h = s.phase;
    hash_combine(h, s.subset);
    hash_combine(h, s.breakpoint);
    for (auto r : s.rank) hash_combine(h, r);
    return h;
  }
};

bool is_tight(const std::vector<std::uint8_t>& rank, std::uint32_t subset) {
  if (subset == 0) return true;
  int max_rank = -1;
  std::uint64_t seen = 0;
  for (std::size_t q = 0; q < rank.size(); ++q) {
    if (!(subset >> q & 1u)) continue;
    max_rank = std::max<int>(max_rank, rank[q]);
    seen |= std::uint64_t{1} << rank[q];
  }
  if (max_rank % 2 == 0) return false;
  for (int r = 1; r <= max_rank; r += 2)
    if (!(seen >> r & 1u)) return false;
  return true;
}

/// Enumerates tight rankings on `subset` bounded pointwise by `bound`.
void enumerate_rankings(const std::vector<std::uint8_t>& bound, std::uint32_t subset,
                        std::uint32_t accepting, std::vector<std::uint8_t>& cur, std::size_t q,
                        std::vector<std::vector<std::uint8_t>>& out) {
  const std::size_t n = bound.size();
  if (q == n) {
    if (is_tight(cur, subset)) out.push_back(cur);
    return;
  }
  if (!(subset >> q & 1u)) {
    cur[q] = kNoRank;
    enumerate_rankings(bound, subset, accepting, cur, q + 1, out);
    return;
  }
  const bool acc = accepting >> q & 1u;
  for (int r = 0; r <= bound[q]; ++r) {
    if (acc && r % 2 == 1) continue;
    cur[q] = static_cast<std::uint8_t>(r);
    enumerate_rankings(bound, subset, accepting, cur, q + 1, out);
  }
}

}  // namespace

BuchiAutomaton complement(const BuchiAutomaton& a_in, const Guards& guards) {
  const BuchiAutomaton a = trim(a_in);
  const std::size_t n = a.num_states();
  if (n > guards.complement_states || n > 31)
    throw ResourceError("complementation input has " + std::to_string(n) +
                        " states, above the guard of " + std::to_string(guards.complement_states) +
                        "; supply a smaller or deterministic automaton");
  const std::size_t letters = a.num_letters();
  std::vector<std::uint32_t> succ(n * letters, 0);
  std::uint32_t accepting = 0;
  for (AutState q = 0; q < n; ++q) {
    if (a.accepting(q)) accepting |= 1u << q;
    for (const Edge& e : a.edges(q)) succ[q * letters + e.letter] |= 1u << e.to;
  }
  auto post = [&](std::uint32_t set, LetterId l) {
    std::uint32_t r = 0;
    for (std::size_t q = 0; q < n; ++q)
      if (set >> q & 1u) r |= succ[q * letters + l];
    return r;
  };
  std::uint32_t init = 0;
  for (AutState q : a.initial()) init |= 1u << q;

  StateTable<RankState, RankStateHash> table;
  BuchiAutomaton out(a.alphabet());
  std::deque<AutState> queue;
  auto visit = [&](const RankState& k) {
    auto [id, inserted] = table.intern(k, guards.automaton_states);
    if (inserted) {
      out.add_state(k.phase == 1 && k.breakpoint == 0);
      queue.push_back(id);
    }
    return id;
  };
  out.add_initial(visit(RankState{0, init, 0, {}}));
  std::vector<std::uint8_t> cur(n, kNoRank);
  std::vector<std::vector<std::uint8_t>> rankings;
  while (!queue.empty()) {
    guards.poll();
    const AutState s = queue.front();
    queue.pop_front();
    const RankState st = table.key(s);
    for (LetterId l = 0; l < letters; ++l) {
      const std::uint32_t next = post(st.subset, l);
      std::vector<std::uint8_t> bound(n, 0);
      if (st.phase == 0) {
        out.add_edge(s, l, visit(RankState{0, next, 0, {}}));
        const int cap = 2 * std::popcount(next) - 1;
        for (std::size_t q = 0; q < n; ++q) bound[q] = static_cast<std::uint8_t>(std::max(cap, 0));
      } else {
        std::fill(bound.begin(), bound.end(), std::uint8_t{0xfe});
        for (std::size_t q = 0; q < n; ++q) {
          if (!(st.subset >> q & 1u)) continue;
          const std::uint32_t targets = succ[q * letters + l];
          for (std::size_t r = 0; r < n; ++r)
            if (targets >> r & 1u) bound[r] = std::min(bound[r], st.rank[q]);
        }
      }
      rankings.clear();
      enumerate_rankings(bound, next, accepting, cur, 0, rankings);
      for (auto& rk : rankings) {
        std::uint32_t even = 0;
        for (std::size_t q = 0; q < n; ++q)
          if ((next >> q & 1u) && rk[q] % 2 == 0) even |= 1u << q;
        std::uint32_t bp = even;
        if (st.phase == 1 && st.breakpoint != 0) bp = post(st.breakpoint, l) & even;
        if (st.phase == 0) bp = 0;
        out.add_edge(s, l, visit(RankState{1, next, bp, std::move(rk)}));
      }
    }
  }
  out.finalize();
  return trim(out);
}

InclusionResult includes(const BuchiAutomaton& a, const BuchiAutomaton& b, const Guards& guards) {
  require_same_alphabet(a, b);
  auto word = find_accepted_word(intersect(a, complement(b, guards)));
  if (!word) return {};
  return InclusionResult{false, std::move(word)};
}

bool equivalent(const BuchiAutomaton& a, const BuchiAutomaton& b, const Guards& guards) {
  return includes(a, b, guards).holds && includes(b, a, guards).holds;
}

// -- counter-freeness --------------------------------------------------------

namespace {

class BoolMatrix {
 public:
  explicit BoolMatrix(std::size_t n = 0) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  void set(std::size_t r, std::size_t c) { bits_[r * words_ + c / 64] |= std::uint64_t{1} << (c % 64); }
  bool get(std::size_t r, std::size_t c) const { return bits_[r * words_ + c / 64] >> (c % 64) & 1u; }
  std::size_t size() const { return n_; }

  BoolMatrix operator*(const BoolMatrix& o) const {
    BoolMatrix r(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      std::uint64_t* dst = &r.bits_[i * words_];
      for (std::size_t k = 0; k < n_; ++k) {
        if (!get(i, k)) continue;
        const std::uint64_t* src = &o.bits_[k * words_];
        for (std::size_t w = 0; w < words_; ++w) dst[w] |= src[w];
      }
    }
    return r;
  }

  bool operator==(const BoolMatrix& o) const { return bits_ == o.bits_; }

  std::size_t hash() const { return VectorHash{}(bits_); }

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

struct MatrixHash {
  std::size_t operator()(const BoolMatrix& m) const { return m.hash(); }
};

/// Returns a state q with q --M^n--> q but not q --M--> q, if any.
std::optional<std::size_t> gained_diagonal(const BoolMatrix& m, const BoolMatrix& power) {
  for (std::size_t q = 0; q < m.size(); ++q)
    if (power.get(q, q) && !m.get(q, q)) return q;
  return std::nullopt;
}

std::vector<AutState> cycle_through(const BoolMatrix& m, std::size_t q, std::size_t n) {
  // layers[k] = states reachable from q in k steps of m.
  std::vector<std::vector<bool>> layers(n + 1, std::vector<bool>(m.size(), false));
  layers[0][q] = true;
  for (std::size_t k = 1; k <= n; ++k)
    for (std::size_t p = 0; p < m.size(); ++p)
      if (layers[k - 1][p])
        for (std::size_t r = 0; r < m.size(); ++r)
          if (m.get(p, r)) layers[k][r] = true;
  std::vector<AutState> path(n);
  std::size_t cur = q;
  for (std::size_t k = n; k-- > 0;) {
    for (std::size_t p = 0; p < m.size(); ++p) {
      if (layers[k][p] && m.get(p, cur) && (k != 0 || p == q)) {
        path[k] = static_cast<AutState>(p);
        cur = p;
        break;
      }
    }
  }
  return path;
}

}  // namespace

CounterFreeness is_counter_free(const BuchiAutomaton& a, const Guards& guards) {
  const std::size_t n = a.num_states();
  std::vector<BoolMatrix> letter_matrix(a.num_letters(), BoolMatrix(n));
  for (AutState q = 0; q < n; ++q)
    for (const Edge& e : a.edges(q)) letter_matrix[e.letter].set(q, e.to);

  struct Element {
    BoolMatrix m;
    std::size_t parent;
    LetterId letter;
  };
  constexpr std::size_t kRoot = static_cast<std::size_t>(-1);
  std::vector<Element> elements;
  std::unordered_map<BoolMatrix, std::size_t, MatrixHash> index;
  std::deque<std::size_t> queue;
  CounterFreeness result;

  auto word_of = [&](std::size_t e) {
    std::vector<LetterId> w;
    for (; e != kRoot; e = elements[e].parent) w.push_back(elements[e].letter);
    std::reverse(w.begin(), w.end());
    return w;
  };
  auto check = [&](std::size_t e) -> bool {
    const BoolMatrix& m = elements[e].m;
    std::unordered_set<BoolMatrix, MatrixHash> powers;
    powers.insert(m);
    BoolMatrix p = m;
    for (std::size_t k = 2;; ++k) {
      p = p * m;
      if (auto q = gained_diagonal(m, p)) {
        result.counter_free = false;
        result.counter = CounterWitness{word_of(e), k, cycle_through(m, *q, k)};
        return true;
      }
      if (!powers.insert(p).second) return false;
    }
  };
  auto add = [&](BoolMatrix m, std::size_t parent, LetterId l) -> bool {
    auto [it, inserted] = index.try_emplace(m, elements.size());
    if (!inserted) return false;
    if (elements.size() >= guards.monoid_cap)
      throw ResourceError("transition monoid exceeds guard of " + std::to_string(guards.monoid_cap));
    elements.push_back(Element{std::move(m), parent, l});
    queue.push_back(elements.size() - 1);
    return check(elements.size() - 1);
  };

  for (LetterId l = 0; l < a.num_letters(); ++l) {
    if (add(letter_matrix[l], kRoot, l)) {
      result.monoid_size = elements.size();
      return result;
    }
  }
  while (!queue.empty()) {
    guards.poll();
    const std::size_t e = queue.front();
    queue.pop_front();
    for (LetterId l = 0; l < a.num_letters(); ++l) {
      if (add(elements[e].m * letter_matrix[l], e, l)) {
        result.monoid_size = elements.size();
        return result;
      }
    }
  }
  result.monoid_size = elements.size() + 1;  // plus the identity
  return result;
}

// -- rendering ---------------------------------------------------------------

namespace {

std::string dot_escape(const std::string& s) {
  std::string r;
  for (char c : s) {
    if (c == '"' || c == '\\') r += '\\';
    r += c;
  }
  return r;
}

}  // namespace

std::string to_dot(const BuchiAutomaton& a, const std::string& name) {
  std::ostringstream os;
  os << "digraph \"" << dot_escape(name) << "\" {\n";
  os << "  rankdir=LR;\n";
  os << "  node [shape=circle];\n";
  for (AutState q = 0; q < a.num_states(); ++q) {
    os << "  " << q << " [label=\"" << dot_escape(a.state_name(q)) << "\"";
    if (a.accepting(q)) os << ", shape=doublecircle";
    os << "];\n";
  }
  for (AutState q : a.initial()) {
    os << "  init" << q << " [shape=point];\n";
    os << "  init" << q << " -> " << q << ";\n";
  }
  for (AutState q = 0; q < a.num_states(); ++q) {
    std::map<AutState, std::vector<LetterId>> grouped;
    for (const Edge& e : a.edges(q)) grouped[e.to].push_back(e.letter);
    for (const auto& [to, letters] : grouped) {
      os << "  " << q << " -> " << to << " [label=\"";
      for (std::size_t i = 0; i < letters.size(); ++i)
        os << (i ? ", " : "") << dot_escape(a.alphabet()[letters[i]]);
      os << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace taskground
