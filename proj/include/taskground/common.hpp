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

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace taskground {

enum class StateId : std::uint32_t {};
enum class ActionId : std::uint32_t {};
enum class ObsId : std::uint32_t {};

constexpr std::uint32_t idx(StateId s) { return static_cast<std::uint32_t>(s); }
constexpr std::uint32_t idx(ActionId a) { return static_cast<std::uint32_t>(a); }
constexpr std::uint32_t idx(ObsId o) { return static_cast<std::uint32_t>(o); }

/// One (x, u, y) position of a complete trace.
struct Letter {
  StateId x{};
  ActionId u{};
  ObsId y{};

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// An action/observation pair, the letter seen by the history condenser.
struct History {
  ActionId u{};
  ObsId y{};

  friend bool operator==(const History&, const History&) = default;
  friend auto operator<=>(const History&, const History&) = default;
};

/// Sorted, duplicate-free set of states. Used for I-states and for the
/// images of the transition function.
using StateSet = std::vector<StateId>;

/// Ultimately periodic word prefix . cycle^omega. Positions are 1-indexed.
template <class T>
struct Lasso {
  std::vector<T> prefix;
  std::vector<T> cycle;

  std::size_t span() const { return prefix.size() + cycle.size(); }

  /// Letter at 1-indexed position i (any i >= 1).
  const T& at(std::size_t i) const {
    if (i <= prefix.size()) return prefix[i - 1];
    return cycle[(i - 1 - prefix.size()) % cycle.size()];
  }

  friend bool operator==(const Lasso&, const Lasso&) = default;
};

using CompleteLassoTrace = Lasso<Letter>;

/// Number of positions after which two lassos of the given shapes have both
/// entered their periodic parts in lock step.
template <class A, class B>
std::size_t comparison_horizon(const Lasso<A>& a, const Lasso<B>& b) {
  return std::max(a.prefix.size(), b.prefix.size()) +
         std::lcm(a.cycle.size(), b.cycle.size());
}

/// True iff both lassos denote the same infinite word.
template <class T>
bool same_word(const Lasso<T>& a, const Lasso<T>& b) {
  if (a.cycle.empty() || b.cycle.empty()) return a == b;
  const std::size_t n = comparison_horizon(a, b);
  for (std::size_t i = 1; i <= n; ++i)
    if (!(a.at(i) == b.at(i))) return false;
  return true;
}

template <class T, class F>
auto map_lasso(const Lasso<T>& in, F&& fn) {
  using Out = std::decay_t<decltype(fn(in.cycle.front()))>;
  Lasso<Out> out;
  out.prefix.reserve(in.prefix.size());
  out.cycle.reserve(in.cycle.size());
  for (const auto& v : in.prefix) out.prefix.push_back(fn(v));
  for (const auto& v : in.cycle) out.cycle.push_back(fn(v));
  return out;
}

/// Runs a deterministic letter-to-letter machine over a lasso and returns
/// its output as a rolled lasso. `step(state, letter)` updates `state` in
/// place and returns the output letter. The machine state must be ordered.
template <class In, class State, class Step>
auto run_on_lasso(const Lasso<In>& in, State state, Step&& step) {
  using Out = std::decay_t<decltype(step(state, in.cycle.front()))>;
  std::vector<Out> outputs;
  outputs.reserve(in.span());
  for (const auto& l : in.prefix) outputs.push_back(step(state, l));
  // Key: machine state at the start of each cycle position.
  std::map<std::pair<std::size_t, State>, std::size_t> seen;
  const std::size_t c = in.cycle.size();
  for (std::size_t k = 0;; ++k) {
    auto key = std::make_pair(k % c, state);
    if (auto it = seen.find(key); it != seen.end()) {
      Lasso<Out> out;
      out.prefix.assign(outputs.begin(), outputs.begin() + it->second);
      out.cycle.assign(outputs.begin() + it->second, outputs.end());
      return out;
    }
    seen.emplace(std::move(key), outputs.size());
    outputs.push_back(step(state, in.cycle[k % c]));
  }
}

/// Thrown when a configurable size guard is exceeded or a computation is
/// cancelled.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Size guards shared by the decision procedures. The cancel flag, when
/// set, is polled by long-running loops.
struct Guards {
  std::size_t complement_states = 12;
  std::size_t belief_cap = 4096;
  std::size_t monoid_cap = 100000;
  std::size_t automaton_states = 1u << 16;
  std::size_t product_states = 1u << 22;
  std::size_t max_propositions = 16;
  const std::atomic<bool>* cancel = nullptr;

  void poll() const {
    if (cancel != nullptr && cancel->load(std::memory_order_relaxed))
      throw ResourceError("computation cancelled");
  }
};

inline void hash_combine(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

struct VectorHash {
  template <class T>
  std::size_t operator()(const std::vector<T>& v) const {
    std::size_t h = v.size();
    for (const auto& e : v) hash_combine(h, std::hash<std::uint64_t>{}(static_cast<std::uint64_t>(e)));
    return h;
  }
};

}  // namespace taskground
