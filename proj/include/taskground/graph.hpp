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

// Accepting-cycle search on explicit labelled graphs. Every emptiness
// question in the library (membership, emptiness, well-posedness pairs)
// ends up here.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <utility>
#include <vector>

namespace taskground {

template <class Label>
struct LabeledGraph {
  std::vector<std::vector<std::pair<std::uint32_t, Label>>> succ;
  std::vector<std::uint32_t> initial;
  /// Bitmask of acceptance marks carried by each node.
  std::vector<std::uint32_t> marks;
  /// Generalized Büchi: a cycle must visit every mark. Zero means any cycle.
  unsigned num_marks = 1;

  std::uint32_t add_node(std::uint32_t mark_bits) {
    succ.emplace_back();
    marks.push_back(mark_bits);
    return static_cast<std::uint32_t>(succ.size() - 1);
  }
  std::size_t size() const { return succ.size(); }
};

template <class Label>
struct GraphLasso {
  std::vector<Label> prefix;
  std::vector<Label> cycle;
  /// Nodes entered by each label, aligned with prefix/cycle.
  std::vector<std::uint32_t> prefix_nodes;
  std::vector<std::uint32_t> cycle_nodes;
  std::uint32_t start = 0;
};

namespace detail {

constexpr std::uint32_t kNone = 0xffffffffu;

/// Tarjan SCC numbering of the nodes reachable from `g.initial`.
/// Unreached nodes get kNone.
template <class Label>
std::vector<std::uint32_t> scc_ids(const LabeledGraph<Label>& g, std::uint32_t& num_sccs) {
  const std::size_t n = g.size();
  std::vector<std::uint32_t> index(n, kNone), low(n, 0), comp(n, kNone);
  std::vector<std::uint32_t> stack;
  std::vector<bool> on_stack(n, false);
  std::vector<std::pair<std::uint32_t, std::size_t>> call;
  std::uint32_t counter = 0;
  num_sccs = 0;
  for (std::uint32_t root : g.initial) {
    if (index[root] != kNone) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, next] = call.back();
      if (next < g.succ[v].size()) {
        const std::uint32_t w = g.succ[v][next++].first;
        if (index[w] == kNone) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const std::uint32_t done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == index[done]) {
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = num_sccs;
        } while (w != done);
        ++num_sccs;
      }
    }
  }
  return comp;
}

/// Shortest path from any node in `from` to a node satisfying `target`,
/// restricted to nodes accepted by `allowed`. With `nonempty`, the path has
/// at least one edge even if a source already satisfies the target.
template <class Label, class Target, class Allowed>
bool bfs_path(const LabeledGraph<Label>& g, const std::vector<std::uint32_t>& from, Target&& target,
              Allowed&& allowed, bool nonempty, std::vector<Label>& labels,
              std::vector<std::uint32_t>& nodes, std::uint32_t& reached,
              std::uint32_t* source = nullptr) {
  const std::size_t n = g.size();
  std::vector<std::uint32_t> parent(n, kNone);
  std::vector<std::size_t> parent_edge(n, 0);
  std::vector<bool> seen(n, false);
  std::deque<std::uint32_t> queue;
  constexpr std::uint32_t kRoot = kNone - 1;
  if (!nonempty) {
    for (std::uint32_t s : from) {
      if (target(s)) {
        reached = s;
        if (source != nullptr) *source = s;
        return true;
      }
    }
  }
  for (std::uint32_t s : from) {
    if (nonempty) {
      // Seed with successors so the path has at least one edge.
      for (std::size_t e = 0; e < g.succ[s].size(); ++e) {
        const std::uint32_t w = g.succ[s][e].first;
        if (!allowed(w) || seen[w]) continue;
        seen[w] = true;
        parent[w] = s;
        parent_edge[w] = e;
        queue.push_back(w);
      }
    } else if (!seen[s]) {
      seen[s] = true;
      parent[s] = kRoot;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    const std::uint32_t v = queue.front();
    queue.pop_front();
    if (target(v)) {
      std::vector<Label> rl;
      std::vector<std::uint32_t> rn;
      std::uint32_t cur = v;
      while (parent[cur] != kRoot) {
        const std::uint32_t p = parent[cur];
        rl.push_back(g.succ[p][parent_edge[cur]].second);
        rn.push_back(cur);
        cur = p;
        if (nonempty && std::find(from.begin(), from.end(), cur) != from.end()) break;
      }
      labels.insert(labels.end(), rl.rbegin(), rl.rend());
      nodes.insert(nodes.end(), rn.rbegin(), rn.rend());
      reached = v;
      if (source != nullptr) *source = cur;
      return true;
    }
    for (std::size_t e = 0; e < g.succ[v].size(); ++e) {
      const std::uint32_t w = g.succ[v][e].first;
      if (seen[w] || !allowed(w)) continue;
      seen[w] = true;
      parent[w] = v;
      parent_edge[w] = e;
      queue.push_back(w);
    }
  }
  return false;
}

}  // namespace detail

/// Finds a lasso from an initial node whose cycle visits every acceptance
/// mark, or nullopt if none exists.
template <class Label>
std::optional<GraphLasso<Label>> find_accepting_lasso(const LabeledGraph<Label>& g) {
  std::uint32_t num_sccs = 0;
  const auto comp = detail::scc_ids(g, num_sccs);
  const std::uint32_t full = g.num_marks == 0 ? 0u : ((1u << g.num_marks) - 1u);
  std::vector<std::uint32_t> scc_marks(num_sccs, 0);
  std::vector<bool> nontrivial(num_sccs, false);
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    if (comp[v] == detail::kNone) continue;
    scc_marks[comp[v]] |= g.marks[v];
    for (const auto& [w, label] : g.succ[v])
      if (comp[w] == comp[v]) nontrivial[comp[v]] = true;
  }
  std::uint32_t chosen = detail::kNone;
  for (std::uint32_t c = 0; c < num_sccs; ++c) {
    if (nontrivial[c] && (scc_marks[c] & full) == full) {
      chosen = c;
      break;
    }
  }
  if (chosen == detail::kNone) return std::nullopt;

  GraphLasso<Label> out;
  auto in_scc = [&](std::uint32_t v) { return comp[v] == chosen; };
  auto anything = [](std::uint32_t) { return true; };
  std::uint32_t entry = 0;
  detail::bfs_path(g, g.initial, in_scc, anything, false, out.prefix, out.prefix_nodes, entry,
                   &out.start);
  std::uint32_t cur = entry;
  for (unsigned k = 0; k < g.num_marks; ++k) {
    const std::uint32_t bit = 1u << k;
    std::uint32_t next = cur;
    detail::bfs_path(
        g, {cur}, [&](std::uint32_t v) { return (g.marks[v] & bit) != 0; }, in_scc, false, out.cycle,
        out.cycle_nodes, next);
    cur = next;
  }
  std::uint32_t back = cur;
  detail::bfs_path(
      g, {cur}, [&](std::uint32_t v) { return v == entry; }, in_scc, out.cycle.empty(), out.cycle,
      out.cycle_nodes, back);
  return out;
}

}  // namespace taskground
