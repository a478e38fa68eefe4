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

#include "taskground/catalog.hpp"

#include <stdexcept>

namespace taskground {

namespace {

// Cells 1..n; R and L clamp at the walls.
RawSystem corridor(std::size_t n, bool signed_sensor) {
  if (n < 2) throw std::invalid_argument("corridor needs at least two cells");
  RawSystem raw;
  for (std::size_t x = 1; x <= n; ++x) raw.states.push_back(std::to_string(x));
  raw.actions = {"R", "L"};
  if (signed_sensor) {
    for (std::size_t k = n; k >= 1; --k) raw.observations.push_back("-" + std::to_string(k));
    for (std::size_t k = 1; k <= n; ++k) raw.observations.push_back(std::to_string(k));
  } else {
    raw.observations = {"none"};
  }
  raw.init = raw.states;
  for (std::size_t x = 1; x <= n; ++x) {
    for (const std::string u : {"R", "L"}) {
      const std::size_t x2 = u == "R" ? std::min(x + 1, n) : std::max(x - 1, std::size_t{1});
      const std::string from = std::to_string(x), to = std::to_string(x2);
      raw.trans.push_back({from, u, {to}});
      if (signed_sensor) raw.obs.push_back({from, u, to, {to, "-" + to}});
      else raw.obs.push_back({from, u, to, {"none"}});
    }
  }
  return raw;
}

constexpr int kCols = 4;
constexpr int kRows = 2;
constexpr char kHeadings[] = {'N', 'E', 'S', 'W'};

std::string cell(int c, int r, int h) {
  return "c" + std::to_string(c) + "r" + std::to_string(r) + std::string(1, kHeadings[h]);
}

bool is_goal(int c, int r) { return c == kCols && r == 1; }

// 4x2 grid, row 1 at the bottom. left/right turn in place; fwd moves one
// cell unless a wall blocks it.
RawSystem grid(bool goal_detector) {
  RawSystem raw;
  for (int c = 1; c <= kCols; ++c)
    for (int r = 1; r <= kRows; ++r)
      for (int h = 0; h < 4; ++h) raw.states.push_back(cell(c, r, h));
  raw.actions = {"left", "right", "fwd"};
  raw.observations = goal_detector ? std::vector<std::string>{"0", "1"}
                                   : std::vector<std::string>{"light", "dark", "indet"};
  raw.init = {cell(1, 1, 1), cell(kCols, kRows, 3)};
  constexpr int dc[] = {0, 1, 0, -1};
  constexpr int dr[] = {1, 0, -1, 0};
  for (int c = 1; c <= kCols; ++c) {
    for (int r = 1; r <= kRows; ++r) {
      for (int h = 0; h < 4; ++h) {
        const std::string from = cell(c, r, h);
        for (const std::string u : {"left", "right", "fwd"}) {
          int c2 = c, r2 = r, h2 = h;
          if (u == "left") h2 = (h + 3) % 4;
          else if (u == "right") h2 = (h + 1) % 4;
          else if (c + dc[h] >= 1 && c + dc[h] <= kCols && r + dr[h] >= 1 && r + dr[h] <= kRows) {
            c2 = c + dc[h];
            r2 = r + dr[h];
          }
          const std::string to = cell(c2, r2, h2);
          raw.trans.push_back({from, u, {to}});
          std::vector<std::string> ys;
          if (goal_detector) ys = {is_goal(c, r) ? "1" : "0"};
          else ys = {r2 == kRows ? "light" : "dark", "indet"};
          raw.obs.push_back({from, u, to, ys});
        }
      }
    }
  }
  return raw;
}

std::string any_of(const std::vector<std::string>& atoms) {
  std::string out;
  for (std::size_t k = 0; k < atoms.size(); ++k) out += (k ? " | " : "") + atoms[k];
  return out;
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"light_dark_goal_detector", "corridor_sign", "light_dark", "corridor_blind"};
}

CatalogEntry catalog(const std::string& name, const CatalogParams& params) {
  CatalogEntry e;
  e.name = name;
  if (name == "corridor_sign") {
    e.system = make_system(corridor(params.corridor_length, true));
    std::vector<std::string> neg;
    for (std::size_t k = 1; k <= params.corridor_length; ++k) neg.push_back("y:-" + std::to_string(k));
    e.formula = "F (" + any_of(neg) + ")";
    e.grounding = Grounding::ActionObservation;
    e.expected = {false, true, false};
    e.description = "corridor with signed distance sensor; a negative reading appears";
  } else if (name == "corridor_blind") {
    e.system = make_system(corridor(params.corridor_length, false));
    e.formula = "F x:1";
    e.grounding = Grounding::State;
    e.expected = {true, false, false};
    e.description = "corridor without sensor; visit cell 1";
  } else if (name == "light_dark") {
    e.system = make_system(grid(false));
    e.formula = "F (y:light | y:dark)";
    e.grounding = Grounding::ActionObservation;
    e.expected = {false, true, true};
    e.description = "grid with light/dark/indet sensor; a definite reading appears";
  } else if (name == "light_dark_goal_detector") {
    e.system = make_system(grid(true));
    std::vector<std::string> goal;
    for (int h = 0; h < 4; ++h) goal.push_back("x:" + cell(kCols, 1, h));
    e.formula = "G F (" + any_of(goal) + ")";
    e.grounding = Grounding::State;
    e.expected = {true, true, true};
    e.description = "grid with goal detector; revisit the goal cell forever";
  } else {
    throw std::invalid_argument("unknown catalog entry '" + name + "'");
  }
  return e;
}

}  // namespace taskground
