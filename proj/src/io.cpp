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

#include "taskground/io.hpp"

#include <map>
#include <stdexcept>

namespace taskground {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw std::invalid_argument("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw std::invalid_argument(std::string("missing field '") + key + "'");
  return *it;
}

std::string str(const Json& j, const char* what) {
  if (!j.is_string()) throw std::invalid_argument(std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::vector<std::string> strings(const Json& j, const char* what) {
  if (!j.is_array()) throw std::invalid_argument(std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) out.push_back(str(e, what));
  return out;
}

}  // namespace

RawSystem raw_system_from_json(const Json& j) {
  RawSystem raw;
  raw.states = strings(field(j, "states"), "states");
  raw.actions = strings(field(j, "actions"), "actions");
  raw.observations = strings(field(j, "observations"), "observations");
  raw.init = strings(field(j, "init"), "init");
  const Json& trans = field(j, "trans");
  if (!trans.is_array()) throw std::invalid_argument("trans must be an array");
  for (const auto& t : trans)
    raw.trans.push_back({str(field(t, "x"), "trans.x"), str(field(t, "u"), "trans.u"),
                         strings(field(t, "succ"), "trans.succ")});
  const Json& obs = field(j, "obs");
  if (!obs.is_array()) throw std::invalid_argument("obs must be an array");
  for (const auto& o : obs)
    raw.obs.push_back({str(field(o, "x"), "obs.x"), str(field(o, "u"), "obs.u"), str(field(o, "x2"), "obs.x2"),
                       strings(field(o, "ys"), "obs.ys")});
  return raw;
}

Json to_json(const RawSystem& raw) {
  Json j;
  j["states"] = raw.states;
  j["actions"] = raw.actions;
  j["observations"] = raw.observations;
  j["init"] = raw.init;
  j["trans"] = Json::array();
  for (const auto& t : raw.trans) j["trans"].push_back({{"x", t.x}, {"u", t.u}, {"succ", t.succ}});
  j["obs"] = Json::array();
  for (const auto& o : raw.obs) j["obs"].push_back({{"x", o.x}, {"u", o.u}, {"x2", o.x2}, {"ys", o.ys}});
  return j;
}

CompleteLassoTrace lasso_from_json(const RobotTransitionSystem& r, const Json& j) {
  auto letters = [&r](const Json& seq, const char* what) {
    if (!seq.is_array()) throw std::invalid_argument(std::string(what) + " must be an array");
    std::vector<Letter> out;
    for (const auto& e : seq) {
      const auto parts = strings(e, what);
      if (parts.size() != 3) throw std::invalid_argument(std::string(what) + " entries must be [x, u, y]");
      auto x = r.find_state(parts[0]);
      auto u = r.find_action(parts[1]);
      auto y = r.find_observation(parts[2]);
      if (!x || !u || !y)
        throw std::invalid_argument("unknown symbol in letter [" + parts[0] + "," + parts[1] + "," + parts[2] + "]");
      out.push_back({*x, *u, *y});
    }
    return out;
  };
  CompleteLassoTrace t;
  if (j.contains("prefix")) t.prefix = letters(j["prefix"], "prefix");
  t.cycle = letters(field(j, "cycle"), "cycle");
  if (t.cycle.empty()) throw std::invalid_argument("cycle must be nonempty");
  return t;
}

Json to_json(const RobotTransitionSystem& r, const CompleteLassoTrace& t) {
  auto letters = [&r](const std::vector<Letter>& v) {
    Json out = Json::array();
    for (const Letter& l : v) out.push_back({r.name(l.x), r.name(l.u), r.name(l.y)});
    return out;
  };
  return {{"prefix", letters(t.prefix)}, {"cycle", letters(t.cycle)}};
}

Json to_json(const PropLasso& s) {
  auto sets = [](const std::vector<PropSet>& v) {
    Json out = Json::array();
    for (const auto& p : v) out.push_back(std::vector<std::string>(p.begin(), p.end()));
    return out;
  };
  return {{"prefix", sets(s.prefix)}, {"cycle", sets(s.cycle)}};
}

BuchiAutomaton automaton_from_json(const Json& j, const std::vector<std::string>* target_alphabet) {
  const auto alphabet = strings(field(j, "alphabet"), "alphabet");
  const auto states = strings(field(j, "states"), "states");
  const auto initial = strings(field(j, "initial"), "initial");
  const auto accepting = strings(field(j, "accepting"), "accepting");
  std::map<std::string, LetterId> letter_id;
  const auto& letters = target_alphabet ? *target_alphabet : alphabet;
  for (std::size_t k = 0; k < letters.size(); ++k) letter_id.emplace(letters[k], static_cast<LetterId>(k));
  for (const auto& l : alphabet)
    if (!letter_id.count(l)) throw std::invalid_argument("letter '" + l + "' is not in the system's alphabet");
  std::map<std::string, AutState> state_id;
  BuchiAutomaton a(letters);
  for (const auto& s : states) {
    if (state_id.count(s)) throw std::invalid_argument("duplicate automaton state '" + s + "'");
    const bool acc = std::find(accepting.begin(), accepting.end(), s) != accepting.end();
    state_id.emplace(s, a.add_state(acc, s));
  }
  auto state = [&state_id](const std::string& s) {
    auto it = state_id.find(s);
    if (it == state_id.end()) throw std::invalid_argument("unknown automaton state '" + s + "'");
    return it->second;
  };
  for (const auto& s : accepting) state(s);
  for (const auto& s : initial) a.add_initial(state(s));
  if (a.initial().empty()) throw std::invalid_argument("automaton has no initial state");
  const Json& trans = field(j, "trans");
  if (!trans.is_array()) throw std::invalid_argument("trans must be an array");
  for (const auto& t : trans) {
    const std::string l = str(field(t, "letter"), "trans.letter");
    if (std::find(alphabet.begin(), alphabet.end(), l) == alphabet.end())
      throw std::invalid_argument("transition letter '" + l + "' is not in the automaton alphabet");
    a.add_edge(state(str(field(t, "from"), "trans.from")), letter_id.at(l), state(str(field(t, "to"), "trans.to")));
  }
  a.finalize();
  return a;
}

Json to_json(const BuchiAutomaton& a) {
  Json j;
  j["alphabet"] = a.alphabet();
  std::vector<std::string> states, accepting, initial;
  for (AutState q = 0; q < a.num_states(); ++q) {
    states.push_back(a.state_name(q));
    if (a.accepting(q)) accepting.push_back(a.state_name(q));
  }
  for (AutState q : a.initial()) initial.push_back(a.state_name(q));
  j["states"] = states;
  j["initial"] = initial;
  j["accepting"] = accepting;
  j["trans"] = Json::array();
  for (AutState q = 0; q < a.num_states(); ++q)
    for (const Edge& e : a.edges(q))
      j["trans"].push_back({{"from", a.state_name(q)}, {"letter", a.alphabet()[e.letter]}, {"to", a.state_name(e.to)}});
  return j;
}

Json to_json(const RobotTransitionSystem& r, const PosabilityReport& report) {
  static const char* kKeys[] = {"state", "ao", "istate"};
  Json j;
  j["counterexamples"] = Json::object();
  j["notes"] = Json::object();
  for (std::size_t k = 0; k < 3; ++k) {
    const BitResult& b = report.bits[k];
    if (b.verdict == Verdict::Undecided) j[kKeys[k]] = "undecided";
    else j[kKeys[k]] = b.verdict == Verdict::Yes;
    if (b.counterexample)
      j["counterexamples"][kKeys[k]] = {{"w", to_json(r, b.counterexample->w)},
                                       {"wbar", to_json(r, b.counterexample->wbar)}};
    if (b.verdict == Verdict::Undecided) j["notes"][kKeys[k]] = b.note;
  }
  return j;
}

}  // namespace taskground
