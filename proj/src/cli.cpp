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

#include "taskground/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "taskground/catalog.hpp"
#include "taskground/condensers.hpp"
#include "taskground/io.hpp"
#include "taskground/posability.hpp"
#include "taskground/table.hpp"

namespace taskground {

namespace {

/// Input problem that ends the command with a given status.
class CommandError : public std::runtime_error {
 public:
  CommandError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

struct Config {
  std::string system;
  std::string second;  // lasso file, formula, or catalog name depending on the command
  std::string formula;
  std::string automaton;
  std::string grounding = "state";
  std::string condenser = "all";
  std::string what = "omega";
  std::size_t complement_guard = Guards{}.complement_states;
  std::size_t belief_guard = Guards{}.belief_cap;
  std::size_t monoid_guard = Guards{}.monoid_cap;
  std::uint64_t seed = 0;
  std::size_t steps = 8;
  std::size_t fuzz = 0;
  bool json = false;

  Guards guards() const {
    Guards g;
    g.complement_states = complement_guard;
    g.belief_cap = belief_guard;
    g.monoid_cap = monoid_guard;
    return g;
  }
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CommandError(kExitBadInput, "cannot read '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw CommandError(kExitBadInput, "malformed JSON in '" + path + "': " + e.what());
  }
}

/// A system file, or "catalog:<name>".
RawSystem load_raw(const std::string& arg) {
  const std::string prefix = "catalog:";
  if (arg.rfind(prefix, 0) == 0) {
    try {
      return catalog(arg.substr(prefix.size())).system.to_raw();
    } catch (const std::invalid_argument& e) {
      throw CommandError(kExitBadInput, e.what());
    }
  }
  const Json j = read_json_file(arg);
  try {
    return raw_system_from_json(j);
  } catch (const std::exception& e) {
    throw CommandError(kExitBadInput, "bad system file '" + arg + "': " + e.what());
  }
}

RobotTransitionSystem load_system(const std::string& arg) {
  auto result = validate_system(load_raw(arg));
  if (auto* violations = std::get_if<std::vector<Violation>>(&result)) {
    std::string msg = "invalid system '" + arg + "':";
    for (const auto& v : *violations) msg += "\n  " + v.message + " " + v.where;
    throw CommandError(kExitBadInput, msg);
  }
  return std::get<RobotTransitionSystem>(std::move(result));
}

Formula parse_formula(const std::string& text) {
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw CommandError(kExitBadInput, "formula parse error at " + std::to_string(e.position()) + ": " + e.what());
  }
}

template <class F>
auto input_step(F&& f) {
  try {
    return f();
  } catch (const ResourceError&) {
    throw;
  } catch (const CommandError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw CommandError(kExitBadInput, e.what());
  }
}

TaskSpec load_spec(const RobotTransitionSystem& r, const Config& c) {
  if (!c.automaton.empty() && !c.formula.empty())
    throw CommandError(kExitBadInput, "give either a formula or --automaton, not both");
  TaskSpec spec;
  if (!c.automaton.empty()) {
    const Json j = read_json_file(c.automaton);
    const auto alphabet = r.letter_alphabet();
    spec = input_step([&] { return TaskSpec::from_automaton(automaton_from_json(j, &alphabet)); });
  } else if (!c.formula.empty()) {
    const Grounding g = input_step([&] { return parse_grounding(c.grounding); });
    spec = TaskSpec::from_formula(parse_formula(c.formula), g);
  } else {
    throw CommandError(kExitBadInput, "a task formula or --automaton is required");
  }
  input_step([&] {
    check_spec(r, spec);
    return 0;
  });
  return spec;
}

std::string bit_word(const BitResult& b) {
  switch (b.verdict) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Undecided: return "undecided";
  }
  return "?";
}

std::string profile_of(const std::array<bool, 3>& p) {
  return std::string("(") + (p[0] ? "1" : "0") + "," + (p[1] ? "1" : "0") + "," + (p[2] ? "1" : "0") + ")";
}

int cmd_validate(const Config& c, std::ostream& out) {
  const RawSystem raw = load_raw(c.system);
  const auto result = validate_system(raw);
  const auto* violations = std::get_if<std::vector<Violation>>(&result);
  if (c.json) {
    Json j;
    j["valid"] = violations == nullptr;
    j["violations"] = Json::array();
    if (violations)
      for (const auto& v : *violations) j["violations"].push_back({{"message", v.message}, {"where", v.where}});
    out << j.dump(2) << "\n";
  } else if (violations) {
    out << "invalid: " << violations->size() << " violation(s)\n";
    for (const auto& v : *violations) out << "  " << v.message << " " << v.where << "\n";
  } else {
    const auto& r = std::get<RobotTransitionSystem>(result);
    out << "valid: " << r.num_states() << " states, " << r.num_actions() << " actions, " << r.num_observations()
        << " observations\n";
  }
  return violations ? kExitNegative : kExitOk;
}

int cmd_check(const Config& c, std::ostream& out) {
  const RobotTransitionSystem r = load_system(c.system);
  const TaskSpec spec = load_spec(r, c);
  ProfileOptions options;
  if (c.condenser != "all") {
    const CondenserKind k = input_step([&] { return parse_condenser(c.condenser); });
    options.condensers = {false, false, false};
    options.condensers[static_cast<std::size_t>(k)] = true;
  }
  const PosabilityReport report = posability_profile(r, spec, c.guards(), options);

  bool all_yes = true;
  bool undecided = false;
  for (std::size_t k = 0; k < 3; ++k) {
    if (!options.condensers[k]) continue;
    all_yes = all_yes && report.bits[k].verdict == Verdict::Yes;
    undecided = undecided || report.bits[k].verdict == Verdict::Undecided;
  }

  if (c.json) {
    Json j = to_json(r, report);
    for (std::size_t k = 0; k < 3; ++k)
      if (!options.condensers[k]) j.erase(to_string(static_cast<CondenserKind>(k)));
    out << j.dump(2) << "\n";
  } else {
    for (std::size_t k = 0; k < 3; ++k) {
      if (!options.condensers[k]) continue;
      const BitResult& b = report.bits[k];
      out << std::left << std::setw(7) << to_string(static_cast<CondenserKind>(k)) << bit_word(b) << "\n";
      if (b.counterexample) {
        out << "  w    = " << to_json(r, b.counterexample->w).dump() << "\n";
        out << "  wbar = " << to_json(r, b.counterexample->wbar).dump() << "\n";
      }
      if (b.verdict == Verdict::Undecided) out << "  " << b.note << "\n";
    }
    if (options.condensers == std::array<bool, 3>{true, true, true}) out << "profile " << report.profile() << "\n";
  }
  if (undecided) return kExitResource;
  return all_yes ? kExitOk : kExitNegative;
}

int cmd_table(const Config& c, std::ostream& out) {
  const auto rows = compute_table(c.guards());
  bool ok = true;
  for (const auto& row : rows) ok = ok && row.matches();

  std::optional<FuzzResult> fuzz;
  if (c.fuzz > 0) {
    FuzzOptions fo;
    fo.runs = c.fuzz;
    fo.seed = c.seed;
    fuzz = run_fuzz(fo, c.guards());
    ok = ok && fuzz->violations.empty();
  }

  if (c.json) {
    Json j;
    j["rows"] = Json::array();
    for (const auto& row : rows)
      j["rows"].push_back({{"example", row.example},
                           {"formula", row.formula},
                           {"grounding", to_string(row.grounding)},
                           {"expected", profile_of(row.expected)},
                           {"computed", row.report.profile()},
                           {"match", row.matches()}});
    j["impossible"] = Json::array();
    for (const auto& imp : impossible_rows())
      j["impossible"].push_back({{"profile", profile_of(imp.profile)}, {"rule", imp.rule}});
    if (fuzz) {
      j["fuzz"] = {{"runs", fuzz->runs},
                   {"seed", c.seed},
                   {"undecided", fuzz->undecided},
                   {"verified_counterexamples", fuzz->verified_counterexamples},
                   {"profiles", fuzz->profiles},
                   {"impossible", fuzz->impossible},
                   {"violations", fuzz->violations}};
    }
    j["ok"] = ok;
    out << j.dump(2) << "\n";
  } else {
    out << std::left << std::setw(26) << "example" << std::setw(8) << "ground" << std::setw(10) << "expected"
        << std::setw(10) << "computed" << "task\n";
    for (const auto& row : rows)
      out << std::setw(26) << row.example << std::setw(8) << to_string(row.grounding) << std::setw(10)
          << profile_of(row.expected) << std::setw(10) << row.report.profile() << row.formula
          << (row.matches() ? "" : "  MISMATCH") << "\n";
    for (const auto& imp : impossible_rows())
      out << std::setw(26) << "(impossible)" << std::setw(8) << "-" << std::setw(10) << profile_of(imp.profile)
          << std::setw(10) << "-" << imp.rule << "\n";
    if (fuzz) {
      out << "fuzz: " << fuzz->runs << " runs, seed " << c.seed << ", " << fuzz->undecided << " undecided, "
          << fuzz->verified_counterexamples << " verified counterexamples\n";
      for (const auto& [p, n] : fuzz->profiles) out << "  " << p << " " << n << "\n";
      out << "fuzz violations: " << fuzz->violations.size() << "\n";
      for (const auto& v : fuzz->violations) out << "  " << v << "\n";
    }
  }
  return ok ? kExitOk : kExitNegative;
}

int cmd_ground(const Config& c, std::ostream& out, std::ostream& err) {
  const RobotTransitionSystem r = load_system(c.system);
  const Grounding g = input_step([&] { return parse_grounding(c.grounding); });
  const Json j = read_json_file(c.second);
  const CompleteLassoTrace t = input_step([&] { return lasso_from_json(r, j); });
  if (const TraceCheck check = is_complete_trace(r, t); !check)
    err << "warning: not a complete trace (position " << check.position << ": " << check.reason << ")\n";
  out << to_json(ground(r, t, g)).dump() << "\n";
  return kExitOk;
}

int cmd_simulate(const Config& c, std::ostream& out, std::ostream& err) {
  const RobotTransitionSystem r = load_system(c.system);
  if (c.steps == 0) throw CommandError(kExitBadInput, "--steps must be positive");
  // Prefer a cycle of half the requested length, then any other split.
  std::vector<std::size_t> cycles;
  const std::size_t half = std::max<std::size_t>(1, c.steps / 2);
  cycles.push_back(half);
  for (std::size_t n = 1; n <= c.steps; ++n)
    if (n != half) cycles.push_back(n);
  for (std::size_t cycle : cycles) {
    try {
      const auto t = random_complete_lasso(r, c.seed, c.steps - cycle, cycle);
      out << to_json(r, t).dump() << "\n";
      return kExitOk;
    } catch (const LassoGenerationError&) {
    }
  }
  err << "no complete lasso with " << c.steps << " letters was found\n";
  return kExitNegative;
}

int cmd_exists_ao(const Config& c, std::ostream& out) {
  const RobotTransitionSystem r = load_system(c.system);
  const Formula psi = parse_formula(c.formula);
  input_step([&] {
    check_spec(r, TaskSpec::from_formula(psi, Grounding::State));
    return 0;
  });
  const AoResult res = exists_ao_formula(r, psi, c.guards());
  if (c.json) {
    Json j;
    j["verdict"] = to_string(res.verdict);
    j["method"] = res.method;
    j["witness"] = res.witness ? Json(to_string(*res.witness)) : Json(nullptr);
    j["monoid_size"] = res.monoid_size;
    if (res.counterexample)
      j["counterexample"] = {{"w", to_json(r, res.counterexample->w)}, {"wbar", to_json(r, res.counterexample->wbar)}};
    if (res.counter && res.product) {
      std::vector<std::string> word, states;
      for (LetterId l : res.counter->word) word.push_back(res.product->alphabet()[l]);
      for (AutState q : res.counter->states) states.push_back(res.product->state_name(q));
      j["counter"] = {{"word", word}, {"power", res.counter->power}, {"states", states}};
    }
    out << j.dump(2) << "\n";
  } else {
    out << to_string(res.verdict);
    if (!res.method.empty()) out << " (" << res.method << ")";
    out << "\n";
    if (res.witness) out << "  witness: " << to_string(*res.witness) << "\n";
    if (res.counterexample) {
      out << "  w    = " << to_json(r, res.counterexample->w).dump() << "\n";
      out << "  wbar = " << to_json(r, res.counterexample->wbar).dump() << "\n";
    }
    if (res.counter) out << "  product has a counter of power " << res.counter->power << "\n";
  }
  switch (res.verdict) {
    case AoVerdict::Expressible: return kExitOk;
    case AoVerdict::NotPosable: return kExitNegative;
    case AoVerdict::Inconclusive: return kExitInconclusive;
  }
  return kExitInconclusive;
}

int cmd_export_dot(const Config& c, std::ostream& out) {
  const RobotTransitionSystem r = load_system(c.system);
  if (c.what == "omega") {
    out << to_dot(omega_safety_automaton(r), "omega");
  } else if (c.what == "task" || c.what == "complement") {
    const TaskPair pair = task_automata(r, load_spec(r, c), c.guards());
    out << (c.what == "task" ? to_dot(pair.pos, "task") : to_dot(pair.neg, "complement"));
  } else if (c.what == "formula") {
    const Formula f = parse_formula(c.formula);
    out << to_dot(input_step([&] { return to_buchi(f, spec_propositions(f), c.guards()); }), "formula");
  } else if (c.what == "belief") {
    const BeliefSystem b = belief_system(r, c.guards().belief_cap);
    out << to_dot(omega_safety_automaton(b.system), "belief");
  } else {
    throw CommandError(kExitBadInput, "unknown --what '" + c.what + "'");
  }
  return kExitOk;
}

int cmd_catalog(const Config& c, std::ostream& out) {
  if (c.second.empty()) {
    for (const auto& name : catalog_names()) {
      const CatalogEntry e = catalog(name);
      out << std::left << std::setw(26) << name << std::setw(8) << to_string(e.grounding) << profile_of(e.expected)
          << "  " << e.formula << "\n";
    }
    return kExitOk;
  }
  const CatalogEntry e = input_step([&] { return catalog(c.second); });
  if (c.json) {
    out << Json{{"name", e.name},
                {"description", e.description},
                {"formula", e.formula},
                {"grounding", to_string(e.grounding)},
                {"expected", profile_of(e.expected)},
                {"system", to_json(e.system.to_raw())}}
               .dump(2)
        << "\n";
  } else {
    out << to_json(e.system.to_raw()).dump(2) << "\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Posability checker for tasks on robot transition systems", "taskground"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  auto guard_opts = [&c](CLI::App* sub) {
    sub->add_option("--complement-guard", c.complement_guard, "State cap for Buchi complementation")
        ->check(CLI::PositiveNumber);
    sub->add_option("--belief-guard", c.belief_guard, "Cap on reachable I-states")->check(CLI::PositiveNumber);
    sub->add_option("--monoid-guard", c.monoid_guard, "Cap on the transition monoid size")
        ->check(CLI::PositiveNumber);
  };
  auto task_opts = [&c](CLI::App* sub) {
    sub->add_option("formula,--formula", c.formula, "Task formula");
    sub->add_option("--automaton", c.automaton, "Task automaton file over the system's X,U,Y letters");
    sub->add_option("--grounding", c.grounding, "state | ao | istate");
  };

  auto* validate = app.add_subcommand("validate", "Check a system file");
  validate->add_option("system", c.system, "System file or catalog:<name>")->required();
  validate->add_flag("--json", c.json);

  auto* check = app.add_subcommand("check", "Posability of a task under the condensers");
  check->add_option("system", c.system, "System file or catalog:<name>")->required();
  task_opts(check);
  check->add_option("--condenser", c.condenser, "state | ao | istate | all");
  guard_opts(check);
  check->add_flag("--json", c.json);

  auto* table = app.add_subcommand("table", "Recompute the summary table from the catalog");
  table->add_option("--fuzz", c.fuzz, "Random systems and formulas to test against the impossible rows");
  table->add_option("--seed", c.seed);
  guard_opts(table);
  table->add_flag("--json", c.json);

  auto* ground_cmd = app.add_subcommand("ground", "Grounded proposition lasso of a trace");
  ground_cmd->add_option("system", c.system)->required();
  ground_cmd->add_option("lasso", c.second, "Lasso file")->required();
  ground_cmd->add_option("--grounding", c.grounding, "state | ao | istate");
  ground_cmd->add_flag("--json", c.json, "Accepted for uniformity; output is always JSON");

  auto* simulate = app.add_subcommand("simulate", "Random complete lasso");
  simulate->add_option("system", c.system)->required();
  simulate->add_option("--seed", c.seed);
  simulate->add_option("--steps", c.steps, "Letters in prefix plus cycle");
  simulate->add_flag("--json", c.json, "Accepted for uniformity; output is always JSON");

  auto* exists_ao = app.add_subcommand("exists-ao", "Equivalent ao formula for a state formula");
  exists_ao->add_option("system", c.system)->required();
  exists_ao->add_option("formula", c.formula, "State-grounded formula")->required();
  guard_opts(exists_ao);
  exists_ao->add_flag("--json", c.json);

  auto* dot = app.add_subcommand("export-dot", "Graphviz text of an automaton");
  dot->add_option("system", c.system)->required();
  dot->add_option("--what", c.what, "omega | task | complement | formula | belief");
  task_opts(dot);
  guard_opts(dot);

  auto* cat = app.add_subcommand("catalog", "List built-in systems or print one as a system file");
  cat->add_option("name", c.second);
  cat->add_flag("--json", c.json, "Include the reference task");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (*validate) return cmd_validate(c, out);
    if (*check) return cmd_check(c, out);
    if (*table) return cmd_table(c, out);
    if (*ground_cmd) return cmd_ground(c, out, err);
    if (*simulate) return cmd_simulate(c, out, err);
    if (*exists_ao) return cmd_exists_ao(c, out);
    if (*dot) return cmd_export_dot(c, out);
    if (*cat) return cmd_catalog(c, out);
  } catch (const CommandError& e) {
    err << "error: " << e.what() << "\n";
    return e.code();
  } catch (const ResourceError& e) {
    err << "resource guard: " << e.what() << "\n";
    return kExitResource;
  }
  return kExitBadInput;
}

}  // namespace taskground
