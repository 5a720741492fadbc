// Copyright 2026 The gradist Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// gradist: behavioural and logical distances of finite systems, derivation
// checking, and numeric reproductions.
//
// Exit codes: 0 success, 1 validation error or negative verdict, 2 parse
// error, 3 internal error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gradist/errors.hpp"
#include "gradist/formula.hpp"
#include "gradist/graded.hpp"
#include "gradist/logic.hpp"
#include "gradist/quant_eq.hpp"
#include "gradist/repro.hpp"
#include "gradist/systems.hpp"
#include "json.hpp"

namespace {

using json = nlohmann::json;
using namespace gradist;

struct Globals {
  std::size_t depth = kDefaultDepth;
  double grid = 0.05;
  double tol = kTol;
  bool json = false;
};

struct PairArgs {
  std::string system;
  std::string sem;
  std::string from;
  std::string to;
  double discount = 1.0;
};

Semantics default_semantics(SystemKind k) {
  switch (k) {
    case SystemKind::kMetricTs:
      return Semantics::kMetricTrace;
    case SystemKind::kFuzzyLts:
      return Semantics::kFuzzyTrace;
    case SystemKind::kProbTs:
      return Semantics::kProbTrace;
    case SystemKind::kStream:
      return Semantics::kStreamBranching;
  }
  return Semantics::kMetricTrace;
}

Semantics pick_semantics(const Coalgebra& c, const std::string& sem) {
  return sem.empty() ? default_semantics(c.kind) : semantics_from_string(sem);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_dist(const Globals& g, const PairArgs& a) {
  const Coalgebra c = load_system(a.system);
  const Semantics s = pick_semantics(c, a.sem);
  const std::size_t x = c.state_index(a.from), y = c.state_index(a.to);
  const auto r = behavioural_distance(c, s, x, y, g.depth, {a.discount});
  if (g.json) {
    print({{"semantics", to_string(s)},
           {"from", a.from},
           {"to", a.to},
           {"depth", g.depth},
           {"discount", a.discount},
           {"per_depth", r.per_depth},
           {"max", r.max},
           {"argmax_depth", r.argmax_depth}});
    return 0;
  }
  std::cout << "semantics " << to_string(s) << ", " << a.from << " vs " << a.to << "\n";
  std::cout << "n  d_n       running_max\n";
  double run = 0.0;
  for (std::size_t n = 0; n < r.per_depth.size(); ++n) {
    run = std::max(run, r.per_depth[n]);
    std::cout << n << "  " << fmt(r.per_depth[n]) << "  " << fmt(run) << "\n";
  }
  return 0;
}

PropConfig prop_config(const Globals& g, bool props, std::size_t size_cap) {
  PropConfig cfg;
  cfg.modal_only = !props;
  cfg.grid = g.grid;
  cfg.size_cap = size_cap;
  return cfg;
}

int cmd_logic(const Globals& g, const PairArgs& a, bool props, std::size_t size_cap) {
  const Coalgebra c = load_system(a.system);
  const Semantics s = pick_semantics(c, a.sem);
  const std::size_t x = c.state_index(a.from), y = c.state_index(a.to);
  const auto cfg = prop_config(g, props, size_cap);
  const auto l = logical_distance(c, s, x, y, g.depth, cfg);
  const auto b = behavioural_distance(c, s, x, y, g.depth);
  std::string flag = "TIGHT";
  if (l.value > b.max + g.tol)
    flag = "VIOLATION";
  else if (l.value < b.max - 1e-6)
    flag = "GAP";
  const std::string best = l.best ? l.best->to_string() : "";
  if (g.json) {
    print({{"semantics", to_string(s)},
           {"from", a.from},
           {"to", a.to},
           {"depth", g.depth},
           {"modal_only", cfg.modal_only},
           {"logical", l.value},
           {"witness", best},
           {"behavioural", b.max},
           {"flag", flag}});
  } else {
    std::cout << "logical distance " << fmt(l.value) << " via " << best << "\n";
    std::cout << "behavioural distance " << fmt(b.max) << "  " << flag << "\n";
  }
  return flag == "VIOLATION" ? 1 : 0;
}

int cmd_eval(const Globals& g, const std::string& system, const std::string& sem,
             const std::string& formula) {
  const Coalgebra c = load_system(system);
  const Semantics s = pick_semantics(c, sem);
  const Formula f = parse_formula(formula);
  const auto v = evaluate(f, c, s);
  if (g.json) {
    json vals = json::object();
    for (std::size_t i = 0; i < v.size(); ++i) vals[c.states[i]] = v[i];
    print({{"semantics", to_string(s)}, {"formula", f.to_string()}, {"depth", f.depth()},
           {"values", vals}});
    return 0;
  }
  std::cout << f.to_string() << " (depth " << f.depth() << ")\n";
  for (std::size_t i = 0; i < v.size(); ++i) std::cout << c.states[i] << "  " << fmt(v[i]) << "\n";
  return 0;
}

int cmd_witness(const Globals& g, const PairArgs& a, std::optional<double> target, bool props,
                std::size_t size_cap) {
  const Coalgebra c = load_system(a.system);
  const Semantics s = pick_semantics(c, a.sem);
  const std::size_t x = c.state_index(a.from), y = c.state_index(a.to);
  const double t = target ? *target : behavioural_distance(c, s, x, y, g.depth).max;
  const auto r = witness_search(c, s, x, y, g.depth, t, prop_config(g, props, size_cap));
  if (g.json) {
    print({{"target", t},
           {"found", r.witness.has_value()},
           {"witness", r.witness ? r.witness->to_string() : ""},
           {"best", r.best ? r.best->to_string() : ""},
           {"best_gap", r.best_gap}});
  } else if (r.witness) {
    std::cout << "witness " << r.witness->to_string() << " gap " << fmt(r.best_gap) << "\n";
  } else {
    std::cout << "no witness for " << fmt(t) << "; best " << (r.best ? r.best->to_string() : "")
              << " gap " << fmt(r.best_gap) << "\n";
  }
  return r.witness ? 0 : 1;
}

struct TheoryFlags {
  std::string base;
  std::string tensor;
  std::optional<double> discount;
  std::vector<std::string> labels;
};

int cmd_check(const Globals& g, const std::string& path, const TheoryFlags& tf) {
  ProofFile pf = load_proof(path);
  TheorySpec spec = pf.theory.value_or(TheorySpec{});
  if (!pf.theory && (tf.base.empty() || tf.labels.empty()))
    throw ValidationError("proof file has no theory; pass --base and --labels");
  if (!tf.base.empty()) spec.base = base_theory_from_string(tf.base);
  if (!tf.tensor.empty()) spec.tensor = tensor_variant_from_string(tf.tensor);
  if (tf.discount) spec.discount = *tf.discount;
  if (!tf.labels.empty()) {
    spec.labels = tf.labels;
    spec.label_metric.reset();
  }
  const GradedTheory theory = spec.build();
  CheckResult r;
  try {
    r = check_derivation(theory, pf.proof);
  } catch (const ArchUnsupported& e) {
    r = {false, "", e.what()};
  }
  if (g.json) {
    print({{"theory", theory.tag()},
           {"valid", r.ok},
           {"path", r.path},
           {"reason", r.reason},
           {"conclusion", pf.proof.conclusion.to_string()}});
  } else if (r.ok) {
    std::cout << "valid: " << pf.proof.conclusion.to_string() << "\n";
  } else {
    if (r.path.empty())
      std::cout << "rejected: " << r.reason << "\n";
    else
      std::cout << "invalid at " << r.path << ": " << r.reason << "\n";
  }
  return r.ok ? 0 : 1;
}

json report_json(const ReproReport& r) {
  json computed = json::array(), expected = json::array();
  for (const auto& c : r.computed) computed.push_back({{"name", c.name}, {"value", c.value}});
  for (const auto& e : r.expected)
    expected.push_back({{"name", e.name},
                        {"value", e.value},
                        {"tol", e.tol},
                        {"relation", e.relation == ReproExpectation::Relation::kAtMost ? "<=" : "="},
                        {"holds", e.holds(r.value(e.name))}});
  return {{"scenario", r.id}, {"computed", computed}, {"expected", expected}, {"pass", r.pass}};
}

void print_report(const ReproReport& r) {
  std::cout << "scenario " << r.id << "\n";
  for (const auto& c : r.computed) std::cout << "  " << c.name << " = " << fmt(c.value) << "\n";
  for (const auto& e : r.expected) {
    const bool le = e.relation == ReproExpectation::Relation::kAtMost;
    std::cout << "  expect " << e.name << (le ? " <= " : " = ") << fmt(e.value) << " (tol " << e.tol
              << ") " << (e.holds(r.value(e.name)) ? "ok" : "FAIL") << "\n";
  }
  std::cout << (r.pass ? "PASS" : "FAIL") << "\n";
}

int cmd_repro(const Globals& g, const std::string& scenario, std::optional<double> v,
              bool depth_set) {
  ReproOptions opt;
  opt.v = v;
  opt.grid = g.grid;
  if (depth_set) opt.depth = g.depth;
  std::vector<std::string> ids =
      scenario == "all" ? repro_scenarios() : std::vector<std::string>{scenario};
  bool pass = true;
  json all = json::array();
  for (const auto& id : ids) {
    const auto r = run_repro(id, opt);
    pass = pass && r.pass;
    if (g.json)
      all.push_back(report_json(r));
    else
      print_report(r);
  }
  if (g.json) print(ids.size() == 1 ? all[0] : all);
  return pass ? 0 : 1;
}

int cmd_validate(const Globals& g, const std::string& path) {
  const Coalgebra c = load_system(path);
  std::size_t edges = 0;
  for (const auto& t : c.trans) edges += t.size();
  if (g.json) {
    print({{"valid", true},
           {"kind", to_string(c.kind)},
           {"states", c.num_states()},
           {"labels", c.labels.size()},
           {"transitions", edges}});
  } else {
    std::cout << "ok: " << to_string(c.kind) << ", " << c.num_states() << " states, "
              << c.labels.size() << " labels, " << edges << " transitions\n";
  }
  return 0;
}

void add_pair(CLI::App* sub, PairArgs& a) {
  sub->add_option("system", a.system, "system JSON file")->required();
  sub->add_option("--sem", a.sem, "semantics (default: from the system kind)");
  sub->add_option("--from", a.from, "first state")->required();
  sub->add_option("--to", a.to, "second state")->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gradist: graded behavioural and logical distances"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  auto* depth_opt = app.add_option("--depth", g.depth, "maximal depth")->capture_default_str();
  app.add_option("--grid", g.grid, "constant grid step")->capture_default_str();
  app.add_option("--tol", g.tol, "comparison tolerance")->capture_default_str();
  app.add_flag("--json", g.json, "machine-readable output");

  PairArgs dist_args;
  auto* dist = app.add_subcommand("dist", "per-depth behavioural distance");
  add_pair(dist, dist_args);
  dist->add_option("--discount", dist_args.discount, "trace discount in (0,1]");

  PairArgs logic_args;
  bool props = false;
  std::size_t size_cap = 0;
  auto* logic = app.add_subcommand("logic", "logical distance and best formula");
  add_pair(logic, logic_args);
  logic->add_flag("--props", props, "include the propositional operators");
  logic->add_option("--size-cap", size_cap, "maximal formula size (0: default)");

  std::string eval_system, eval_sem, eval_formula;
  auto* eval = app.add_subcommand("eval", "truth values of a formula");
  eval->add_option("system", eval_system, "system JSON file")->required();
  eval->add_option("--sem", eval_sem, "semantics");
  eval->add_option("--formula,-f", eval_formula, "formula text")->required();

  PairArgs wit_args;
  std::optional<double> target;
  bool wit_props = false;
  std::size_t wit_cap = 0;
  auto* wit = app.add_subcommand("witness", "distinguishing formula search");
  add_pair(wit, wit_args);
  wit->add_option("--target", target, "gap to reach (default: behavioural distance)");
  wit->add_flag("--props", wit_props, "include the propositional operators");
  wit->add_option("--size-cap", wit_cap, "maximal formula size (0: default)");

  std::string proof_path;
  TheoryFlags tf;
  auto* check = app.add_subcommand("check", "check a derivation");
  check->add_option("proof", proof_path, "proof JSON file")->required();
  check->add_option("--base", tf.base, "powerset, fuzzy or dist");
  check->add_option("--tensor", tf.tensor, "sup, manhattan or euclidean");
  check->add_option("--discount", tf.discount, "tensor discount");
  check->add_option("--labels", tf.labels, "discrete labels")->delimiter(',');

  std::string scenario;
  std::optional<double> v;
  auto* repro = app.add_subcommand("repro", "numeric reproductions");
  repro->add_option("scenario", scenario,
                    "stream, fig1_metric, fig1_discrete, kantorovich_sup, coupling_bound, all")
      ->required();
  repro->add_option("--v", v, "label distance for fig1_metric and coupling_bound");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "validate a system file");
  validate->add_option("system", validate_path, "system JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*dist) return cmd_dist(g, dist_args);
    if (*logic) return cmd_logic(g, logic_args, props, size_cap);
    if (*eval) return cmd_eval(g, eval_system, eval_sem, eval_formula);
    if (*wit) return cmd_witness(g, wit_args, target, wit_props, wit_cap);
    if (*check) return cmd_check(g, proof_path, tf);
    if (*repro) return cmd_repro(g, scenario, v, depth_opt->count() > 0);
    if (*validate) return cmd_validate(g, validate_path);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
