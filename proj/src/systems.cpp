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

#include "gradist/systems.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "gradist/errors.hpp"
#include "json.hpp"

namespace gradist {

using json = nlohmann::json;

namespace {

std::string num(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

bool weighted(SystemKind k) { return k == SystemKind::kFuzzyLts || k == SystemKind::kProbTs; }

}  // namespace

std::string to_string(SystemKind k) {
  switch (k) {
    case SystemKind::kMetricTs:
      return "metric_ts";
    case SystemKind::kFuzzyLts:
      return "fuzzy_lts";
    case SystemKind::kProbTs:
      return "prob_ts";
    case SystemKind::kStream:
      return "stream";
  }
  return "?";
}

SystemKind system_kind_from_string(const std::string& s) {
  if (s == "metric_ts") return SystemKind::kMetricTs;
  if (s == "fuzzy_lts") return SystemKind::kFuzzyLts;
  if (s == "prob_ts") return SystemKind::kProbTs;
  if (s == "stream") return SystemKind::kStream;
  throw ParseError("unknown system kind '" + s + "'");
}

std::size_t Coalgebra::state_index(const std::string& name) const {
  auto it = std::find(states.begin(), states.end(), name);
  if (it == states.end()) throw ValidationError("unknown state '" + name + "'");
  return static_cast<std::size_t>(it - states.begin());
}

FinSet<Successor> Coalgebra::successors(std::size_t x) const {
  FinSet<Successor> s;
  for (const Transition& t : trans.at(x)) s.elements.insert({t.label, t.target});
  return s;
}

FuzzySet<Successor> Coalgebra::fuzzy_successors(std::size_t x) const {
  FuzzySet<Successor> s;
  for (const Transition& t : trans.at(x)) s.join({t.label, t.target}, t.weight);
  return s;
}

FinDist<Successor> Coalgebra::distribution(std::size_t x) const {
  FinDist<Successor> d;
  for (const Transition& t : trans.at(x)) d.weights[{t.label, t.target}] += t.weight;
  return d;
}

Successor Coalgebra::stream_successor(std::size_t x) const {
  const auto& out = trans.at(x);
  if (out.size() != 1)
    throw ValidationError("stream state '" + states.at(x) + "' must have exactly one successor");
  return {out.front().label, out.front().target};
}

std::vector<Finding> validate_system(const Coalgebra& c) {
  std::vector<Finding> f;
  const std::size_t n = c.num_states();
  if (n == 0) f.push_back({"states", "no states declared"});
  {
    std::set<std::string> seen;
    for (const auto& s : c.states)
      if (!seen.insert(s).second) f.push_back({"states", "duplicate state '" + s + "'"});
  }
  if (c.labels.size() == 0) f.push_back({"labels", "no labels declared"});
  if (c.kind == SystemKind::kFuzzyLts && !c.labels.is_discrete())
    f.push_back({"labels.metric", "fuzzy_lts requires a discrete label space"});
  if (c.state_metric && c.state_metric->size() != n)
    f.push_back({"state_metric", "state metric size does not match the state count"});
  if (c.trans.size() != n) {
    f.push_back({"trans", "transition table has " + std::to_string(c.trans.size()) +
                              " rows for " + std::to_string(n) + " states"});
    return f;
  }

  for (std::size_t x = 0; x < n; ++x) {
    const std::string loc = "trans." + c.states[x];
    const auto& out = c.trans[x];
    std::set<Successor> seen;
    double mass = 0.0;
    for (std::size_t k = 0; k < out.size(); ++k) {
      const Transition& t = out[k];
      const std::string eloc = loc + "[" + std::to_string(k) + "]";
      if (t.label >= c.labels.size()) f.push_back({eloc, "undeclared label"});
      if (t.target >= n) f.push_back({eloc, "undeclared target state"});
      if (!seen.insert({t.label, t.target}).second)
        f.push_back({eloc, "duplicate (label, target) pair"});
      if (weighted(c.kind)) {
        if (!(t.weight > 0.0 && t.weight <= 1.0))
          f.push_back({eloc, "weight " + num(t.weight) + " outside (0,1]"});
      } else if (t.weight != 1.0) {
        f.push_back({eloc, "unweighted kind carries weight " + num(t.weight)});
      }
      mass += t.weight;
    }
    switch (c.kind) {
      case SystemKind::kProbTs:
        if (out.empty())
          f.push_back({loc, "no outgoing distribution"});
        else if (std::abs(mass - 1.0) > kTol)
          f.push_back({loc, "mass " + num(mass) + " != 1"});
        break;
      case SystemKind::kStream:
        if (out.size() != 1)
          f.push_back({loc, "stream state needs exactly one successor, has " +
                                std::to_string(out.size())});
        break;
      case SystemKind::kMetricTs:
      case SystemKind::kFuzzyLts:
        break;
    }
  }
  return f;
}

namespace {

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(where + ": missing key '" + key + "'");
  return j.at(key);
}

std::vector<std::string> string_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw ParseError(where + ": expected an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::vector<std::vector<double>> number_matrix(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected a matrix");
  std::vector<std::vector<double>> m;
  for (const auto& row : j) {
    if (!row.is_array()) throw ParseError(where + ": expected a matrix");
    std::vector<double> r;
    for (const auto& e : row) {
      if (!e.is_number()) throw ParseError(where + ": matrix entries must be numbers");
      r.push_back(e.get<double>());
    }
    m.push_back(std::move(r));
  }
  return m;
}

template <class F>
auto as_validation(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const ValidationError& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

}  // namespace

Coalgebra parse_system(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw ParseError("system file must be a JSON object");

  Coalgebra c;
  const json& kind = require(root, "kind", "system");
  if (!kind.is_string()) throw ParseError("kind: expected a string");
  c.kind = system_kind_from_string(kind.get<std::string>());

  const json& labels = require(root, "labels", "system");
  auto names = string_list(require(labels, "names", "labels"), "labels.names");
  const json& lm = require(labels, "metric", "labels");
  if (lm.is_string()) {
    if (lm.get<std::string>() != "discrete")
      throw ParseError("labels.metric: expected \"discrete\" or a matrix");
    c.labels = as_validation("labels.metric", [&] { return discrete_metric(names); });
  } else {
    auto m = number_matrix(lm, "labels.metric");
    c.labels = as_validation("labels.metric", [&] {
      return validate_metric(names, m, MetricKind::kPseudometric);
    });
  }

  c.states = string_list(require(root, "states", "system"), "states");
  if (root.contains("state_metric")) {
    auto m = number_matrix(root.at("state_metric"), "state_metric");
    c.state_metric = as_validation("state_metric", [&] {
      return validate_metric(c.states, m, MetricKind::kPseudometric);
    });
    c.has_custom_state_metric = true;
  } else {
    c.state_metric = as_validation("states", [&] { return discrete_metric(c.states); });
  }

  const json& trans = require(root, "trans", "system");
  if (!trans.is_object()) throw ParseError("trans: expected an object keyed by state");
  c.trans.assign(c.states.size(), {});
  std::vector<Finding> findings;
  for (const auto& [src, edges] : trans.items()) {
    const std::string loc = "trans." + src;
    auto sit = std::find(c.states.begin(), c.states.end(), src);
    if (sit == c.states.end()) {
      findings.push_back({loc, "undeclared source state '" + src + "'"});
      continue;
    }
    const std::size_t x = static_cast<std::size_t>(sit - c.states.begin());
    if (!edges.is_array()) throw ParseError(loc + ": expected an array of edges");
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const json& e = edges[k];
      const std::string eloc = loc + "[" + std::to_string(k) + "]";
      const json& lab = require(e, "label", eloc);
      const json& to = require(e, "to", eloc);
      if (!lab.is_string() || !to.is_string())
        throw ParseError(eloc + ": label and to must be strings");
      Transition t;
      auto li = c.labels.find(lab.get<std::string>());
      auto ti = std::find(c.states.begin(), c.states.end(), to.get<std::string>());
      if (!li) {
        findings.push_back({eloc, "undeclared label '" + lab.get<std::string>() + "'"});
        continue;
      }
      if (ti == c.states.end()) {
        findings.push_back({eloc, "undeclared target state '" + to.get<std::string>() + "'"});
        continue;
      }
      t.label = *li;
      t.target = static_cast<std::size_t>(ti - c.states.begin());
      if (weighted(c.kind)) {
        const json& w = require(e, "w", eloc);
        if (!w.is_number()) throw ParseError(eloc + ": w must be a number");
        t.weight = w.get<double>();
      } else if (e.contains("w")) {
        throw ParseError(eloc + ": w is not allowed for " + to_string(c.kind));
      }
      c.trans[x].push_back(t);
    }
  }
  auto more = validate_system(c);
  findings.insert(findings.end(), more.begin(), more.end());
  if (!findings.empty())
    throw ValidationError(findings.front().location + ": " + findings.front().message);
  return c;
}

Coalgebra load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open system file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_system(buf.str());
}

std::string save_system(const Coalgebra& c) {
  json root;
  root["kind"] = to_string(c.kind);
  root["labels"]["names"] = c.labels.points();
  if (c.labels.is_discrete())
    root["labels"]["metric"] = "discrete";
  else
    root["labels"]["metric"] = c.labels.matrix();
  root["states"] = c.states;
  if (c.has_custom_state_metric && c.state_metric) root["state_metric"] = c.state_metric->matrix();
  json trans = json::object();
  for (std::size_t x = 0; x < c.num_states(); ++x) {
    auto edges = c.trans[x];
    std::sort(edges.begin(), edges.end());
    json arr = json::array();
    for (const Transition& t : edges) {
      json e;
      e["label"] = c.labels.point(t.label);
      e["to"] = c.states[t.target];
      if (weighted(c.kind)) e["w"] = t.weight;
      arr.push_back(e);
    }
    trans[c.states[x]] = arr;
  }
  root["trans"] = trans;
  return root.dump(2);
}

}  // namespace gradist
