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

#include "gradist/repro.hpp"

#include <algorithm>
#include <cmath>

#include "gradist/errors.hpp"
#include "gradist/graded.hpp"
#include "gradist/logic.hpp"
#include "gradist/quant_eq.hpp"

namespace gradist {

Coalgebra fig1_system(std::optional<double> v) {
  Coalgebra c;
  c.kind = SystemKind::kProbTs;
  c.labels = v ? validate_metric({"a", "b"}, {{0.0, *v}, {*v, 0.0}}) : discrete_metric({"a", "b"});
  c.states = {"x", "p_a", "p_b", "y", "q_a", "q_b"};
  c.trans = {{{0, 1, 0.5}, {1, 2, 0.5}}, {{0, 1, 1.0}}, {{1, 2, 1.0}},
             {{0, 5, 0.5}, {1, 4, 0.5}}, {{0, 4, 1.0}}, {{1, 5, 1.0}}};
  return c;
}

LabelSpace stream_labels() { return validate_metric({"a", "b"}, {{0.0, 0.8}, {0.8, 0.0}}); }

FinMetric stream_values() { return validate_metric({"v", "w"}, {{0.0, 0.5}, {0.5, 0.0}}); }

FinMetric stream_space() { return k_tensor(stream_labels(), stream_values(), TensorKind::sup()); }

std::vector<double> stream_modal(std::size_t a, const std::vector<double>& f) {
  const LabelSpace l = stream_labels();
  const std::size_t nv = f.size();
  std::vector<double> out(l.size() * nv);
  for (std::size_t b = 0; b < l.size(); ++b)
    for (std::size_t u = 0; u < nv; ++u) out[b * nv + u] = std::min(1.0 - l(a, b), f[u]);
  return out;
}

bool ReproExpectation::holds(double computed) const {
  if (relation == Relation::kAtMost) return computed <= value + tol;
  return std::abs(computed - value) <= tol;
}

double ReproReport::value(const std::string& name) const {
  for (const auto& c : computed)
    if (c.name == name) return c.value;
  throw ValidationError("no computed value '" + name + "'");
}

std::vector<std::string> repro_scenarios() {
  return {"stream", "fig1_metric", "fig1_discrete", "kantorovich_sup", "coupling_bound"};
}

double coupling_bound(double v, double grid) {
  if (!(grid > 0.0)) throw RangeError("grid step must be positive");
  const LabelSpace labels = validate_metric({"a", "b"}, {{0.0, v}, {v, 0.0}});
  const auto steps = static_cast<std::size_t>(std::floor(1.0 / grid + 1e-9));
  auto d = [&](const ValuedLabel& p, const ValuedLabel& q) {
    return valued_label_distance(labels, p, q);
  };
  double best = 0.0;
  for (std::size_t i = 0; i <= steps; ++i)
    for (std::size_t j = 0; j <= steps; ++j) {
      const double va = std::min(1.0, static_cast<double>(i) * grid);
      const double vb = std::min(1.0, static_cast<double>(j) * grid);
      if (std::abs(va - vb) > v + 1e-12) continue;
      FinDist<ValuedLabel> mu, nu;
      mu.weights[{0, va}] += 0.5;
      mu.weights[{1, vb}] += 0.5;
      nu.weights[{0, vb}] += 0.5;
      nu.weights[{1, va}] += 0.5;
      const double k =
          kantorovich_distance(binarize_distribution(mu), binarize_distribution(nu), d).value;
      best = std::max(best, k);
    }
  return best;
}

namespace {

using Rel = ReproExpectation::Relation;

ReproReport stream_report() {
  ReproReport r;
  r.id = "stream";
  const FinMetric x = stream_space();
  const std::vector<double> f{0.75, 0.25};
  const auto af = stream_modal(0, f);
  const auto bf = stream_modal(1, f);
  const std::size_t av = x.index_of("a,v"), bw = x.index_of("b,w");
  const bool cone = check_initial_cone({af, bf}, x);
  const std::vector<double> f1{1.0, 0.5}, f2{0.5, 1.0};
  const bool normed = check_normed_isometric(
      {stream_modal(0, f1), stream_modal(0, f2), stream_modal(1, f1), stream_modal(1, f2)}, x);
  r.computed = {{"gap_a", std::abs(af[av] - af[bw])},
                {"gap_b", std::abs(bf[av] - bf[bw])},
                {"distance", x(av, bw)},
                {"initial_cone", cone ? 1.0 : 0.0},
                {"normed_isometric", normed ? 1.0 : 0.0}};
  r.expected = {{"gap_a", 0.55, 1e-12},
                {"gap_b", 0.05, 1e-12},
                {"distance", 0.8, 1e-12},
                {"initial_cone", 0.0, 0.0},
                {"normed_isometric", 1.0, 0.0}};
  return r;
}

ReproReport fig1_report(std::optional<double> v, const ReproOptions& opt) {
  ReproReport r;
  const Coalgebra c = fig1_system(v);
  const std::size_t x = c.state_index("x"), y = c.state_index("y");
  const double behav2 = depth_distance(c, Semantics::kProbTrace, x, y, 2);
  if (v) {
    r.id = "fig1_metric";
    const auto logic = logical_distance(c, Semantics::kProbTrace, x, y, opt.depth);
    r.computed = {{"v", *v}, {"behavioural_depth2", behav2}, {"logical", logic.value}};
    r.expected = {{"behavioural_depth2", *v, 1e-6},
                  {"logical", *v * *v, 1e-6, Rel::kAtMost}};
  } else {
    r.id = "fig1_discrete";
    const auto logic = logical_distance(c, Semantics::kProbTrace, x, y, std::min<std::size_t>(opt.depth, 3));
    r.computed = {{"behavioural_depth2", behav2}, {"logical", logic.value}};
    r.expected = {{"behavioural_depth2", 1.0, 1e-9}, {"logical", 0.5, 1e-9}};
  }
  return r;
}

ReproReport kantorovich_sup_report() {
  ReproReport r;
  r.id = "kantorovich_sup";
  const FinMetric pts = discrete_metric({"x", "y"});
  const LabelSpace labels = validate_metric({"a", "b"}, {{0.0, 0.5}, {0.5, 0.0}});
  const Term s = parse_term("p(0.5, x, y)"), t = parse_term("x");
  const Term as = Term::app("a", {s}), bt = Term::app("b", {t});
  const GradedTheory sup = build_trace_theory(BaseTheory::kDist, labels, TensorKind::sup());
  const GradedTheory man = build_trace_theory(BaseTheory::kDist, labels, TensorKind::manhattan());
  const double dst = free_model_distance(sup, s, t, pts);
  r.computed = {{"d_s_t", dst},
                {"d_pair_sup", sup.tensor().combine(labels(0, 1), dst)},
                {"d_image_sup", free_model_distance(sup, as, bt, pts)},
                {"d_pair_manhattan", man.tensor().combine(labels(0, 1), dst)},
                {"d_image_manhattan", free_model_distance(man, as, bt, pts)}};
  r.expected = {{"d_s_t", 0.5, 1e-9},
                {"d_pair_sup", 0.5, 1e-9},
                {"d_image_sup", 0.75, 1e-9},
                {"d_image_manhattan", r.value("d_pair_manhattan"), 1e-9, Rel::kAtMost}};
  return r;
}

ReproReport coupling_report(const ReproOptions& opt) {
  ReproReport r;
  r.id = "coupling_bound";
  const double v = opt.v.value_or(0.5);
  r.computed = {{"v", v}, {"max_binarized_kantorovich", coupling_bound(v, opt.grid)}};
  r.expected = {{"max_binarized_kantorovich", v * v, 1e-6, Rel::kAtMost}};
  if (std::abs(std::round(v / opt.grid) * opt.grid - v) < 1e-9)
    r.expected.push_back({"max_binarized_kantorovich", v * v, 1e-6});
  return r;
}

}  // namespace

ReproReport run_repro(const std::string& id, const ReproOptions& opt) {
  ReproReport r;
  if (id == "stream") {
    r = stream_report();
  } else if (id == "fig1_metric") {
    r = fig1_report(opt.v.value_or(0.5), opt);
  } else if (id == "fig1_discrete") {
    r = fig1_report(std::nullopt, opt);
  } else if (id == "kantorovich_sup") {
    r = kantorovich_sup_report();
  } else if (id == "coupling_bound") {
    r = coupling_report(opt);
  } else {
    throw ValidationError("unknown scenario '" + id + "'");
  }
  r.pass = std::all_of(r.expected.begin(), r.expected.end(),
                       [&](const ReproExpectation& e) { return e.holds(r.value(e.name)); });
  return r;
}

}  // namespace gradist
