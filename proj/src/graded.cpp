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

#include "gradist/graded.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gradist/errors.hpp"

namespace gradist {

std::string to_string(Semantics s) {
  switch (s) {
    case Semantics::kMetricTrace:
      return "metric_trace";
    case Semantics::kFuzzyTrace:
      return "fuzzy_trace";
    case Semantics::kProbTrace:
      return "prob_trace";
    case Semantics::kStreamBranching:
      return "stream_branching";
  }
  return "?";
}

Semantics semantics_from_string(const std::string& s) {
  if (s == "metric_trace") return Semantics::kMetricTrace;
  if (s == "fuzzy_trace") return Semantics::kFuzzyTrace;
  if (s == "prob_trace") return Semantics::kProbTrace;
  if (s == "stream_branching" || s == "stream") return Semantics::kStreamBranching;
  throw ParseError("unknown semantics '" + s + "'");
}

SystemKind system_kind_for(Semantics s) {
  switch (s) {
    case Semantics::kMetricTrace:
      return SystemKind::kMetricTs;
    case Semantics::kFuzzyTrace:
      return SystemKind::kFuzzyLts;
    case Semantics::kProbTrace:
      return SystemKind::kProbTs;
    case Semantics::kStreamBranching:
      return SystemKind::kStream;
  }
  return SystemKind::kMetricTs;
}

void require_compatible(const Coalgebra& c, Semantics s) {
  if (c.kind != system_kind_for(s))
    throw SemanticsMismatch("semantics " + to_string(s) + " does not apply to a " +
                            to_string(c.kind) + " system");
}

TensorKind tensor_for(Semantics s, double discount) {
  return s == Semantics::kProbTrace ? TensorKind(TensorVariant::kManhattan, discount)
                                    : TensorKind(TensorVariant::kSup, discount);
}

double trace_word_distance(const LabelSpace& labels, Semantics s, const Word& u, const Word& w,
                           double discount) {
  if (s == Semantics::kFuzzyTrace) return u == w ? 0.0 : 1.0;
  return word_distance(labels, u, w, tensor_for(s, discount));
}

namespace {

Word prepend(std::size_t a, const Word& w) {
  Word out;
  out.reserve(w.size() + 1);
  out.push_back(a);
  out.insert(out.end(), w.begin(), w.end());
  return out;
}

auto concat = [](const std::pair<std::size_t, Word>& p) { return prepend(p.first, p.second); };

BehaviourAggregate unit_aggregate(Semantics s) {
  BehaviourAggregate b;
  b.semantics = s;
  b.depth = 0;
  switch (s) {
    case Semantics::kMetricTrace:
      b.value = set_unit(Word{});
      break;
    case Semantics::kFuzzyTrace:
      b.value = fuzzy_unit(Word{});
      break;
    case Semantics::kProbTrace:
      b.value = dist_unit(Word{});
      break;
    case Semantics::kStreamBranching:
      b.value = Word{};
      break;
  }
  return b;
}

BehaviourAggregate next_layer(const Coalgebra& c, Semantics s, std::size_t x,
                              const std::vector<BehaviourAggregate>& prev) {
  BehaviourAggregate b;
  b.semantics = s;
  b.depth = prev.front().depth + 1;
  switch (s) {
    case Semantics::kMetricTrace: {
      auto nested = lift_map(
          [&](const Successor& e) {
            return lift_map(concat, kleisli_step(e.first, prev[e.second].traces()));
          },
          c.successors(x));
      b.value = lift_flatten(nested);
      break;
    }
    case Semantics::kFuzzyTrace: {
      auto nested = lift_map(
          [&](const Successor& e) {
            return lift_map(concat, kleisli_step(e.first, prev[e.second].fuzzy_traces()));
          },
          c.fuzzy_successors(x));
      b.value = lift_flatten(nested);
      break;
    }
    case Semantics::kProbTrace: {
      auto nested = lift_map(
          [&](const Successor& e) {
            return lift_map(concat, kleisli_step(e.first, prev[e.second].trace_distribution()));
          },
          c.distribution(x));
      b.value = lift_flatten(nested);
      break;
    }
    case Semantics::kStreamBranching: {
      auto [a, next] = c.stream_successor(x);
      b.value = prepend(a, prev[next].prefix());
      break;
    }
  }
  return b;
}

// Layers 0..n of gamma^(k) for every state.
std::vector<std::vector<BehaviourAggregate>> behaviour_layers(const Coalgebra& c, Semantics s,
                                                              std::size_t n) {
  require_compatible(c, s);
  std::vector<std::vector<BehaviourAggregate>> layers;
  layers.emplace_back(c.num_states(), unit_aggregate(s));
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<BehaviourAggregate> layer;
    layer.reserve(c.num_states());
    for (std::size_t x = 0; x < c.num_states(); ++x) layer.push_back(next_layer(c, s, x, layers.back()));
    layers.push_back(std::move(layer));
  }
  return layers;
}

std::size_t word_count(std::size_t labels, std::size_t depth) {
  double n = std::pow(static_cast<double>(labels), static_cast<double>(depth));
  if (n >= static_cast<double>(std::numeric_limits<std::size_t>::max()))
    return std::numeric_limits<std::size_t>::max();
  return static_cast<std::size_t>(n);
}

std::vector<std::vector<double>> pairwise(const LabelSpace& labels,
                                          const std::vector<BehaviourAggregate>& layer,
                                          const DistanceOptions& opt) {
  const std::size_t n = layer.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      d[i][j] = d[j][i] = aggregate_distance(labels, layer[i], layer[j], opt);
  return d;
}

}  // namespace

std::vector<BehaviourAggregate> behaviour_map(const Coalgebra& c, Semantics s, std::size_t n) {
  return std::move(behaviour_layers(c, s, n).back());
}

double aggregate_distance(const LabelSpace& labels, const BehaviourAggregate& x,
                          const BehaviourAggregate& y, const DistanceOptions& opt) {
  if (x.semantics != y.semantics || x.depth != y.depth)
    throw SemanticsMismatch("aggregates of different semantics or depth");
  const Semantics s = x.semantics;
  auto d = [&](const Word& u, const Word& w) {
    return trace_word_distance(labels, s, u, w, opt.discount);
  };
  switch (s) {
    case Semantics::kMetricTrace:
      return hausdorff_distance(x.traces(), y.traces(), d);
    case Semantics::kFuzzyTrace:
      return fuzzy_hausdorff_distance(x.fuzzy_traces(), y.fuzzy_traces(), d,
                                      word_count(labels.size(), x.depth));
    case Semantics::kProbTrace:
      return kantorovich_distance(x.trace_distribution(), y.trace_distribution(), d).value;
    case Semantics::kStreamBranching:
      return d(x.prefix(), y.prefix());
  }
  return 0.0;
}

double depth_distance(const Coalgebra& c, Semantics s, std::size_t x, std::size_t y,
                      std::size_t n, const DistanceOptions& opt) {
  if (x >= c.num_states() || y >= c.num_states()) throw ValidationError("state out of range");
  const auto layer = behaviour_map(c, s, n);
  return aggregate_distance(c.labels, layer[x], layer[y], opt);
}

std::vector<std::vector<double>> depth_distance_matrix(const Coalgebra& c, Semantics s,
                                                       std::size_t n,
                                                       const DistanceOptions& opt) {
  return pairwise(c.labels, behaviour_map(c, s, n), opt);
}

BehaviouralDistance behavioural_distance(const Coalgebra& c, Semantics s, std::size_t x,
                                         std::size_t y, std::size_t max_depth,
                                         const DistanceOptions& opt) {
  if (x >= c.num_states() || y >= c.num_states()) throw ValidationError("state out of range");
  BehaviouralDistance r;
  const auto layers = behaviour_layers(c, s, max_depth);
  for (std::size_t n = 0; n <= max_depth; ++n) {
    const double d = aggregate_distance(c.labels, layers[n][x], layers[n][y], opt);
    r.per_depth.push_back(d);
    if (d > r.max) {
      r.max = d;
      r.argmax_depth = n;
    }
  }
  return r;
}

std::vector<std::vector<double>> behavioural_distance_matrix(const Coalgebra& c, Semantics s,
                                                             std::size_t max_depth,
                                                             const DistanceOptions& opt) {
  const auto layers = behaviour_layers(c, s, max_depth);
  const std::size_t n = c.num_states();
  std::vector<std::vector<double>> best(n, std::vector<double>(n, 0.0));
  for (const auto& layer : layers) {
    auto d = pairwise(c.labels, layer, opt);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) best[i][j] = std::max(best[i][j], d[i][j]);
  }
  return best;
}

FinDist<ValuedLabel> binarize_distribution(const FinDist<ValuedLabel>& pi) {
  FinDist<ValuedLabel> out;
  for (const auto& [atom, p] : pi.weights) {
    const auto [a, v] = atom;
    if (p * v > 0.0) out.weights[{a, 1.0}] += p * v;
    if (p * (1.0 - v) > 0.0) out.weights[{a, 0.0}] += p * (1.0 - v);
  }
  return out;
}

double valued_label_distance(const LabelSpace& labels, const ValuedLabel& p,
                             const ValuedLabel& q) {
  return clamp01(labels(p.first, q.first) + std::abs(p.second - q.second));
}

}  // namespace gradist
