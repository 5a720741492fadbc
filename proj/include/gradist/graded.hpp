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

// Graded trace semantics: depth-n behaviours of states in the graded trace
// monads T(L^n x -) and the bounded behavioural distance built on them.

#ifndef GRADIST_GRADED_HPP_
#define GRADIST_GRADED_HPP_

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gradist/liftings.hpp"
#include "gradist/metric.hpp"
#include "gradist/systems.hpp"

namespace gradist {

enum class Semantics { kMetricTrace, kFuzzyTrace, kProbTrace, kStreamBranching };

std::string to_string(Semantics s);
Semantics semantics_from_string(const std::string& s);

// The system kind a semantics applies to.
SystemKind system_kind_for(Semantics s);
// Throws SemanticsMismatch unless `s` applies to `c`.
void require_compatible(const Coalgebra& c, Semantics s);

// The trace tensor a semantics measures words with: sup for metric trace
// and streams, Manhattan for probabilistic traces. Fuzzy traces use the
// discrete metric on words instead.
TensorKind tensor_for(Semantics s, double discount = 1.0);

// Distance between words under a semantics (discrete for fuzzy traces).
double trace_word_distance(const LabelSpace& labels, Semantics s, const Word& u, const Word& w,
                           double discount = 1.0);

// Depth-n behaviour of one state.
struct BehaviourAggregate {
  Semantics semantics = Semantics::kMetricTrace;
  std::size_t depth = 0;
  std::variant<FinSet<Word>, FuzzySet<Word>, FinDist<Word>, Word> value;

  const FinSet<Word>& traces() const { return std::get<FinSet<Word>>(value); }
  const FuzzySet<Word>& fuzzy_traces() const { return std::get<FuzzySet<Word>>(value); }
  const FinDist<Word>& trace_distribution() const { return std::get<FinDist<Word>>(value); }
  const Word& prefix() const { return std::get<Word>(value); }

  bool operator==(const BehaviourAggregate&) const = default;
};

// Kleisli law L x T(-) -> T(L x -): pairs every support element with `a`.
template <class T>
FinSet<std::pair<std::size_t, T>> kleisli_step(std::size_t a, const FinSet<T>& v) {
  return lift_map([a](const T& x) { return std::pair<std::size_t, T>{a, x}; }, v);
}
template <class T>
FinDist<std::pair<std::size_t, T>> kleisli_step(std::size_t a, const FinDist<T>& v) {
  return lift_map([a](const T& x) { return std::pair<std::size_t, T>{a, x}; }, v);
}
template <class T>
FuzzySet<std::pair<std::size_t, T>> kleisli_step(std::size_t a, const FuzzySet<T>& v) {
  return lift_map([a](const T& x) { return std::pair<std::size_t, T>{a, x}; }, v);
}

// gamma^(n): the depth-n behaviour of every state, computed layer by layer
// as flatten . T(kleisli_step . (id x gamma^(n-1))) . gamma.
std::vector<BehaviourAggregate> behaviour_map(const Coalgebra& c, Semantics s, std::size_t n);

struct DistanceOptions {
  double discount = 1.0;
};

// Lifted distance between two aggregates of the same semantics and depth.
// `labels` supplies the ground metric on words.
double aggregate_distance(const LabelSpace& labels, const BehaviourAggregate& x,
                          const BehaviourAggregate& y, const DistanceOptions& opt = {});

double depth_distance(const Coalgebra& c, Semantics s, std::size_t x, std::size_t y,
                      std::size_t n, const DistanceOptions& opt = {});

// All pairwise depth-n distances, behaviours computed once.
std::vector<std::vector<double>> depth_distance_matrix(const Coalgebra& c, Semantics s,
                                                       std::size_t n,
                                                       const DistanceOptions& opt = {});

inline constexpr std::size_t kDefaultDepth = 4;

// d^{alpha,0..N}(x,y) and its running maximum. The maximum is only a lower
// bound of the unbounded supremum over all depths; the per-depth values are
// not monotone in general (deadlocks can make them drop).
struct BehaviouralDistance {
  std::vector<double> per_depth;
  double max = 0.0;
  std::size_t argmax_depth = 0;
};

BehaviouralDistance behavioural_distance(const Coalgebra& c, Semantics s, std::size_t x,
                                         std::size_t y, std::size_t max_depth,
                                         const DistanceOptions& opt = {});

// Running maximum over depths 0..N for every state pair.
std::vector<std::vector<double>> behavioural_distance_matrix(const Coalgebra& c, Semantics s,
                                                             std::size_t max_depth,
                                                             const DistanceOptions& opt = {});

// Atoms (label, value) of a distribution over L x [0,1].
using ValuedLabel = std::pair<std::size_t, double>;

// Replaces each atom p.(a, v) by p.v.(a, 1) + p.(1-v).(a, 0), dropping zero
// weights.
FinDist<ValuedLabel> binarize_distribution(const FinDist<ValuedLabel>& pi);

// Manhattan distance on L x [0,1]: d((a,u),(b,w)) = min(1, d(a,b) + |u-w|).
double valued_label_distance(const LabelSpace& labels, const ValuedLabel& p,
                             const ValuedLabel& q);

}  // namespace gradist

#endif  // GRADIST_GRADED_HPP_
