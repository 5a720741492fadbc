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

// Finite (pseudo)metric spaces with distances in [0,1], the depth-1 trace
// tensors, and the nonexpansiveness / initiality checks used to reason
// about families of [0,1]-valued maps.

#ifndef GRADIST_METRIC_HPP_
#define GRADIST_METRIC_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gradist {

// Absolute tolerance used by every comparison in the library.
inline constexpr double kTol = 1e-9;

inline double clamp01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

enum class MetricKind { kMetric, kPseudometric };

// A finite pseudometric space. Instances are immutable and can only be
// obtained through validate_metric (or operations built on it), so every
// FinMetric satisfies the axioms.
class FinMetric {
 public:
  std::size_t size() const { return points_.size(); }
  const std::vector<std::string>& points() const { return points_; }
  const std::string& point(std::size_t i) const { return points_[i]; }
  double operator()(std::size_t i, std::size_t j) const { return dist_[i * size() + j]; }
  MetricKind kind() const { return kind_; }

  // Index of the named point; throws std::out_of_range when absent.
  std::size_t index_of(const std::string& name) const;
  std::optional<std::size_t> find(const std::string& name) const;

  // True iff every off-diagonal distance is 1.
  bool is_discrete() const;

  // Row-major copy of the distance matrix.
  std::vector<std::vector<double>> matrix() const;

  friend FinMetric validate_metric(std::vector<std::string> points,
                                   const std::vector<std::vector<double>>& matrix,
                                   MetricKind kind);

 private:
  FinMetric() = default;
  std::vector<std::string> points_;
  std::vector<double> dist_;
  MetricKind kind_ = MetricKind::kPseudometric;
};

// Checks range, reflexivity, symmetry, triangle inequality and (for
// kMetric) separation, in that order; throws the error of the first
// violated axiom (RangeError, AsymmetryError, TriangleError,
// SeparationError). Non-square input and duplicate ids are RangeErrors.
FinMetric validate_metric(std::vector<std::string> points,
                          const std::vector<std::vector<double>>& matrix,
                          MetricKind kind = MetricKind::kPseudometric);

// Discrete metric (all off-diagonal distances 1).
FinMetric discrete_metric(std::vector<std::string> points);

// Label spaces are plain finite metric spaces.
using LabelSpace = FinMetric;

enum class TensorVariant { kSup, kManhattan, kEuclidean };

// Depth-1 trace tensor k_delta(x, y) = k(x, delta * y), truncated to [0,1].
class TensorKind {
 public:
  TensorKind() = default;
  // Throws RangeError unless discount lies in (0,1].
  TensorKind(TensorVariant variant, double discount = 1.0);

  TensorVariant variant() const { return variant_; }
  double discount() const { return discount_; }

  double combine(double head, double tail) const;

  static TensorKind sup() { return TensorKind(TensorVariant::kSup); }
  static TensorKind manhattan() { return TensorKind(TensorVariant::kManhattan); }
  static TensorKind euclidean() { return TensorKind(TensorVariant::kEuclidean); }

 private:
  TensorVariant variant_ = TensorVariant::kSup;
  double discount_ = 1.0;
};

std::string to_string(TensorVariant v);
TensorVariant tensor_variant_from_string(const std::string& s);

// Product space A x B with d((a,b),(a',b')) = k(d_A(a,a'), delta * d_B(b,b')).
// Point ids are "<a>,<b>"; point (i, j) has index i * |B| + j.
FinMetric k_tensor(const FinMetric& a, const FinMetric& b, const TensorKind& t);

// Words over a label space, as label indices.
using Word = std::vector<std::size_t>;

// Distance between equal-length words: the head label is undiscounted and the
// remaining suffix is discounted, d(a.w, b.w') = k(d(a,b), delta * d(w,w')).
double word_distance(const LabelSpace& labels, const Word& u, const Word& w,
                     const TensorKind& t);

std::string word_to_string(const LabelSpace& labels, const Word& w);

inline constexpr std::size_t kDefaultTraceCap = 1000000;

// The space L^n of length-n words with the trace tensor metric; n = 0 gives
// the one-point space {""}. Words are named by comma-joined labels and
// enumerated in lexicographic order of label indices. Throws SizeError when
// |L|^n exceeds `cap`, or when the dense distance matrix would exceed 2^27
// entries.
FinMetric trace_space(const LabelSpace& labels, std::size_t n, const TensorKind& t,
                      std::size_t cap = kDefaultTraceCap);

struct NonexpansiveReport {
  bool ok = true;
  // Pair with maximal excess |f(x)-f(y)| - d(x,y), set when !ok.
  std::optional<std::pair<std::size_t, std::size_t>> worst_pair;
  double worst_excess = 0.0;
};

NonexpansiveReport check_nonexpansive(std::span<const double> f, const FinMetric& x);

// True iff d(x,y) = sup_i |f_i(x) - f_i(y)| on all pairs (the family is an
// initial cone). Throws NonexpansiveInputError if some f_i is not
// nonexpansive; a size mismatch is a RangeError.
bool check_initial_cone(const std::vector<std::vector<double>>& fs, const FinMetric& x);

// Normed isometry: for every eps in the grid and every pair with
// d(x,y) > eps, some f has |f(x)-f(y)| > eps and f(x) v f(y) = 1. When
// `eps_grid` is empty the grid is {0} plus every realized positive distance
// minus 1e-6.
bool check_normed_isometric(const std::vector<std::vector<double>>& fs, const FinMetric& x,
                            std::vector<double> eps_grid = {});

// The sup-pseudometric induced by a family of maps.
std::vector<std::vector<double>> induced_pseudometric(const std::vector<std::vector<double>>& fs,
                                                      std::size_t n);

}  // namespace gradist

#endif  // GRADIST_METRIC_HPP_
