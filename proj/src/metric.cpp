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

#include "gradist/metric.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gradist/errors.hpp"

namespace gradist {

namespace {

std::string pair_name(const std::vector<std::string>& pts, std::size_t i, std::size_t j) {
  return "(" + pts[i] + ", " + pts[j] + ")";
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

std::size_t FinMetric::index_of(const std::string& name) const {
  if (auto i = find(name)) return *i;
  throw std::out_of_range("unknown point '" + name + "'");
}

std::optional<std::size_t> FinMetric::find(const std::string& name) const {
  auto it = std::find(points_.begin(), points_.end(), name);
  if (it == points_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - points_.begin());
}

bool FinMetric::is_discrete() const {
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && (*this)(i, j) != 1.0) return false;
  return true;
}

std::vector<std::vector<double>> FinMetric::matrix() const {
  const std::size_t n = size();
  std::vector<std::vector<double>> m(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = (*this)(i, j);
  return m;
}

FinMetric validate_metric(std::vector<std::string> points,
                          const std::vector<std::vector<double>>& matrix, MetricKind kind) {
  const std::size_t n = points.size();
  if (matrix.size() != n)
    throw RangeError("distance matrix has " + std::to_string(matrix.size()) + " rows for " +
                     std::to_string(n) + " points");
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i].size() != n)
      throw RangeError("distance matrix row " + std::to_string(i) + " is not of length " +
                       std::to_string(n));
  }
  std::set<std::string> seen;
  for (const auto& p : points)
    if (!seen.insert(p).second) throw RangeError("duplicate point id '" + p + "'");

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double d = matrix[i][j];
      if (!std::isfinite(d) || d < 0.0 || d > 1.0)
        throw RangeError("distance " + pair_name(points, i, j) + " = " + num(d) +
                         " outside [0,1]");
    }
  for (std::size_t i = 0; i < n; ++i)
    if (matrix[i][i] > kTol)
      throw RangeError("reflexivity fails at " + points[i] + ": d = " + num(matrix[i][i]));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(matrix[i][j] - matrix[j][i]) > kTol)
        throw AsymmetryError("asymmetric distance " + pair_name(points, i, j) + ": " +
                             num(matrix[i][j]) + " vs " + num(matrix[j][i]));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (matrix[i][k] > matrix[i][j] + matrix[j][k] + kTol)
          throw TriangleError("triangle inequality fails: d" + pair_name(points, i, k) + " = " +
                              num(matrix[i][k]) + " > d" + pair_name(points, i, j) + " + d" +
                              pair_name(points, j, k) + " = " +
                              num(matrix[i][j] + matrix[j][k]));
  if (kind == MetricKind::kMetric) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (matrix[i][j] <= kTol)
          throw SeparationError("distinct points " + pair_name(points, i, j) +
                                " at distance 0");
  }

  FinMetric m;
  m.points_ = std::move(points);
  m.kind_ = kind;
  m.dist_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m.dist_[i * n + j] = i == j ? 0.0 : matrix[i][j];
  return m;
}

FinMetric discrete_metric(std::vector<std::string> points) {
  const std::size_t n = points.size();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 1.0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 0.0;
  return validate_metric(std::move(points), m, MetricKind::kMetric);
}

TensorKind::TensorKind(TensorVariant variant, double discount)
    : variant_(variant), discount_(discount) {
  if (!(discount > 0.0 && discount <= 1.0))
    throw RangeError("tensor discount " + num(discount) + " outside (0,1]");
}

double TensorKind::combine(double head, double tail) const {
  const double y = discount_ * tail;
  switch (variant_) {
    case TensorVariant::kSup:
      return clamp01(std::max(head, y));
    case TensorVariant::kManhattan:
      return clamp01(head + y);
    case TensorVariant::kEuclidean:
      return clamp01(std::sqrt(head * head + y * y));
  }
  return 1.0;
}

std::string to_string(TensorVariant v) {
  switch (v) {
    case TensorVariant::kSup:
      return "sup";
    case TensorVariant::kManhattan:
      return "manhattan";
    case TensorVariant::kEuclidean:
      return "euclidean";
  }
  return "?";
}

TensorVariant tensor_variant_from_string(const std::string& s) {
  if (s == "sup") return TensorVariant::kSup;
  if (s == "manhattan") return TensorVariant::kManhattan;
  if (s == "euclidean") return TensorVariant::kEuclidean;
  throw ParseError("unknown tensor '" + s + "' (expected sup, manhattan or euclidean)");
}

FinMetric k_tensor(const FinMetric& a, const FinMetric& b, const TensorKind& t) {
  const std::size_t na = a.size(), nb = b.size();
  std::vector<std::string> pts;
  pts.reserve(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) pts.push_back(a.point(i) + "," + b.point(j));
  std::vector<std::vector<double>> m(na * nb, std::vector<double>(na * nb));
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      for (std::size_t k = 0; k < na; ++k)
        for (std::size_t l = 0; l < nb; ++l)
          m[i * nb + j][k * nb + l] = t.combine(a(i, k), b(j, l));
  return validate_metric(std::move(pts), m, MetricKind::kPseudometric);
}

double word_distance(const LabelSpace& labels, const Word& u, const Word& w,
                     const TensorKind& t) {
  if (u.size() != w.size()) throw RangeError("word_distance: words of different length");
  double d = 0.0;
  for (std::size_t i = u.size(); i-- > 0;) d = t.combine(labels(u[i], w[i]), d);
  return d;
}

std::string word_to_string(const LabelSpace& labels, const Word& w) {
  std::string s;
  for (std::size_t a : w) s += labels.point(a);
  return s;
}

FinMetric trace_space(const LabelSpace& labels, std::size_t n, const TensorKind& t,
                      std::size_t cap) {
  double count = std::pow(static_cast<double>(labels.size()), static_cast<double>(n));
  if (count > static_cast<double>(cap))
    throw SizeError("trace space |L|^n = " + num(count) + " exceeds cap " + std::to_string(cap));
  if (count * count > static_cast<double>(std::size_t{1} << 27))
    throw SizeError("trace space distance matrix for " + num(count) +
                    " words exceeds 2^27 entries");
  FinMetric space = validate_metric({""}, {{0.0}}, MetricKind::kPseudometric);
  // Prepend one label per round so that position i is discounted by delta^i.
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t nl = labels.size(), ns = space.size();
    std::vector<std::string> pts;
    std::vector<std::vector<double>> m(nl * ns, std::vector<double>(nl * ns));
    for (std::size_t a = 0; a < nl; ++a)
      for (std::size_t w = 0; w < ns; ++w) {
        pts.push_back(labels.point(a) + (space.point(w).empty() ? "" : "," + space.point(w)));
        for (std::size_t b = 0; b < nl; ++b)
          for (std::size_t v = 0; v < ns; ++v)
            m[a * ns + w][b * ns + v] = t.combine(labels(a, b), space(w, v));
      }
    space = validate_metric(std::move(pts), m, MetricKind::kPseudometric);
  }
  return space;
}

NonexpansiveReport check_nonexpansive(std::span<const double> f, const FinMetric& x) {
  if (f.size() != x.size())
    throw RangeError("map has " + std::to_string(f.size()) + " values for " +
                     std::to_string(x.size()) + " points");
  NonexpansiveReport r;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double excess = std::abs(f[i] - f[j]) - x(i, j);
      if (excess > kTol && excess > r.worst_excess) {
        r.ok = false;
        r.worst_excess = excess;
        r.worst_pair = {i, j};
      }
    }
  return r;
}

std::vector<std::vector<double>> induced_pseudometric(const std::vector<std::vector<double>>& fs,
                                                      std::size_t n) {
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (const auto& f : fs) {
    if (f.size() != n) throw RangeError("map size does not match the carrier");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::max(d[i][j], std::abs(f[i] - f[j]));
  }
  return d;
}

bool check_initial_cone(const std::vector<std::vector<double>>& fs, const FinMetric& x) {
  for (std::size_t k = 0; k < fs.size(); ++k) {
    auto r = check_nonexpansive(fs[k], x);
    if (!r.ok)
      throw NonexpansiveInputError("map #" + std::to_string(k) + " is not nonexpansive at " +
                                   pair_name(x.points(), r.worst_pair->first,
                                             r.worst_pair->second));
  }
  const auto induced = induced_pseudometric(fs, x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      if (induced[i][j] < x(i, j) - kTol) return false;
  return true;
}

bool check_normed_isometric(const std::vector<std::vector<double>>& fs, const FinMetric& x,
                            std::vector<double> eps_grid) {
  const std::size_t n = x.size();
  for (const auto& f : fs)
    if (f.size() != n) throw RangeError("map size does not match the carrier");
  if (eps_grid.empty()) {
    std::set<double> realized;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (x(i, j) > 0.0) realized.insert(x(i, j));
    eps_grid.push_back(0.0);
    for (double r : realized)
      if (r - 1e-6 > 0.0) eps_grid.push_back(r - 1e-6);
  }
  for (double eps : eps_grid)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        if (x(i, j) <= eps) continue;
        bool witnessed = std::any_of(fs.begin(), fs.end(), [&](const std::vector<double>& f) {
          return std::abs(f[i] - f[j]) > eps && std::max(f[i], f[j]) >= 1.0 - kTol;
        });
        if (!witnessed) return false;
      }
  return true;
}

}  // namespace gradist
