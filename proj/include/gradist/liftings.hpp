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

// The three liftings to finite metric spaces:
//
//   FinSet<T>    finite powerset,      Hausdorff distance
//   FinDist<T>   finite distributions, Kantorovich distance (exact LP)
//   FuzzySet<T>  finite fuzzy sets,    fuzzy Hausdorff distance
//
// together with their monad structure (unit, map, flatten). Every container
// is generic in the element type, so the same code lifts point indices of a
// FinMetric, words of a trace space, or lifted values themselves. Distances
// take the ground distance as a callable `double(const T&, const T&)`.

#ifndef GRADIST_LIFTINGS_HPP_
#define GRADIST_LIFTINGS_HPP_

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gradist/errors.hpp"
#include "gradist/metric.hpp"
#include "gradist/transport.hpp"

namespace gradist {

template <class T>
struct FinSet {
  std::set<T> elements;

  FinSet() = default;
  explicit FinSet(std::set<T> e) : elements(std::move(e)) {}
  FinSet(std::initializer_list<T> e) : elements(e) {}

  bool empty() const { return elements.empty(); }
  std::size_t size() const { return elements.size(); }
  auto operator<=>(const FinSet&) const = default;
};

// Weights are strictly positive and sum to 1 within 1e-9; the support is
// never empty. Use make_dist to build one from raw weights.
template <class T>
struct FinDist {
  std::map<T, double> weights;

  std::size_t size() const { return weights.size(); }
  double mass() const {
    double s = 0.0;
    for (const auto& [_, w] : weights) s += w;
    return s;
  }
  double operator[](const T& x) const {
    auto it = weights.find(x);
    return it == weights.end() ? 0.0 : it->second;
  }
  auto operator<=>(const FinDist&) const = default;
};

// Throws ValidationError if a weight is negative or the mass is not 1.
// Zero weights are dropped; equal keys accumulate.
template <class T>
FinDist<T> make_dist(const std::vector<std::pair<T, double>>& atoms) {
  FinDist<T> d;
  for (const auto& [x, w] : atoms) {
    if (!(w >= 0.0) || w > 1.0 + kTol)
      throw ValidationError("distribution weight " + std::to_string(w) + " outside [0,1]");
    if (w > 0.0) d.weights[x] += w;
  }
  const double m = d.mass();
  if (d.weights.empty() || std::abs(m - 1.0) > kTol)
    throw ValidationError("distribution mass " + std::to_string(m) + " != 1");
  return d;
}

// Memberships lie in (0,1]; zero entries are dropped so that equality is
// structural.
template <class T>
struct FuzzySet {
  std::map<T, double> membership;

  bool empty() const { return membership.empty(); }
  std::size_t size() const { return membership.size(); }
  double operator[](const T& x) const {
    auto it = membership.find(x);
    return it == membership.end() ? 0.0 : it->second;
  }
  // Sets x's membership to the join with m.
  void join(const T& x, double m) {
    if (m <= 0.0) return;
    auto [it, inserted] = membership.emplace(x, m);
    if (!inserted) it->second = std::max(it->second, m);
  }
  auto operator<=>(const FuzzySet&) const = default;
};

template <class T>
FuzzySet<T> make_fuzzy(const std::vector<std::pair<T, double>>& entries) {
  FuzzySet<T> a;
  for (const auto& [x, m] : entries) {
    if (!(m >= 0.0) || m > 1.0)
      throw ValidationError("fuzzy membership " + std::to_string(m) + " outside [0,1]");
    a.join(x, m);
  }
  return a;
}

// ---------------------------------------------------------------------------
// Distances

// Two-sided sup-inf distance with sup of nothing = 0 and inf of nothing = 1,
// so d(empty, empty) = 0 and d(empty, A) = 1 for nonempty A.
template <class T, class Dist>
double hausdorff_distance(const FinSet<T>& a, const FinSet<T>& b, Dist&& d) {
  auto directed = [&](const FinSet<T>& from, const FinSet<T>& to) {
    double sup = 0.0;
    for (const T& x : from.elements) {
      double inf = 1.0;
      for (const T& y : to.elements) inf = std::min(inf, d(x, y));
      sup = std::max(sup, inf);
    }
    return sup;
  };
  return std::max(directed(a, b), directed(b, a));
}

inline double hausdorff_distance(const FinSet<std::size_t>& a, const FinSet<std::size_t>& b,
                                 const FinMetric& x) {
  return hausdorff_distance(a, b, [&](std::size_t i, std::size_t j) { return x(i, j); });
}

// Fuzzy Hausdorff distance d0(A,B) v d0(B,A) with
//   d0(A,B) = sup_x inf_y (A(x) -. B(y)) v (A(x) ^ d(x,y)),
// the infimum ranging over the whole carrier. Carrier points outside the
// support of B contribute exactly A(x), so only the carrier size is needed
// beyond the supports.
template <class T, class Dist>
double fuzzy_hausdorff_distance(const FuzzySet<T>& a, const FuzzySet<T>& b, Dist&& d,
                                std::size_t carrier_size) {
  auto directed = [&](const FuzzySet<T>& from, const FuzzySet<T>& to) {
    double sup = 0.0;
    const bool outside_exists = carrier_size > to.size();
    for (const auto& [x, ax] : from.membership) {
      double inf = outside_exists ? ax : 1.0;
      for (const auto& [y, by] : to.membership)
        inf = std::min(inf, std::max(std::max(ax - by, 0.0), std::min(ax, d(x, y))));
      sup = std::max(sup, inf);
    }
    return sup;
  };
  return std::max(directed(a, b), directed(b, a));
}

inline double fuzzy_hausdorff_distance(const FuzzySet<std::size_t>& a,
                                       const FuzzySet<std::size_t>& b, const FinMetric& x) {
  return fuzzy_hausdorff_distance(
      a, b, [&](std::size_t i, std::size_t j) { return x(i, j); }, x.size());
}

// Optimal coupling plus a 1-Lipschitz potential certifying optimality.
template <class T>
struct TransportCertificate {
  std::map<std::pair<T, T>, double> coupling;
  // Kantorovich-Rubinstein potential on the union of both supports.
  std::map<T, double> potential;
  double primal = 0.0;
  double dual = 0.0;
};

template <class T>
struct KantorovichResult {
  double value = 0.0;
  TransportCertificate<T> certificate;
};

inline constexpr double kCertificateGap = 1e-7;

// Kantorovich distance by the transportation simplex. The certificate
// potential is the c-transform of the sink duals, which is 1-Lipschitz for a
// pseudometric cost and attains the primal value at optimality. Throws
// SolverError if |primal - dual| exceeds 1e-7.
template <class T, class Dist>
KantorovichResult<T> kantorovich_distance(const FinDist<T>& mu, const FinDist<T>& nu, Dist&& d) {
  std::vector<T> src, dst;
  std::vector<double> a, b;
  for (const auto& [x, w] : mu.weights) {
    src.push_back(x);
    a.push_back(w);
  }
  for (const auto& [y, w] : nu.weights) {
    dst.push_back(y);
    b.push_back(w);
  }
  std::vector<std::vector<double>> cost(src.size(), std::vector<double>(dst.size()));
  for (std::size_t i = 0; i < src.size(); ++i)
    for (std::size_t j = 0; j < dst.size(); ++j) cost[i][j] = d(src[i], dst[j]);

  const TransportPlan tp = solve_transport(a, b, cost);

  KantorovichResult<T> r;
  auto& cert = r.certificate;
  for (std::size_t i = 0; i < src.size(); ++i)
    for (std::size_t j = 0; j < dst.size(); ++j)
      if (tp.plan[i][j] > 0.0) cert.coupling[{src[i], dst[j]}] += tp.plan[i][j];
  cert.primal = tp.cost;

  std::set<T> support;
  for (const T& x : src) support.insert(x);
  for (const T& y : dst) support.insert(y);
  for (const T& z : support) {
    double f = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < dst.size(); ++j) f = std::min(f, d(z, dst[j]) - tp.v[j]);
    cert.potential[z] = f;
  }
  cert.dual = 0.0;
  for (const auto& [z, f] : cert.potential) cert.dual += f * (mu[z] - nu[z]);

  if (!(std::abs(cert.primal - cert.dual) <= kCertificateGap))
    throw SolverError("Kantorovich certificate gap " +
                      std::to_string(std::abs(cert.primal - cert.dual)) + " exceeds 1e-7");
  r.value = clamp01(cert.primal);
  return r;
}

inline KantorovichResult<std::size_t> kantorovich_distance(const FinDist<std::size_t>& mu,
                                                           const FinDist<std::size_t>& nu,
                                                           const FinMetric& x) {
  return kantorovich_distance(mu, nu, [&](std::size_t i, std::size_t j) { return x(i, j); });
}

// ---------------------------------------------------------------------------
// Monad structure

template <class T>
FinSet<T> set_unit(const T& x) {
  return FinSet<T>{x};
}
template <class T>
FinDist<T> dist_unit(const T& x) {
  FinDist<T> d;
  d.weights[x] = 1.0;
  return d;
}
template <class T>
FuzzySet<T> fuzzy_unit(const T& x) {
  FuzzySet<T> a;
  a.membership[x] = 1.0;
  return a;
}

// Direct image.
template <class T, class F>
auto lift_map(F&& f, const FinSet<T>& s) {
  using U = std::decay_t<decltype(f(*s.elements.begin()))>;
  FinSet<U> out;
  for (const T& x : s.elements) out.elements.insert(f(x));
  return out;
}

// Pushforward; weights of merged points add up.
template <class T, class F>
auto lift_map(F&& f, const FinDist<T>& mu) {
  using U = std::decay_t<decltype(f(mu.weights.begin()->first))>;
  FinDist<U> out;
  for (const auto& [x, w] : mu.weights) out.weights[f(x)] += w;
  return out;
}

// Fuzzy direct image; memberships of merged points are joined.
template <class T, class F>
auto lift_map(F&& f, const FuzzySet<T>& a) {
  using U = std::decay_t<decltype(f(a.membership.begin()->first))>;
  FuzzySet<U> out;
  for (const auto& [x, m] : a.membership) out.join(f(x), m);
  return out;
}

template <class T>
FinSet<T> lift_flatten(const FinSet<FinSet<T>>& ss) {
  FinSet<T> out;
  for (const auto& s : ss.elements) out.elements.insert(s.elements.begin(), s.elements.end());
  return out;
}

template <class T>
FinDist<T> lift_flatten(const FinDist<FinDist<T>>& mm) {
  FinDist<T> out;
  for (const auto& [inner, p] : mm.weights)
    for (const auto& [x, q] : inner.weights) out.weights[x] += p * q;
  return out;
}

// mu(S)(x) = sup_S S(S) ^ S(x).
template <class T>
FuzzySet<T> lift_flatten(const FuzzySet<FuzzySet<T>>& aa) {
  FuzzySet<T> out;
  for (const auto& [inner, p] : aa.membership)
    for (const auto& [x, q] : inner.membership) out.join(x, std::min(p, q));
  return out;
}

}  // namespace gradist

#endif  // GRADIST_LIFTINGS_HPP_
