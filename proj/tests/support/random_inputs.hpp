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

// Seeded generators for random metrics, distributions and systems.

#ifndef GRADIST_TESTS_RANDOM_INPUTS_HPP_
#define GRADIST_TESTS_RANDOM_INPUTS_HPP_

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gradist/liftings.hpp"
#include "gradist/metric.hpp"
#include "gradist/systems.hpp"

namespace gradist::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(eng_); }
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(eng_);
  }
  std::size_t between(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(eng_);
  }
  bool coin(double p = 0.5) { return uniform() < p; }
  // k * step for a uniform k with k * step in [lo, 1].
  double grid(double step, double lo = 0.0) {
    const auto top = static_cast<std::size_t>(std::floor(1.0 / step + 1e-9));
    const auto bottom = static_cast<std::size_t>(std::ceil(lo / step - 1e-9));
    return std::min(1.0, static_cast<double>(between(bottom, top)) * step);
  }
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

inline std::vector<std::string> point_names(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

// Shortest-path closure of random grid weights, so the triangle inequality
// holds by construction. With `pseudo`, some distances may be 0.
inline FinMetric random_metric(Rng& rng, std::vector<std::string> names, bool pseudo = false) {
  const std::size_t n = names.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      d[i][j] = d[j][i] = (pseudo && rng.coin(0.15)) ? 0.0 : rng.grid(0.05, 0.05);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return validate_metric(std::move(names), d);
}

inline FinSet<std::size_t> random_set(Rng& rng, std::size_t n, bool allow_empty = true) {
  FinSet<std::size_t> s;
  for (std::size_t i = 0; i < n; ++i)
    if (rng.coin()) s.elements.insert(i);
  if (!allow_empty && s.elements.empty()) s.elements.insert(rng.index(n));
  return s;
}

inline FuzzySet<std::size_t> random_fuzzy(Rng& rng, std::size_t n) {
  FuzzySet<std::size_t> s;
  for (std::size_t i = 0; i < n; ++i)
    if (rng.coin(0.6)) s.join(i, rng.grid(0.05, 0.05));
  return s;
}

// Weights are multiples of 1/`parts`.
inline FinDist<std::size_t> random_dist(Rng& rng, std::size_t n, std::size_t parts = 8) {
  FinDist<std::size_t> d;
  for (std::size_t k = 0; k < parts; ++k) d.weights[rng.index(n)] += 1.0 / static_cast<double>(parts);
  return d;
}

// Random system of the given kind with at most `max_states` states and
// `max_labels` labels. Probabilistic weights are multiples of 1/4.
inline Coalgebra random_system(Rng& rng, SystemKind kind, std::size_t max_states = 6,
                               std::size_t max_labels = 3) {
  Coalgebra c;
  c.kind = kind;
  const std::size_t ns = rng.between(1, max_states);
  const std::size_t nl = rng.between(1, max_labels);
  c.states = point_names("s", ns);
  if (kind == SystemKind::kFuzzyLts || rng.coin(0.2))
    c.labels = discrete_metric(point_names("l", nl));
  else
    c.labels = random_metric(rng, point_names("l", nl));
  c.trans.assign(ns, {});
  for (std::size_t x = 0; x < ns; ++x) {
    std::set<std::pair<std::size_t, std::size_t>> used;
    auto fresh = [&] {
      for (;;) {
        std::pair<std::size_t, std::size_t> e{rng.index(nl), rng.index(ns)};
        if (used.insert(e).second) return e;
      }
    };
    switch (kind) {
      case SystemKind::kMetricTs: {
        const std::size_t k = std::min<std::size_t>(rng.between(0, 3), nl * ns);
        for (std::size_t i = 0; i < k; ++i) {
          auto [a, y] = fresh();
          c.trans[x].push_back({a, y, 1.0});
        }
        break;
      }
      case SystemKind::kFuzzyLts: {
        const std::size_t k = std::min<std::size_t>(rng.between(0, 3), nl * ns);
        for (std::size_t i = 0; i < k; ++i) {
          auto [a, y] = fresh();
          c.trans[x].push_back({a, y, rng.grid(0.1, 0.1)});
        }
        break;
      }
      case SystemKind::kProbTs: {
        const std::size_t k = std::min<std::size_t>(rng.between(1, 3), nl * ns);
        std::vector<double> w(k, 0.25);
        for (std::size_t r = k; r < 4; ++r) w[rng.index(k)] += 0.25;
        for (std::size_t i = 0; i < k; ++i) {
          auto [a, y] = fresh();
          c.trans[x].push_back({a, y, w[i]});
        }
        break;
      }
      case SystemKind::kStream: {
        auto [a, y] = fresh();
        c.trans[x].push_back({a, y, 1.0});
        break;
      }
    }
  }
  c.state_metric = discrete_metric(c.states);
  return c;
}

}  // namespace gradist::testing

#endif  // GRADIST_TESTS_RANDOM_INPUTS_HPP_
