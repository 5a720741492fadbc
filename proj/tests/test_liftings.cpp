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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gradist/errors.hpp"
#include "gradist/liftings.hpp"
#include "gradist/transport.hpp"
#include "support/oracles.hpp"
#include "support/random_inputs.hpp"

using namespace gradist;
using gradist::testing::Rng;

namespace {

const FinMetric& xy(double d) {
  static std::map<double, FinMetric> cache;
  auto it = cache.find(d);
  if (it == cache.end())
    it = cache.emplace(d, validate_metric({"x", "y"}, {{0.0, d}, {d, 0.0}})).first;
  return it->second;
}

// McShane extension of random values: 1-Lipschitz and [0,1]-valued.
std::vector<double> random_lipschitz(Rng& rng, const FinMetric& x) {
  std::vector<double> c(x.size());
  for (double& v : c) v = rng.uniform();
  std::vector<double> f(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double m = 1.0;
    for (std::size_t p = 0; p < x.size(); ++p) m = std::min(m, c[p] + x(p, i));
    f[i] = clamp01(m);
  }
  return f;
}

}  // namespace

TEST_CASE("hausdorff examples") {
  const FinSet<std::size_t> a{0, 1};
  CHECK(hausdorff_distance(a, a, xy(0.4)) == 0.0);
  CHECK(hausdorff_distance(FinSet<std::size_t>{0}, FinSet<std::size_t>{1}, xy(0.3)) ==
        doctest::Approx(0.3));
  CHECK(hausdorff_distance(a, FinSet<std::size_t>{0}, xy(0.4)) == doctest::Approx(0.4));
  CHECK(hausdorff_distance(FinSet<std::size_t>{}, FinSet<std::size_t>{0}, xy(0.4)) == 1.0);
  CHECK(hausdorff_distance(FinSet<std::size_t>{}, FinSet<std::size_t>{}, xy(0.4)) == 0.0);
}

TEST_CASE("kantorovich examples") {
  const auto mu = make_dist<std::size_t>({{0, 0.5}, {1, 0.5}});
  const auto same = kantorovich_distance(mu, mu, xy(1.0));
  CHECK(same.value == 0.0);
  CHECK(same.certificate.coupling.at({0, 0}) == doctest::Approx(0.5));
  CHECK(same.certificate.coupling.at({1, 1}) == doctest::Approx(0.5));
  CHECK(kantorovich_distance(mu, dist_unit<std::size_t>(0), xy(1.0)).value ==
        doctest::Approx(0.5).epsilon(1e-12));

  for (double v : {0.2, 0.5, 0.8}) {
    const LabelSpace l = validate_metric({"a", "b"}, {{0.0, v}, {v, 0.0}});
    const Word aa{0, 0}, bb{1, 1}, ab{0, 1}, ba{1, 0};
    const auto x = make_dist<Word>({{aa, 0.5}, {bb, 0.5}});
    const auto y = make_dist<Word>({{ab, 0.5}, {ba, 0.5}});
    auto d = [&](const Word& u, const Word& w) {
      return word_distance(l, u, w, TensorKind::manhattan());
    };
    CHECK(kantorovich_distance(x, y, d).value == doctest::Approx(v).epsilon(1e-9));
  }
}

TEST_CASE("make_dist rejects bad weights") {
  CHECK_THROWS_AS(make_dist<int>({{1, 0.5}, {2, 0.4}}), ValidationError);
  CHECK_THROWS_AS(make_dist<int>({{1, -0.5}, {2, 1.5}}), ValidationError);
  CHECK_THROWS_AS(make_dist<int>({}), ValidationError);
  CHECK(make_dist<int>({{1, 0.5}, {1, 0.5}, {2, 0.0}}).size() == 1);
}

TEST_CASE("fuzzy hausdorff examples") {
  const FinMetric one = discrete_metric({"x"});
  const auto a = make_fuzzy<std::size_t>({{0, 1.0}});
  const auto b = make_fuzzy<std::size_t>({{0, 0.6}});
  CHECK(fuzzy_hausdorff_distance(a, a, one) == 0.0);
  CHECK(fuzzy_hausdorff_distance(a, b, one) == doctest::Approx(0.4));
  CHECK(fuzzy_hausdorff_distance(make_fuzzy<std::size_t>({{0, 0.5}}),
                                 make_fuzzy<std::size_t>({{1, 0.5}}), xy(0.3)) ==
        doctest::Approx(0.3));
  CHECK_THROWS_AS(make_fuzzy<std::size_t>({{0, 1.2}}), ValidationError);
}

TEST_CASE("lift_map, unit and flatten examples") {
  auto merge = [](std::size_t) { return std::size_t{7}; };
  auto id = [](std::size_t i) { return i; };
  const auto mu = make_dist<std::size_t>({{0, 0.5}, {1, 0.5}});
  CHECK(lift_map(id, mu) == mu);
  CHECK(lift_map(merge, mu) == dist_unit<std::size_t>(7));
  CHECK(lift_map(merge, make_fuzzy<std::size_t>({{0, 0.4}, {1, 0.7}})) ==
        make_fuzzy<std::size_t>({{7, 0.7}}));
  CHECK(lift_map(merge, FinSet<std::size_t>{0, 1}) == FinSet<std::size_t>{7});

  CHECK(set_unit<std::size_t>(3) == FinSet<std::size_t>{3});
  CHECK(dist_unit<std::size_t>(3).weights.at(3) == 1.0);
  CHECK(fuzzy_unit<std::size_t>(3)[3] == 1.0);

  FinSet<FinSet<std::size_t>> ss{FinSet<std::size_t>{0}, FinSet<std::size_t>{1}};
  CHECK(lift_flatten(ss) == FinSet<std::size_t>{0, 1});
  FinDist<FinDist<std::size_t>> mm;
  mm.weights[mu] = 0.5;
  mm.weights[dist_unit<std::size_t>(0)] = 0.5;
  const auto flat = lift_flatten(mm);
  CHECK(flat[0] == 0.75);
  CHECK(flat[1] == 0.25);
  FuzzySet<FuzzySet<std::size_t>> aa;
  aa.join(make_fuzzy<std::size_t>({{0, 0.9}}), 0.6);
  CHECK(lift_flatten(aa) == make_fuzzy<std::size_t>({{0, 0.6}}));
}

TEST_CASE("liftings are pseudometrics") {
  Rng rng(21);
  for (int it = 0; it < 300; ++it) {
    const std::size_t n = rng.between(1, 5);
    const FinMetric x = testing::random_metric(rng, testing::point_names("p", n), true);
    const auto a = testing::random_set(rng, n), b = testing::random_set(rng, n),
               c = testing::random_set(rng, n);
    CHECK(hausdorff_distance(a, a, x) == 0.0);
    CHECK(hausdorff_distance(a, b, x) == hausdorff_distance(b, a, x));
    CHECK(hausdorff_distance(a, c, x) <=
          hausdorff_distance(a, b, x) + hausdorff_distance(b, c, x) + 2e-9);

    const auto fa = testing::random_fuzzy(rng, n), fb = testing::random_fuzzy(rng, n),
               fc = testing::random_fuzzy(rng, n);
    CHECK(fuzzy_hausdorff_distance(fa, fa, x) == 0.0);
    CHECK(fuzzy_hausdorff_distance(fa, fb, x) == fuzzy_hausdorff_distance(fb, fa, x));
    CHECK(fuzzy_hausdorff_distance(fa, fc, x) <=
          fuzzy_hausdorff_distance(fa, fb, x) + fuzzy_hausdorff_distance(fb, fc, x) + 2e-9);

    const auto ma = testing::random_dist(rng, n), mb = testing::random_dist(rng, n),
               mc = testing::random_dist(rng, n);
    const double ab = kantorovich_distance(ma, mb, x).value;
    CHECK(kantorovich_distance(ma, ma, x).value <= 2e-9);
    CHECK(std::abs(ab - kantorovich_distance(mb, ma, x).value) <= 2e-9);
    CHECK(kantorovich_distance(ma, mc, x).value <= ab + kantorovich_distance(mb, mc, x).value + 2e-9);
  }
}

TEST_CASE("kantorovich certificate and duality") {
  Rng rng(22);
  for (int it = 0; it < 300; ++it) {
    const std::size_t n = rng.between(1, 6);
    const FinMetric x = testing::random_metric(rng, testing::point_names("p", n), true);
    const auto mu = testing::random_dist(rng, n), nu = testing::random_dist(rng, n);
    const auto r = kantorovich_distance(mu, nu, x);
    const auto& cert = r.certificate;
    CHECK(std::abs(cert.primal - cert.dual) <= 1e-7);
    std::map<std::size_t, double> row, col;
    double cost = 0.0;
    for (const auto& [ij, w] : cert.coupling) {
      CHECK(w > 0.0);
      row[ij.first] += w;
      col[ij.second] += w;
      cost += w * x(ij.first, ij.second);
    }
    for (const auto& [i, w] : mu.weights) CHECK(std::abs(row[i] - w) <= 1e-9);
    for (const auto& [j, w] : nu.weights) CHECK(std::abs(col[j] - w) <= 1e-9);
    CHECK(std::abs(cost - r.value) <= 1e-9);
    for (const auto& [i, fi] : cert.potential)
      for (const auto& [j, fj] : cert.potential) CHECK(fi - fj <= x(i, j) + 1e-9);

    for (int k = 0; k < 5; ++k) {
      const auto f = random_lipschitz(rng, x);
      double gap = 0.0;
      for (std::size_t i = 0; i < n; ++i) gap += f[i] * (mu[i] - nu[i]);
      CHECK(std::abs(gap) <= r.value + 1e-9);
    }

    const auto oracle = testing::oracle::kantorovich(
        mu, nu, [&](std::size_t i, std::size_t j) { return x(i, j); });
    if (oracle) CHECK(std::abs(*oracle - r.value) <= 1e-9);
  }
}

TEST_CASE("transport solver handles degenerate marginals") {
  const std::vector<double> a{0.5, 0.5}, b{0.5, 0.5};
  const std::vector<std::vector<double>> cost{{0.0, 1.0}, {1.0, 0.0}};
  const TransportPlan p = solve_transport(a, b, cost);
  CHECK(p.cost == doctest::Approx(0.0));
  const std::vector<double> c{1.0}, d{0.25, 0.25, 0.5};
  const TransportPlan q = solve_transport(c, d, {{0.1, 0.2, 0.3}});
  CHECK(q.cost == doctest::Approx(0.025 + 0.05 + 0.15));
}

TEST_CASE("fuzzy hausdorff on a discrete carrier is the sup of differences") {
  Rng rng(23);
  for (int it = 0; it < 500; ++it) {
    const std::size_t n = rng.between(1, 6);
    const FinMetric x = discrete_metric(testing::point_names("p", n));
    const auto a = testing::random_fuzzy(rng, n), b = testing::random_fuzzy(rng, n);
    double sup = 0.0;
    for (std::size_t i = 0; i < n; ++i) sup = std::max(sup, std::abs(a[i] - b[i]));
    CHECK(fuzzy_hausdorff_distance(a, b, x) == sup);
  }
}

TEST_CASE("monad laws") {
  Rng rng(24);
  auto id = [](const auto& v) { return v; };
  for (int it = 0; it < 100; ++it) {
    const std::size_t n = rng.between(1, 4);
    {
      const auto v = testing::random_set(rng, n);
      CHECK(lift_flatten(set_unit(v)) == v);
      CHECK(lift_flatten(lift_map([](std::size_t i) { return set_unit(i); }, v)) == v);
      FinSet<FinSet<FinSet<std::size_t>>> vvv;
      for (int k = 0; k < 3; ++k) {
        FinSet<FinSet<std::size_t>> vv;
        for (int j = 0; j < 2; ++j) vv.elements.insert(testing::random_set(rng, n));
        vvv.elements.insert(vv);
      }
      CHECK(lift_flatten(lift_flatten(vvv)) ==
            lift_flatten(lift_map([](const auto& s) { return lift_flatten(s); }, vvv)));
      CHECK(lift_map(id, v) == v);
    }
    {
      const auto v = testing::random_dist(rng, n);
      CHECK(lift_flatten(dist_unit(v)) == v);
      CHECK(lift_flatten(lift_map([](std::size_t i) { return dist_unit(i); }, v)) == v);
      FinDist<FinDist<FinDist<std::size_t>>> vvv;
      for (int k = 0; k < 2; ++k) {
        FinDist<FinDist<std::size_t>> vv;
        vv.weights[testing::random_dist(rng, n, 4)] += 0.5;
        vv.weights[testing::random_dist(rng, n, 4)] += 0.5;
        vvv.weights[vv] += 0.5;
      }
      CHECK(lift_flatten(lift_flatten(vvv)) ==
            lift_flatten(lift_map([](const auto& s) { return lift_flatten(s); }, vvv)));
    }
    {
      const auto v = testing::random_fuzzy(rng, n);
      CHECK(lift_flatten(fuzzy_unit(v)) == v);
      CHECK(lift_flatten(lift_map([](std::size_t i) { return fuzzy_unit(i); }, v)) == v);
      FuzzySet<FuzzySet<FuzzySet<std::size_t>>> vvv;
      for (int k = 0; k < 2; ++k) {
        FuzzySet<FuzzySet<std::size_t>> vv;
        vv.join(testing::random_fuzzy(rng, n), rng.grid(0.1, 0.1));
        vv.join(testing::random_fuzzy(rng, n), rng.grid(0.1, 0.1));
        vvv.join(vv, rng.grid(0.1, 0.1));
      }
      CHECK(lift_flatten(lift_flatten(vvv)) ==
            lift_flatten(lift_map([](const auto& s) { return lift_flatten(s); }, vvv)));
    }
  }
}

TEST_CASE("lift_map preserves nonexpansiveness") {
  Rng rng(25);
  for (int it = 0; it < 200; ++it) {
    const std::size_t n = rng.between(1, 5);
    const FinMetric x = testing::random_metric(rng, testing::point_names("p", n), true);
    // f = d(p, -) into [0,1] with |u - v|.
    const std::size_t p = rng.index(n);
    auto f = [&](std::size_t i) { return x(p, i); };
    auto dy = [](double u, double v) { return std::abs(u - v); };
    auto dx = [&](std::size_t i, std::size_t j) { return x(i, j); };

    const auto a = testing::random_set(rng, n), b = testing::random_set(rng, n);
    CHECK(hausdorff_distance(lift_map(f, a), lift_map(f, b), dy) <=
          hausdorff_distance(a, b, dx) + 1e-9);
    const auto fa = testing::random_fuzzy(rng, n), fb = testing::random_fuzzy(rng, n);
    const std::size_t carrier = 64;  // [0,1] has points outside any finite support
    CHECK(fuzzy_hausdorff_distance(lift_map(f, fa), lift_map(f, fb), dy, carrier) <=
          fuzzy_hausdorff_distance(fa, fb, dx, n) + 1e-9);
    const auto ma = testing::random_dist(rng, n), mb = testing::random_dist(rng, n);
    CHECK(kantorovich_distance(lift_map(f, ma), lift_map(f, mb), dy).value <=
          kantorovich_distance(ma, mb, dx).value + 1e-9);
  }
}
