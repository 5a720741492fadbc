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
#include "gradist/logic.hpp"
#include "gradist/repro.hpp"

using namespace gradist;

namespace {

// Gap of <a><a><a><a>1 between x and y on the two-branch system: x keeps
// its branch label, y switches once, so the gap is 1/2 v (1 - (1 - v)^3).
double four_step_gap(double v) { return 0.5 * v * (1.0 - std::pow(1.0 - v, 3)); }

}  // namespace

TEST_CASE("scenario list") {
  CHECK(repro_scenarios().size() == 5);
  CHECK_THROWS_AS(run_repro("nope"), ValidationError);
}

TEST_CASE("default scenarios pass") {
  for (const std::string& id : repro_scenarios()) {
    const ReproReport r = run_repro(id);
    CHECK_MESSAGE(r.pass, id);
    CHECK(r.id == id);
  }
}

TEST_CASE("stream scenario values") {
  const ReproReport r = run_repro("stream");
  CHECK(std::abs(r.value("gap_a") - 0.55) <= 1e-12);
  CHECK(std::abs(r.value("gap_b") - 0.05) <= 1e-12);
  CHECK(r.value("distance") == doctest::Approx(0.8));
  CHECK(r.value("initial_cone") == 0.0);
  CHECK(r.value("normed_isometric") == 1.0);
  CHECK_THROWS_AS(r.value("missing"), ValidationError);
}

TEST_CASE("kantorovich_sup scenario values") {
  const ReproReport r = run_repro("kantorovich_sup");
  CHECK(r.value("d_s_t") == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.value("d_image_sup") == doctest::Approx(0.75).epsilon(1e-9));
  CHECK(r.value("d_image_manhattan") <= r.value("d_pair_manhattan") + 1e-9);
}

TEST_CASE("coupling bound") {
  for (double v : {0.2, 0.5, 0.8}) CHECK(coupling_bound(v, 0.05) <= v * v + 1e-6);
  CHECK(coupling_bound(0.5, 0.05) == doctest::Approx(0.25).epsilon(1e-6));
  CHECK_THROWS_AS(coupling_bound(0.5, 0.0), RangeError);
}

TEST_CASE("two-branch logical distance follows the four-step formula") {
  for (double v : {0.2, 0.5, 0.8}) {
    const Coalgebra c = fig1_system(v);
    const auto r = logical_distance(c, Semantics::kProbTrace, c.state_index("x"),
                                    c.state_index("y"), 4);
    CHECK(r.value == doctest::Approx(four_step_gap(v)).epsilon(1e-9));
    REQUIRE(r.best.has_value());
    CHECK(r.best->to_string() == "<a><a><a><a>1");
  }
  // At v = 0.2 the four-step gap 0.0488 exceeds v^2 = 0.04.
  ReproOptions opt;
  opt.v = 0.2;
  const ReproReport low = run_repro("fig1_metric", opt);
  CHECK_FALSE(low.pass);
  CHECK(low.value("behavioural_depth2") == doctest::Approx(0.2).epsilon(1e-6));
  opt.v = 0.8;
  CHECK(run_repro("fig1_metric", opt).pass);
}
