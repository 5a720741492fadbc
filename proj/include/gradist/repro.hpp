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

// Reference instances and one-command numeric reproductions.

#ifndef GRADIST_REPRO_HPP_
#define GRADIST_REPRO_HPP_

#include <optional>
#include <string>
#include <vector>

#include "gradist/metric.hpp"
#include "gradist/systems.hpp"

namespace gradist {

// Two-branch probabilistic system: x and y each take a and b with
// probability 1/2 and then loop forever on the same (x) or the other (y)
// label. Labels are at distance v, or discrete when v is absent.
// States: x, p_a, p_b, y, q_a, q_b.
Coalgebra fig1_system(std::optional<double> v);

// Labels {a, b} at distance 0.8, values {v, w} at distance 0.5, and their
// sup-tensor product with points "a,v", "a,w", "b,v", "b,w".
LabelSpace stream_labels();
FinMetric stream_values();
FinMetric stream_space();

// <a>f on the stream space: (b, u) |-> (1 - d(a, b)) ^ f(u).
std::vector<double> stream_modal(std::size_t a, const std::vector<double>& f);

struct ReproValue {
  std::string name;
  double value = 0.0;
};

struct ReproExpectation {
  enum class Relation { kEqual, kAtMost };
  std::string name;
  double value = 0.0;
  double tol = 0.0;
  Relation relation = Relation::kEqual;

  bool holds(double computed) const;
};

struct ReproReport {
  std::string id;
  std::vector<ReproValue> computed;
  std::vector<ReproExpectation> expected;
  bool pass = false;

  double value(const std::string& name) const;
};

struct ReproOptions {
  std::optional<double> v;
  double grid = 0.05;
  std::size_t depth = 4;
};

// Scenario ids: stream, fig1_metric, fig1_discrete, kantorovich_sup,
// coupling_bound. Default v is 0.5. Throws ValidationError on an unknown id.
ReproReport run_repro(const std::string& id, const ReproOptions& opt = {});

std::vector<std::string> repro_scenarios();

// Maximum binarized Kantorovich distance between 1/2(a,va) + 1/2(b,vb)
// and 1/2(a,vb) + 1/2(b,va) over grid pairs with |va - vb| <= v.
double coupling_bound(double v, double grid);

}  // namespace gradist

#endif  // GRADIST_REPRO_HPP_
