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

#ifndef GRADIST_SYSTEMS_HPP_
#define GRADIST_SYSTEMS_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gradist/liftings.hpp"
#include "gradist/metric.hpp"

namespace gradist {

enum class SystemKind { kMetricTs, kFuzzyLts, kProbTs, kStream };

std::string to_string(SystemKind k);
SystemKind system_kind_from_string(const std::string& s);

// One outgoing edge. `weight` is a membership (fuzzy), a probability (prob)
// or 1 for the unweighted kinds.
struct Transition {
  std::size_t label = 0;
  std::size_t target = 0;
  double weight = 1.0;

  auto operator<=>(const Transition&) const = default;
};

// A (label, state) successor pair.
using Successor = std::pair<std::size_t, std::size_t>;

// Finite coalgebra over a label space. The raw edge lists are kept so that
// deliberately broken systems can be built and reported on; load_system
// only returns systems with no findings.
struct Coalgebra {
  SystemKind kind = SystemKind::kMetricTs;
  LabelSpace labels = discrete_metric({"a"});
  std::vector<std::string> states;
  // Validated state metric; discrete unless supplied. Not used by any
  // distance computation.
  std::optional<FinMetric> state_metric;
  bool has_custom_state_metric = false;
  std::vector<std::vector<Transition>> trans;

  std::size_t num_states() const { return states.size(); }
  std::size_t state_index(const std::string& name) const;

  // Typed views of the one-step structure gamma(x).
  FinSet<Successor> successors(std::size_t x) const;
  FuzzySet<Successor> fuzzy_successors(std::size_t x) const;
  FinDist<Successor> distribution(std::size_t x) const;
  Successor stream_successor(std::size_t x) const;
};

struct Finding {
  std::string location;
  std::string message;
};

// Empty iff every structural invariant of the kind holds.
std::vector<Finding> validate_system(const Coalgebra& c);

// Parses the JSON system format. Throws ParseError on malformed JSON or
// schema shape, ValidationError (first finding, with location) otherwise.
Coalgebra parse_system(const std::string& json_text);
Coalgebra load_system(const std::string& path);

// Canonical JSON: states and labels in declaration order, edges sorted by
// (label, target).
std::string save_system(const Coalgebra& c);

}  // namespace gradist

#endif  // GRADIST_SYSTEMS_HPP_
