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

// Exact transportation simplex (MODI method) on a dense cost matrix.

#ifndef GRADIST_TRANSPORT_HPP_
#define GRADIST_TRANSPORT_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace gradist {

struct TransportPlan {
  // plan[i][j]: mass moved from source i to sink j.
  std::vector<std::vector<double>> plan;
  // Dual potentials with u[i] + v[j] <= cost[i][j] and equality on the basis.
  std::vector<double> u, v;
  double cost = 0.0;
  std::size_t pivots = 0;
};

// Solves min <plan, cost> subject to row sums = supply and column sums =
// demand. Both marginals must be nonnegative with equal totals (within
// 1e-9; the demand is rescaled to match exactly). Throws SolverError when
// the iteration limit is hit or the final basis is dual infeasible.
TransportPlan solve_transport(std::span<const double> supply, std::span<const double> demand,
                              const std::vector<std::vector<double>>& cost);

}  // namespace gradist

#endif  // GRADIST_TRANSPORT_HPP_
