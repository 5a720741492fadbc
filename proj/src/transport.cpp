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

#include "gradist/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "gradist/errors.hpp"

namespace gradist {

namespace {

constexpr double kReducedCostTol = 1e-12;

struct Cell {
  std::size_t row, col;
};

// Basis of a transportation problem: m + n - 1 cells forming a spanning tree
// of the bipartite row/column graph. Nodes 0..m-1 are rows, m..m+n-1 columns.
class Basis {
 public:
  Basis(std::size_t m, std::size_t n) : m_(m), n_(n) {}

  std::vector<Cell> cells;

  // Potentials with u[row] + v[col] = cost on every basic cell, u[0] = 0.
  void potentials(const std::vector<std::vector<double>>& cost, std::vector<double>& u,
                  std::vector<double>& v) const {
    const std::size_t nodes = m_ + n_;
    std::vector<std::vector<std::size_t>> adj(nodes);
    for (std::size_t k = 0; k < cells.size(); ++k) {
      adj[cells[k].row].push_back(k);
      adj[m_ + cells[k].col].push_back(k);
    }
    std::vector<double> pot(nodes, 0.0);
    std::vector<bool> seen(nodes, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      std::size_t node = stack.back();
      stack.pop_back();
      for (std::size_t k : adj[node]) {
        const Cell& c = cells[k];
        std::size_t other = node < m_ ? m_ + c.col : c.row;
        if (seen[other]) continue;
        seen[other] = true;
        pot[other] = cost[c.row][c.col] - pot[node];
        stack.push_back(other);
      }
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
      throw SolverError("transport basis is not a spanning tree");
    u.assign(pot.begin(), pot.begin() + static_cast<std::ptrdiff_t>(m_));
    v.assign(pot.begin() + static_cast<std::ptrdiff_t>(m_), pot.end());
  }

  // Basic-cell indices along the tree path from row `row` to column `col`.
  std::vector<std::size_t> path(std::size_t row, std::size_t col) const {
    const std::size_t nodes = m_ + n_;
    std::vector<std::vector<std::size_t>> adj(nodes);
    for (std::size_t k = 0; k < cells.size(); ++k) {
      adj[cells[k].row].push_back(k);
      adj[m_ + cells[k].col].push_back(k);
    }
    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> via(nodes, kNone), parent(nodes, kNone);
    std::vector<bool> seen(nodes, false);
    std::vector<std::size_t> queue{row};
    seen[row] = true;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      std::size_t node = queue[h];
      for (std::size_t k : adj[node]) {
        const Cell& c = cells[k];
        std::size_t other = node < m_ ? m_ + c.col : c.row;
        if (seen[other]) continue;
        seen[other] = true;
        via[other] = k;
        parent[other] = node;
        queue.push_back(other);
      }
    }
    std::vector<std::size_t> out;
    for (std::size_t node = m_ + col; node != row; node = parent[node]) {
      if (via[node] == kNone) throw SolverError("transport basis path not found");
      out.push_back(via[node]);
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

 private:
  std::size_t m_, n_;
};

}  // namespace

TransportPlan solve_transport(std::span<const double> supply, std::span<const double> demand,
                              const std::vector<std::vector<double>>& cost) {
  const std::size_t m = supply.size(), n = demand.size();
  if (m == 0 || n == 0) throw SolverError("transport problem with empty marginal");
  if (cost.size() != m) throw SolverError("cost matrix row count mismatch");
  for (const auto& row : cost)
    if (row.size() != n) throw SolverError("cost matrix column count mismatch");
  const double total_s = std::accumulate(supply.begin(), supply.end(), 0.0);
  const double total_d = std::accumulate(demand.begin(), demand.end(), 0.0);
  if (std::abs(total_s - total_d) > 1e-9)
    throw SolverError("unbalanced transport problem: " + std::to_string(total_s) + " vs " +
                      std::to_string(total_d));
  for (double s : supply)
    if (s < 0.0) throw SolverError("negative supply");
  for (double d : demand)
    if (d < 0.0) throw SolverError("negative demand");

  std::vector<double> rem_s(supply.begin(), supply.end());
  std::vector<double> rem_d(demand.begin(), demand.end());
  if (total_d > 0.0)
    for (double& d : rem_d) d *= total_s / total_d;

  std::vector<std::vector<double>> x(m, std::vector<double>(n, 0.0));
  Basis basis(m, n);
  // North-west corner start; degenerate zero cells stay basic.
  for (std::size_t i = 0, j = 0; i < m && j < n;) {
    const double q = std::min(rem_s[i], rem_d[j]);
    x[i][j] = q;
    rem_s[i] -= q;
    rem_d[j] -= q;
    basis.cells.push_back({i, j});
    if (i == m - 1 && j == n - 1) break;
    if (j == n - 1 || (i < m - 1 && rem_s[i] <= rem_d[j]))
      ++i;
    else
      ++j;
  }

  TransportPlan out;
  std::vector<double> u, v;
  const std::size_t bland_after = 20 * (m + n) * (m + n) + 100;
  const std::size_t max_pivots = 50 * (m + n) * (m + n) * std::max(m, n) + 1000;
  std::vector<std::vector<bool>> is_basic(m, std::vector<bool>(n, false));
  for (const Cell& c : basis.cells) is_basic[c.row][c.col] = true;

  for (;;) {
    basis.potentials(cost, u, v);
    const bool bland = out.pivots >= bland_after;
    double best = -kReducedCostTol;
    std::size_t ei = m, ej = n;
    for (std::size_t i = 0; i < m && !(bland && ei < m); ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (is_basic[i][j]) continue;
        const double r = cost[i][j] - u[i] - v[j];
        if (r < best) {
          best = r;
          ei = i;
          ej = j;
          if (bland) break;
        }
      }
    if (ei == m) break;
    if (++out.pivots > max_pivots) throw SolverError("transport simplex iteration limit");

    auto path = basis.path(ei, ej);
    // Signs alternate along the cycle: entering +, then -, +, ... from row ei.
    double theta = std::numeric_limits<double>::infinity();
    std::size_t leave = path.size();
    for (std::size_t k = 0; k < path.size(); k += 2) {
      const Cell& c = basis.cells[path[k]];
      if (x[c.row][c.col] < theta) {
        theta = x[c.row][c.col];
        leave = k;
      }
    }
    for (std::size_t k = 0; k < path.size(); ++k) {
      const Cell& c = basis.cells[path[k]];
      x[c.row][c.col] += (k % 2 == 0 ? -theta : theta);
    }
    x[ei][ej] = theta;
    const Cell gone = basis.cells[path[leave]];
    x[gone.row][gone.col] = 0.0;
    is_basic[gone.row][gone.col] = false;
    is_basic[ei][ej] = true;
    basis.cells[path[leave]] = {ei, ej};
  }

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (x[i][j] < 0.0) {
        if (x[i][j] < -1e-9) throw SolverError("transport plan has negative entry");
        x[i][j] = 0.0;
      }
      if (cost[i][j] - u[i] - v[j] < -1e-9) throw SolverError("transport duals infeasible");
    }
  out.cost = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) out.cost += x[i][j] * cost[i][j];
  out.plan = std::move(x);
  out.u = std::move(u);
  out.v = std::move(v);
  return out;
}

}  // namespace gradist
