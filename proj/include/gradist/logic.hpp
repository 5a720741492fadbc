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

// Coalgebraic evaluation of graded modal formulas, bounded logical distance,
// distinguishing-formula search and the invariance check against
// behavioural distance.
//
// Modalities <a> are interpreted on one-step structures over L x [0,1]:
//
//   metric trace   <a>U   = sup_{(b,v) in U} (1 - d(a,b)) ^ v
//   fuzzy trace    <a>A   = sup_v A(a,v) ^ v
//   prob trace     <a>pi  = sum_{(b,v)} pi(b,v) * (1 - d(a,b)) * v
//   stream         <a>(b,v) = (1 - d(a,b)) ^ v
//
// On a discrete label space the probabilistic modality is the probability
// of doing `a` weighted by the successor's truth value. The factor
// (1 - d(a,b)) keeps it nonexpansive for the Manhattan tensor when labels
// are metric.

#ifndef GRADIST_LOGIC_HPP_
#define GRADIST_LOGIC_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gradist/formula.hpp"
#include "gradist/graded.hpp"
#include "gradist/liftings.hpp"
#include "gradist/systems.hpp"

namespace gradist {

// Per-semantics logic: whitelisted propositional operators. The truth
// object is always [0,1].
struct ModalSignature {
  Semantics semantics;
  std::vector<PropOp> ops;

  static ModalSignature for_semantics(Semantics s);
  bool allows(PropOp op) const;
  // Checks every whitelisted op for nonexpansiveness w.r.t. the sup metric
  // on [0,1]^k, over a grid of inputs and constants with the given step.
  bool ops_nonexpansive_on_grid(double step) const;
};

// Throws WhitelistError if `f` uses an operator outside the whitelist.
void check_whitelist(const Formula& f, Semantics s);

double modality_metric(const LabelSpace& labels, std::size_t a, const FinSet<ValuedLabel>& u);
double modality_fuzzy(const LabelSpace& labels, std::size_t a, const FuzzySet<ValuedLabel>& u);
double modality_prob(const LabelSpace& labels, std::size_t a, const FinDist<ValuedLabel>& u);
double modality_stream(const LabelSpace& labels, std::size_t a, const ValuedLabel& u);

// <a> applied to gamma(x) with successor truth values `values`, for every x.
std::vector<double> modal_step(const Coalgebra& c, Semantics s, std::size_t a,
                               const std::vector<double>& values);

// Truth value of `f` at every state. Throws SemanticsMismatch,
// WhitelistError, or ValidationError for labels the system does not declare.
std::vector<double> evaluate(const Formula& f, const Coalgebra& c, Semantics s);

// Enumeration bounds. A size cap of 0 means depth + 1 for modal-only
// enumeration and depth + 2 otherwise.
struct PropConfig {
  bool modal_only = true;
  double grid = 0.05;
  std::size_t size_cap = 0;

  std::size_t effective_size_cap(std::size_t depth) const;
};

// Constants a grid provides to each parametrised operator.
std::vector<double> constant_grid(PropOp op, double grid);

// All whitelisted formulas of uniform depth <= depth over `labels` within
// the size cap, ordered by depth, then size, then text.
std::vector<Formula> enumerate_formulas(Semantics s, const std::vector<std::string>& labels,
                                        std::size_t depth, const PropConfig& cfg);

struct LogicalDistance {
  double value = 0.0;
  std::optional<Formula> best;
};

// max |[[f]](x) - [[f]](y)| over the enumerated formulas. This is a lower
// bound of the supremum over all formulas. Formulas whose truth vector on
// `c` repeats an earlier one of the same depth are skipped: every context
// gives them the same value.
LogicalDistance logical_distance(const Coalgebra& c, Semantics s, std::size_t x, std::size_t y,
                                 std::size_t depth, const PropConfig& cfg = {});

// Same maximum for every pair at once; formulas ordered as above.
struct LogicalDistanceMatrix {
  std::vector<std::vector<double>> value;
  std::vector<std::vector<std::optional<Formula>>> best;
  std::size_t formulas_evaluated = 0;
};
LogicalDistanceMatrix logical_distance_matrix(const Coalgebra& c, Semantics s, std::size_t depth,
                                              const PropConfig& cfg = {});

// Restricts enumeration to formulas of depth exactly `depth`.
LogicalDistanceMatrix logical_distance_at_depth(const Coalgebra& c, Semantics s,
                                                std::size_t depth, const PropConfig& cfg = {});

struct WitnessResult {
  std::optional<Formula> witness;
  // Best formula and gap seen, also when no witness was found.
  std::optional<Formula> best;
  double best_gap = 0.0;
};

// First formula with gap >= target - 1e-6: modal-only formulas first, then
// (unless cfg.modal_only) the whitelisted propositional closure.
WitnessResult witness_search(const Coalgebra& c, Semantics s, std::size_t x, std::size_t y,
                             std::size_t depth, double target, const PropConfig& cfg = {});

enum class InvarianceStatus { kTight, kStrict, kViolation };
std::string to_string(InvarianceStatus s);

struct InvarianceEntry {
  std::size_t x = 0, y = 0;
  double logical = 0.0;
  double behavioural = 0.0;
  std::optional<Formula> best;
  InvarianceStatus status = InvarianceStatus::kTight;
};

struct InvarianceReport {
  std::vector<InvarianceEntry> entries;
  std::size_t violations = 0;
  bool ok() const { return violations == 0; }
};

// Logical distance (formulas of depth <= depth) against the running
// maximum of behavioural distance over depths 0..depth, for every pair.
// A violation means logical > behavioural + tol.
InvarianceReport invariance_check(const Coalgebra& c, Semantics s, std::size_t depth,
                                  const PropConfig& cfg = {}, double tol = kTol);

}  // namespace gradist

#endif  // GRADIST_LOGIC_HPP_
