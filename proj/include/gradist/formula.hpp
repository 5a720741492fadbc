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

// Syntax of the quantitative graded modal logic.
//
//   formula := "1" | "<" label ">" formula | opname "(" args ")"
//   opname  := or | and | neg | addc | subc | meetc | aff
//
// or/and are binary, neg unary; addc, subc and meetc take a leading numeric
// constant, aff takes two (aff(p, q, f) = p*f + q).

#ifndef GRADIST_FORMULA_HPP_
#define GRADIST_FORMULA_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gradist {

enum class PropOp { kOr, kAnd, kNeg, kAddC, kSubC, kMeetC, kAff };

std::string to_string(PropOp op);
std::optional<PropOp> prop_op_from_string(const std::string& s);
std::size_t op_constant_count(PropOp op);
std::size_t op_arity(PropOp op);

// Pointwise meaning of a propositional operator on [0,1].
double apply_op(PropOp op, std::span<const double> constants, std::span<const double> args);

// Immutable formula tree with its uniform depth and node count.
class Formula {
 public:
  enum class Kind { kConst1, kModal, kProp };

  static Formula one();
  static Formula modal(std::string label, Formula sub);
  // Throws DepthError when the subformulas have different uniform depths,
  // SyntaxError on wrong arity or constant count, RangeError on constants
  // outside [0,1] (or p + q > 1 for aff).
  static Formula prop(PropOp op, std::vector<double> constants, std::vector<Formula> subs);

  Kind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  PropOp op() const { return op_; }
  const std::vector<double>& constants() const { return constants_; }
  const std::vector<Formula>& subs() const { return subs_; }
  std::size_t depth() const { return depth_; }
  std::size_t size() const { return size_; }
  bool modal_only() const;

  std::string to_string() const;

  bool operator==(const Formula& o) const;

 private:
  Formula() = default;
  Kind kind_ = Kind::kConst1;
  std::string label_;
  PropOp op_ = PropOp::kOr;
  std::vector<double> constants_;
  std::vector<Formula> subs_;
  std::size_t depth_ = 0;
  std::size_t size_ = 1;
};

// Parses the grammar above. Throws SyntaxError or DepthError.
Formula parse_formula(const std::string& text);

// Shortest decimal rendering used in formula and term text.
std::string format_number(double x);

}  // namespace gradist

#endif  // GRADIST_FORMULA_HPP_
