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

// Terms over a graded signature.
//
//   term := ident | ident "(" [number ","]* term ["," term]* ")"
//
// A bare identifier is a variable, except for the constant `zero`. Leading
// numeric arguments are operation parameters: "p(0.5, x, y)", "sc(0.7, x)".

#ifndef GRADIST_TERM_HPP_
#define GRADIST_TERM_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gradist {

struct OpDecl {
  std::string name;
  std::size_t arity = 0;
  std::size_t depth = 0;
  std::size_t params = 0;
};

struct GradedSignature {
  std::vector<OpDecl> ops;

  const OpDecl* find(const std::string& name) const;
};

struct Term {
  std::string head;
  std::vector<double> params;
  std::vector<Term> args;
  bool variable = false;

  static Term var(std::string name);
  static Term app(std::string op, std::vector<Term> args, std::vector<double> params = {});

  std::string to_string() const;
  bool operator==(const Term& o) const = default;
};

// Structural equality with parameters compared up to `tol`.
bool approx_equal(const Term& a, const Term& b, double tol = 1e-9);

// Throws SyntaxError.
Term parse_term(const std::string& text);

// Throws ValidationError on unknown operations, wrong arity or parameter
// count, and parameters outside [0,1].
void check_term(const Term& t, const GradedSignature& sig);

// Uniform depth of a term: variables have depth 0, an operation adds its
// depth to that of its arguments. Constants fit every n >= their depth, so
// a term built only from constants is `flexible`.
struct TermDepth {
  std::size_t depth = 0;
  bool flexible = false;

  bool admits(std::size_t n) const { return flexible ? n >= depth : n == depth; }
};

std::optional<TermDepth> term_depth(const Term& t, const GradedSignature& sig);

// Least uniform depth, or nullopt when the term has none.
std::optional<std::size_t> uniform_depth_term(const Term& t, const GradedSignature& sig);

std::vector<std::string> term_variables(const Term& t);

Term substitute(const Term& t, const std::map<std::string, Term>& sigma);

std::size_t term_size(const Term& t);

}  // namespace gradist

#endif  // GRADIST_TERM_HPP_
