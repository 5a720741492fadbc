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

// Graded quantitative equational theories of trace monads, a checker for
// derivations in them, and their free models.
//
// Base theories (depth 0):
//   powerset  zero, plus(x, y)                join semilattice with bottom
//   fuzzy     zero, plus(x, y), sc(r, x)      plus the [0,1] meet action
//   dist      p(r, x, y)                      barycentric algebra, x +_r y
// Every label a is a unary depth-1 operation. Depth-1 axioms: a distributes
// over every base operation, and x =_e y |- a(x) =_{k(d(a,b), e)} b(y).
//
// Free model of depth n over a finite space X: base-monad values over
// atoms (w, x) with w a length-n word. Labels prepend to words.

#ifndef GRADIST_QUANT_EQ_HPP_
#define GRADIST_QUANT_EQ_HPP_

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gradist/liftings.hpp"
#include "gradist/metric.hpp"
#include "gradist/term.hpp"

namespace gradist {

enum class BaseTheory { kPowerset, kFuzzy, kDist };

std::string to_string(BaseTheory b);
// Accepts "powerset", "fuzzy", "dist". Throws ParseError.
BaseTheory base_theory_from_string(const std::string& s);

// Metavariable assignment of an axiom schema: labels and reals.
struct Binding {
  std::map<std::string, double> reals;
  std::map<std::string, std::string> labels;
};

// Operation parameter in a pattern: a real metavariable, or a value
// computed from the binding.
struct ParamPattern {
  std::string meta;
  std::function<double(const Binding&)> expr;
};

struct Pattern {
  enum class Kind { kVar, kLabel, kOp };
  Kind kind = Kind::kVar;
  // Variable name, label metavariable, or operation name.
  std::string name;
  std::vector<ParamPattern> params;
  std::vector<Pattern> args;
};

class GradedTheory;

// Hypothesis x =_eps y of an axiom, with eps a real metavariable bound by
// the premise that proves it.
struct AxiomHypothesis {
  std::string x, y, eps;
};

struct Axiom {
  std::string id;
  std::string text;
  std::size_t depth = 0;
  std::vector<AxiomHypothesis> hyps;
  Pattern lhs, rhs;
  std::function<double(const Binding&, const GradedTheory&)> eps;
  // Optional side condition on the binding.
  std::function<bool(const Binding&, const GradedTheory&)> side;

  std::vector<std::string> variables() const;
  // Real metavariables bound by the two sides, and label metavariables.
  std::vector<std::string> real_metas() const;
  std::vector<std::string> label_metas() const;
};

class GradedTheory {
 public:
  GradedTheory(BaseTheory base, LabelSpace labels, TensorKind tensor);

  BaseTheory base() const { return base_; }
  const LabelSpace& labels() const { return labels_; }
  const TensorKind& tensor() const { return tensor_; }
  const GradedSignature& signature() const { return signature_; }
  const std::vector<Axiom>& axioms() const { return axioms_; }
  // "metric_trace_theory", "fuzzy_theory" or "prob_theory".
  std::string tag() const;

  const Axiom* find_axiom(const std::string& id) const;
  bool is_label(const std::string& name) const { return labels_.find(name).has_value(); }

 private:
  BaseTheory base_;
  LabelSpace labels_;
  TensorKind tensor_;
  GradedSignature signature_;
  std::vector<Axiom> axioms_;
};

// Throws DiscreteRequired for the fuzzy base over a non-discrete label
// space, ValidationError when a label name clashes with a base operation.
GradedTheory build_trace_theory(BaseTheory base, const LabelSpace& labels, const TensorKind& t);

// Matches `p` against `t` under the variable substitution, extending `b`.
// Computed parameters are not compared here.
bool match_pattern(const Pattern& p, const Term& t, const std::map<std::string, Term>& subst,
                   const GradedTheory& theory, Binding& b);
Term instantiate_pattern(const Pattern& p, const std::map<std::string, Term>& subst,
                         const Binding& b);

struct ContextEntry {
  std::string x, y;
  double eps = 0.0;
  bool operator==(const ContextEntry&) const = default;
};

struct Judgement {
  std::vector<ContextEntry> ctx;
  Term lhs, rhs;
  double eps = 0.0;

  std::string to_string() const;
};

struct DerivationTree {
  std::string rule;
  Judgement conclusion;
  std::vector<DerivationTree> premises;
  std::string axiom;
  std::map<std::string, Term> subst;
  std::optional<std::size_t> subst_depth;
};

struct CheckResult {
  bool ok = true;
  // Node path, "root" followed by "/i" per premise index.
  std::string path;
  std::string reason;
};

// Checks every node, premises before their conclusion, and reports the
// first invalid node. Rules: refl, sym, triang, wk, nexp, ax, assn. Throws
// ArchUnsupported on an arch node.
CheckResult check_derivation(const GradedTheory& theory, const DerivationTree& proof);

// Optional theory description carried by a proof file.
struct TheorySpec {
  BaseTheory base = BaseTheory::kPowerset;
  std::vector<std::string> labels;
  std::optional<std::vector<std::vector<double>>> label_metric;
  TensorVariant tensor = TensorVariant::kSup;
  double discount = 1.0;

  GradedTheory build() const;
};

struct ProofFile {
  std::optional<TheorySpec> theory;
  DerivationTree proof;
};

// A proof file is either a bare node or {"theory": {...}, "proof": node}.
// Throws ParseError.
ProofFile parse_proof(const std::string& json_text);
ProofFile load_proof(const std::string& path);
std::string proof_to_json(const ProofFile& file);

using ModelAtom = std::pair<Word, std::string>;
using ModelValue = std::variant<FinSet<ModelAtom>, FuzzySet<ModelAtom>, FinDist<ModelAtom>>;

// Interprets a term of uniform depth n whose variables are points of X.
// Throws DepthMismatch, or ValidationError for ill-formed terms.
ModelValue free_model_interpret(const GradedTheory& theory, const Term& term, std::size_t n,
                                const FinMetric& x);

// Interprets `term` with each variable bound to a model value.
ModelValue interpret_in(const GradedTheory& theory, const Term& term,
                        const std::map<std::string, ModelValue>& env);

// Graded multiplication: replaces each atom (w, z) of `outer` by f(z) with
// w prepended to every word, then flattens.
ModelValue model_bind(const ModelValue& outer,
                      const std::function<ModelValue(const std::string&)>& f);

// Lifted distance; atoms (w, x), (w', x') are at distance
// k(d(w_1, w'_1), k(..., k(d(w_n, w'_n), d_X(x, x')))).
double model_distance(const GradedTheory& theory, const ModelValue& a, const ModelValue& b,
                      const FinMetric& x);

// Throws DepthMismatch when s and t have no common uniform depth.
double free_model_distance(const GradedTheory& theory, const Term& s, const Term& t,
                           const FinMetric& x);

// Rounds weights and memberships to 12 decimals so that values built in a
// different order compare equal.
ModelValue canonicalize(const ModelValue& v);
std::string to_string(const GradedTheory& theory, const ModelValue& v);

}  // namespace gradist

#endif  // GRADIST_QUANT_EQ_HPP_
