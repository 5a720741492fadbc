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

#include "gradist/term.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <set>

#include "gradist/errors.hpp"
#include "gradist/formula.hpp"

namespace gradist {

const OpDecl* GradedSignature::find(const std::string& name) const {
  for (const OpDecl& op : ops)
    if (op.name == name) return &op;
  return nullptr;
}

Term Term::var(std::string name) {
  Term t;
  t.head = std::move(name);
  t.variable = true;
  return t;
}

Term Term::app(std::string op, std::vector<Term> args, std::vector<double> params) {
  Term t;
  t.head = std::move(op);
  t.args = std::move(args);
  t.params = std::move(params);
  return t;
}

std::string Term::to_string() const {
  if (variable || (args.empty() && params.empty())) return head;
  std::string s = head + "(";
  bool first = true;
  for (double p : params) {
    s += (first ? "" : ", ") + format_number(p);
    first = false;
  }
  for (const Term& a : args) {
    s += (first ? "" : ", ") + a.to_string();
    first = false;
  }
  return s + ")";
}

bool approx_equal(const Term& a, const Term& b, double tol) {
  if (a.variable != b.variable || a.head != b.head || a.params.size() != b.params.size() ||
      a.args.size() != b.args.size())
    return false;
  for (std::size_t i = 0; i < a.params.size(); ++i)
    if (std::abs(a.params[i] - b.params[i]) > tol) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!approx_equal(a.args[i], b.args[i], tol)) return false;
  return true;
}

namespace {

class TermParser {
 public:
  explicit TermParser(const std::string& text) : text_(text) {}

  Term parse() {
    Term t = term();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw SyntaxError(what + " at offset " + std::to_string(pos_) + " in '" + text_ + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool at_number() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '+';
  }

  std::string ident() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ < text_.size() &&
        (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
    }
    if (pos_ == start) fail("expected an identifier");
    return text_.substr(start, pos_ - start);
  }

  Term term() {
    std::string name = ident();
    if (!eat('(')) return name == "zero" ? Term::app(name, {}) : Term::var(std::move(name));
    std::vector<double> params;
    std::vector<Term> args;
    while (at_number()) {
      const char* begin = text_.data() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("expected a number");
      pos_ += static_cast<std::size_t>(end - begin);
      params.push_back(v);
      if (!eat(',')) fail("expected ',' after parameter");
    }
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] != ')') {
      args.push_back(term());
      while (eat(',')) args.push_back(term());
    }
    if (!eat(')')) fail("expected ')'");
    return Term::app(std::move(name), std::move(args), std::move(params));
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

void collect_vars(const Term& t, std::set<std::string>& out) {
  if (t.variable) out.insert(t.head);
  for (const Term& a : t.args) collect_vars(a, out);
}

}  // namespace

Term parse_term(const std::string& text) { return TermParser(text).parse(); }

void check_term(const Term& t, const GradedSignature& sig) {
  if (t.variable) {
    if (sig.find(t.head)) throw ValidationError("'" + t.head + "' is an operation, not a variable");
    return;
  }
  const OpDecl* op = sig.find(t.head);
  if (!op) throw ValidationError("unknown operation '" + t.head + "'");
  if (t.args.size() != op->arity)
    throw ValidationError(t.head + " expects " + std::to_string(op->arity) + " argument(s), got " +
                          std::to_string(t.args.size()));
  if (t.params.size() != op->params)
    throw ValidationError(t.head + " expects " + std::to_string(op->params) +
                          " parameter(s), got " + std::to_string(t.params.size()));
  for (double p : t.params)
    if (!(p >= 0.0 && p <= 1.0))
      throw ValidationError(t.head + " parameter " + format_number(p) + " outside [0,1]");
  for (const Term& a : t.args) check_term(a, sig);
}

std::optional<TermDepth> term_depth(const Term& t, const GradedSignature& sig) {
  if (t.variable) return TermDepth{0, false};
  const OpDecl* op = sig.find(t.head);
  if (!op) return std::nullopt;
  std::optional<std::size_t> exact;
  std::size_t flex_min = 0;
  for (const Term& a : t.args) {
    auto d = term_depth(a, sig);
    if (!d) return std::nullopt;
    if (d->flexible) {
      flex_min = std::max(flex_min, d->depth);
    } else if (exact && *exact != d->depth) {
      return std::nullopt;
    } else {
      exact = d->depth;
    }
  }
  if (exact) {
    if (flex_min > *exact) return std::nullopt;
    return TermDepth{*exact + op->depth, false};
  }
  return TermDepth{flex_min + op->depth, true};
}

std::optional<std::size_t> uniform_depth_term(const Term& t, const GradedSignature& sig) {
  auto d = term_depth(t, sig);
  if (!d) return std::nullopt;
  return d->depth;
}

std::vector<std::string> term_variables(const Term& t) {
  std::set<std::string> s;
  collect_vars(t, s);
  return {s.begin(), s.end()};
}

Term substitute(const Term& t, const std::map<std::string, Term>& sigma) {
  if (t.variable) {
    auto it = sigma.find(t.head);
    return it == sigma.end() ? t : it->second;
  }
  Term out = t;
  for (Term& a : out.args) a = substitute(a, sigma);
  return out;
}

std::size_t term_size(const Term& t) {
  std::size_t n = 1;
  for (const Term& a : t.args) n += term_size(a);
  return n;
}

}  // namespace gradist
