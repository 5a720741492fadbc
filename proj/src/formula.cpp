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

#include "gradist/formula.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "gradist/errors.hpp"

namespace gradist {

std::string to_string(PropOp op) {
  switch (op) {
    case PropOp::kOr:
      return "or";
    case PropOp::kAnd:
      return "and";
    case PropOp::kNeg:
      return "neg";
    case PropOp::kAddC:
      return "addc";
    case PropOp::kSubC:
      return "subc";
    case PropOp::kMeetC:
      return "meetc";
    case PropOp::kAff:
      return "aff";
  }
  return "?";
}

std::optional<PropOp> prop_op_from_string(const std::string& s) {
  for (PropOp op : {PropOp::kOr, PropOp::kAnd, PropOp::kNeg, PropOp::kAddC, PropOp::kSubC,
                    PropOp::kMeetC, PropOp::kAff})
    if (to_string(op) == s) return op;
  return std::nullopt;
}

std::size_t op_constant_count(PropOp op) {
  switch (op) {
    case PropOp::kAddC:
    case PropOp::kSubC:
    case PropOp::kMeetC:
      return 1;
    case PropOp::kAff:
      return 2;
    default:
      return 0;
  }
}

std::size_t op_arity(PropOp op) { return op == PropOp::kOr || op == PropOp::kAnd ? 2 : 1; }

double apply_op(PropOp op, std::span<const double> c, std::span<const double> x) {
  switch (op) {
    case PropOp::kOr:
      return std::max(x[0], x[1]);
    case PropOp::kAnd:
      return std::min(x[0], x[1]);
    case PropOp::kNeg:
      return 1.0 - x[0];
    case PropOp::kAddC:
      return std::min(1.0, x[0] + c[0]);
    case PropOp::kSubC:
      return std::max(0.0, x[0] - c[0]);
    case PropOp::kMeetC:
      return std::min(c[0], x[0]);
    case PropOp::kAff:
      return std::clamp(c[0] * x[0] + c[1], 0.0, 1.0);
  }
  return 0.0;
}

std::string format_number(double x) {
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

Formula Formula::one() { return Formula(); }

Formula Formula::modal(std::string label, Formula sub) {
  if (label.empty()) throw SyntaxError("empty modality label");
  Formula f;
  f.kind_ = Kind::kModal;
  f.label_ = std::move(label);
  f.depth_ = sub.depth_ + 1;
  f.size_ = sub.size_ + 1;
  f.subs_.push_back(std::move(sub));
  return f;
}

Formula Formula::prop(PropOp op, std::vector<double> constants, std::vector<Formula> subs) {
  if (subs.size() != op_arity(op))
    throw SyntaxError(gradist::to_string(op) + " expects " + std::to_string(op_arity(op)) +
                      " formula argument(s), got " + std::to_string(subs.size()));
  if (constants.size() != op_constant_count(op))
    throw SyntaxError(gradist::to_string(op) + " expects " + std::to_string(op_constant_count(op)) +
                      " numeric constant(s), got " + std::to_string(constants.size()));
  for (double c : constants)
    if (!(c >= 0.0 && c <= 1.0))
      throw RangeError(gradist::to_string(op) + " constant " + format_number(c) + " outside [0,1]");
  if (op == PropOp::kAff && constants[0] + constants[1] > 1.0 + 1e-12)
    throw RangeError("aff constants must satisfy p + q <= 1");
  for (const Formula& s : subs)
    if (s.depth_ != subs.front().depth_)
      throw DepthError("no uniform depth: arguments of " + gradist::to_string(op) + " have depths " +
                       std::to_string(subs.front().depth_) + " and " + std::to_string(s.depth_));
  Formula f;
  f.kind_ = Kind::kProp;
  f.op_ = op;
  f.constants_ = std::move(constants);
  f.depth_ = subs.front().depth_;
  f.size_ = 1;
  for (const Formula& s : subs) f.size_ += s.size_;
  f.subs_ = std::move(subs);
  return f;
}

bool Formula::modal_only() const {
  if (kind_ == Kind::kProp) return false;
  return std::all_of(subs_.begin(), subs_.end(), [](const Formula& s) { return s.modal_only(); });
}

std::string Formula::to_string() const {
  switch (kind_) {
    case Kind::kConst1:
      return "1";
    case Kind::kModal:
      return "<" + label_ + ">" + subs_.front().to_string();
    case Kind::kProp: {
      std::string s = gradist::to_string(op_) + "(";
      bool first = true;
      for (double c : constants_) {
        s += (first ? "" : ", ") + format_number(c);
        first = false;
      }
      for (const Formula& sub : subs_) {
        s += (first ? "" : ", ") + sub.to_string();
        first = false;
      }
      return s + ")";
    }
  }
  return "?";
}

bool Formula::operator==(const Formula& o) const {
  return kind_ == o.kind_ && label_ == o.label_ && (kind_ != Kind::kProp || op_ == o.op_) &&
         constants_ == o.constants_ && subs_ == o.subs_;
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  Formula parse() {
    Formula f = formula();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return f;
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

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  double number() {
    skip_ws();
    const char* begin = text_.data() + pos_;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) fail("expected a number");
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }

  Formula formula() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of formula");
    const char c = text_[pos_];
    if (c == '1') {
      ++pos_;
      return Formula::one();
    }
    if (c == '<') {
      ++pos_;
      const std::size_t close = text_.find('>', pos_);
      if (close == std::string::npos) fail("unterminated modality");
      std::string label = text_.substr(pos_, close - pos_);
      label.erase(0, label.find_first_not_of(" \t"));
      label.erase(label.find_last_not_of(" \t") + 1);
      if (label.empty()) fail("empty modality label");
      pos_ = close + 1;
      return Formula::modal(std::move(label), formula());
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string name = text_.substr(start, pos_ - start);
    auto op = prop_op_from_string(name);
    if (!op) {
      pos_ = start;
      fail("unknown operator '" + name + "'");
    }
    expect('(');
    std::vector<double> constants;
    for (std::size_t k = 0; k < op_constant_count(*op); ++k) {
      constants.push_back(number());
      expect(',');
    }
    std::vector<Formula> subs;
    subs.push_back(formula());
    while (eat(',')) subs.push_back(formula());
    expect(')');
    return Formula::prop(*op, std::move(constants), std::move(subs));
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(const std::string& text) {
  try {
    return Parser(text).parse();
  } catch (const RangeError& e) {
    throw SyntaxError(e.what());
  }
}

}  // namespace gradist
