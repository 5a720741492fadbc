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

#include "gradist/quant_eq.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "gradist/errors.hpp"
#include "gradist/formula.hpp"
#include "json.hpp"

namespace gradist {

using json = nlohmann::json;

std::string to_string(BaseTheory b) {
  switch (b) {
    case BaseTheory::kPowerset:
      return "powerset";
    case BaseTheory::kFuzzy:
      return "fuzzy";
    case BaseTheory::kDist:
      return "dist";
  }
  return "?";
}

BaseTheory base_theory_from_string(const std::string& s) {
  if (s == "powerset") return BaseTheory::kPowerset;
  if (s == "fuzzy") return BaseTheory::kFuzzy;
  if (s == "dist") return BaseTheory::kDist;
  throw ParseError("unknown base theory '" + s + "'");
}

namespace {

// Pattern builders.
Pattern V(std::string name) { return {Pattern::Kind::kVar, std::move(name), {}, {}}; }
Pattern L(std::string meta, Pattern arg) {
  return {Pattern::Kind::kLabel, std::move(meta), {}, {std::move(arg)}};
}
Pattern O(std::string op, std::vector<Pattern> args, std::vector<ParamPattern> params = {}) {
  return {Pattern::Kind::kOp, std::move(op), std::move(params), std::move(args)};
}
ParamPattern M(std::string meta) { return {std::move(meta), nullptr}; }
ParamPattern C(std::function<double(const Binding&)> f) { return {"", std::move(f)}; }
ParamPattern K(double v) {
  return {"", [v](const Binding&) { return v; }};
}

Axiom equation(std::string id, std::string text, std::size_t depth, Pattern lhs, Pattern rhs) {
  Axiom a;
  a.id = std::move(id);
  a.text = std::move(text);
  a.depth = depth;
  a.lhs = std::move(lhs);
  a.rhs = std::move(rhs);
  a.eps = [](const Binding&, const GradedTheory&) { return 0.0; };
  return a;
}

void pattern_names(const Pattern& p, std::set<std::string>& vars, std::set<std::string>& reals,
                   std::set<std::string>& labels) {
  if (p.kind == Pattern::Kind::kVar) vars.insert(p.name);
  if (p.kind == Pattern::Kind::kLabel) labels.insert(p.name);
  for (const ParamPattern& q : p.params)
    if (!q.meta.empty()) reals.insert(q.meta);
  for (const Pattern& a : p.args) pattern_names(a, vars, reals, labels);
}

std::vector<Axiom> base_axioms(BaseTheory base) {
  std::vector<Axiom> ax;
  if (base == BaseTheory::kPowerset || base == BaseTheory::kFuzzy) {
    ax.push_back(equation("jsl.assoc", "plus(plus(x, y), z) = plus(x, plus(y, z))", 0,
                          O("plus", {O("plus", {V("x"), V("y")}), V("z")}),
                          O("plus", {V("x"), O("plus", {V("y"), V("z")})})));
    ax.push_back(equation("jsl.comm", "plus(x, y) = plus(y, x)", 0, O("plus", {V("x"), V("y")}),
                          O("plus", {V("y"), V("x")})));
    ax.push_back(equation("jsl.idem", "plus(x, x) = x", 0, O("plus", {V("x"), V("x")}), V("x")));
    ax.push_back(
        equation("jsl.unit", "plus(x, zero) = x", 0, O("plus", {V("x"), O("zero", {})}), V("x")));
  }
  if (base == BaseTheory::kFuzzy) {
    ax.push_back(equation("fz.one", "sc(1, x) = x", 0, O("sc", {V("x")}, {K(1.0)}), V("x")));
    ax.push_back(
        equation("fz.zero", "sc(0, x) = zero", 0, O("sc", {V("x")}, {K(0.0)}), O("zero", {})));
    ax.push_back(equation("fz.compose", "sc(r, sc(s, x)) = sc(min(r, s), x)", 0,
                          O("sc", {O("sc", {V("x")}, {M("s")})}, {M("r")}),
                          O("sc", {V("x")}, {C([](const Binding& b) {
                                      return std::min(b.reals.at("r"), b.reals.at("s"));
                                    })})));
    ax.push_back(equation("fz.plus", "sc(r, plus(x, y)) = plus(sc(r, x), sc(r, y))", 0,
                          O("sc", {O("plus", {V("x"), V("y")})}, {M("r")}),
                          O("plus", {O("sc", {V("x")}, {M("r")}), O("sc", {V("y")}, {M("r")})})));
    ax.push_back(equation("fz.join", "plus(sc(r, x), sc(s, x)) = sc(max(r, s), x)", 0,
                          O("plus", {O("sc", {V("x")}, {M("r")}), O("sc", {V("x")}, {M("s")})}),
                          O("sc", {V("x")}, {C([](const Binding& b) {
                                      return std::max(b.reals.at("r"), b.reals.at("s"));
                                    })})));
    ax.push_back(equation("fz.bottom", "sc(r, zero) = zero", 0, O("sc", {O("zero", {})}, {M("r")}),
                          O("zero", {})));
    Axiom d;
    d.id = "fz.dist";
    d.text = "x =e y |- sc(r, x) =e sc(s, y)  if |r - s| <= e";
    d.hyps = {{"x", "y", "e"}};
    d.lhs = O("sc", {V("x")}, {M("r")});
    d.rhs = O("sc", {V("y")}, {M("s")});
    d.eps = [](const Binding& b, const GradedTheory&) { return b.reals.at("e"); };
    d.side = [](const Binding& b, const GradedTheory&) {
      return std::abs(b.reals.at("r") - b.reals.at("s")) <= b.reals.at("e") + kTol;
    };
    ax.push_back(std::move(d));
  }
  if (base == BaseTheory::kDist) {
    ax.push_back(equation("bary.one", "p(1, x, y) = x", 0, O("p", {V("x"), V("y")}, {K(1.0)}),
                          V("x")));
    ax.push_back(
        equation("bary.idem", "p(r, x, x) = x", 0, O("p", {V("x"), V("x")}, {M("r")}), V("x")));
    ax.push_back(equation(
        "bary.comm", "p(r, x, y) = p(1 - r, y, x)", 0, O("p", {V("x"), V("y")}, {M("r")}),
        O("p", {V("y"), V("x")}, {C([](const Binding& b) { return 1.0 - b.reals.at("r"); })})));
    Axiom skew = equation(
        "bary.skew", "p(r, p(s, x, y), z) = p(r s, x, p((r - r s) / (1 - r s), y, z))", 0,
        O("p", {O("p", {V("x"), V("y")}, {M("s")}), V("z")}, {M("r")}),
        O("p",
          {V("x"), O("p", {V("y"), V("z")}, {C([](const Binding& b) {
                       const double r = b.reals.at("r"), s = b.reals.at("s");
                       return (r - r * s) / (1.0 - r * s);
                     })})},
          {C([](const Binding& b) { return b.reals.at("r") * b.reals.at("s"); })}));
    skew.side = [](const Binding& b, const GradedTheory&) {
      return b.reals.at("r") * b.reals.at("s") < 1.0 - 1e-12;
    };
    ax.push_back(std::move(skew));
    Axiom ip;
    ip.id = "bary.interp";
    ip.text = "x =e y, u =f v |- p(r, x, u) =(r e + (1 - r) f) p(r, y, v)";
    ip.hyps = {{"x", "y", "e"}, {"u", "v", "f"}};
    ip.lhs = O("p", {V("x"), V("u")}, {M("r")});
    ip.rhs = O("p", {V("y"), V("v")}, {M("r")});
    ip.eps = [](const Binding& b, const GradedTheory&) {
      const double r = b.reals.at("r");
      return clamp01(r * b.reals.at("e") + (1.0 - r) * b.reals.at("f"));
    };
    ax.push_back(std::move(ip));
  }
  return ax;
}

std::vector<Axiom> depth1_axioms(BaseTheory base) {
  std::vector<Axiom> ax;
  switch (base) {
    case BaseTheory::kFuzzy:
      ax.push_back(equation("distr.sc", "a(sc(r, x)) = sc(r, a(x))", 1,
                            L("a", O("sc", {V("x")}, {M("r")})),
                            O("sc", {L("a", V("x"))}, {M("r")})));
      [[fallthrough]];
    case BaseTheory::kPowerset:
      ax.push_back(equation("distr.plus", "a(plus(x, y)) = plus(a(x), a(y))", 1,
                            L("a", O("plus", {V("x"), V("y")})),
                            O("plus", {L("a", V("x")), L("a", V("y"))})));
      ax.push_back(equation("distr.zero", "a(zero) = zero", 1, L("a", O("zero", {})),
                            O("zero", {})));
      break;
    case BaseTheory::kDist:
      ax.push_back(equation("distr.p", "a(p(r, x, y)) = p(r, a(x), a(y))", 1,
                            L("a", O("p", {V("x"), V("y")}, {M("r")})),
                            O("p", {L("a", V("x")), L("a", V("y"))}, {M("r")})));
      break;
  }
  Axiom d;
  d.id = "label.dist";
  d.text = "x =e y |- a(x) =k(d(a,b), e) b(y)";
  d.depth = 1;
  d.hyps = {{"x", "y", "e"}};
  d.lhs = L("a", V("x"));
  d.rhs = L("b", V("y"));
  d.eps = [](const Binding& b, const GradedTheory& t) {
    const auto& ls = t.labels();
    return t.tensor().combine(ls(ls.index_of(b.labels.at("a")), ls.index_of(b.labels.at("b"))),
                              b.reals.at("e"));
  };
  ax.push_back(std::move(d));
  return ax;
}

}  // namespace

std::vector<std::string> Axiom::variables() const {
  std::set<std::string> vars, reals, labels;
  pattern_names(lhs, vars, reals, labels);
  pattern_names(rhs, vars, reals, labels);
  for (const auto& h : hyps) vars.insert({h.x, h.y});
  return {vars.begin(), vars.end()};
}

std::vector<std::string> Axiom::real_metas() const {
  std::set<std::string> vars, reals, labels;
  pattern_names(lhs, vars, reals, labels);
  pattern_names(rhs, vars, reals, labels);
  return {reals.begin(), reals.end()};
}

std::vector<std::string> Axiom::label_metas() const {
  std::set<std::string> vars, reals, labels;
  pattern_names(lhs, vars, reals, labels);
  pattern_names(rhs, vars, reals, labels);
  return {labels.begin(), labels.end()};
}

GradedTheory::GradedTheory(BaseTheory base, LabelSpace labels, TensorKind tensor)
    : base_(base), labels_(std::move(labels)), tensor_(tensor) {
  switch (base) {
    case BaseTheory::kPowerset:
      signature_.ops = {{"zero", 0, 0, 0}, {"plus", 2, 0, 0}};
      break;
    case BaseTheory::kFuzzy:
      signature_.ops = {{"zero", 0, 0, 0}, {"plus", 2, 0, 0}, {"sc", 1, 0, 1}};
      break;
    case BaseTheory::kDist:
      signature_.ops = {{"p", 2, 0, 1}};
      break;
  }
  for (const std::string& a : labels_.points()) {
    if (signature_.find(a) || a == "zero" || a == "plus" || a == "sc" || a == "p")
      throw ValidationError("label '" + a + "' clashes with a base operation");
    signature_.ops.push_back({a, 1, 1, 0});
  }
  axioms_ = base_axioms(base);
  for (Axiom& a : depth1_axioms(base)) axioms_.push_back(std::move(a));
}

std::string GradedTheory::tag() const {
  switch (base_) {
    case BaseTheory::kPowerset:
      return "metric_trace_theory";
    case BaseTheory::kFuzzy:
      return "fuzzy_theory";
    case BaseTheory::kDist:
      return "prob_theory";
  }
  return "?";
}

const Axiom* GradedTheory::find_axiom(const std::string& id) const {
  for (const Axiom& a : axioms_)
    if (a.id == id) return &a;
  return nullptr;
}

GradedTheory build_trace_theory(BaseTheory base, const LabelSpace& labels, const TensorKind& t) {
  if (base == BaseTheory::kFuzzy && !labels.is_discrete())
    throw DiscreteRequired("the fuzzy trace theory requires a discrete label space");
  return GradedTheory(base, labels, t);
}

bool match_pattern(const Pattern& p, const Term& t, const std::map<std::string, Term>& subst,
                   const GradedTheory& theory, Binding& b) {
  switch (p.kind) {
    case Pattern::Kind::kVar: {
      auto it = subst.find(p.name);
      return it != subst.end() && approx_equal(it->second, t);
    }
    case Pattern::Kind::kLabel: {
      if (t.variable || t.args.size() != 1 || !t.params.empty() || !theory.is_label(t.head))
        return false;
      auto [it, fresh] = b.labels.emplace(p.name, t.head);
      if (!fresh && it->second != t.head) return false;
      return match_pattern(p.args.front(), t.args.front(), subst, theory, b);
    }
    case Pattern::Kind::kOp: {
      if (t.variable || t.head != p.name || t.args.size() != p.args.size() ||
          t.params.size() != p.params.size())
        return false;
      for (std::size_t i = 0; i < p.params.size(); ++i) {
        if (p.params[i].meta.empty()) continue;
        auto [it, fresh] = b.reals.emplace(p.params[i].meta, t.params[i]);
        if (!fresh && std::abs(it->second - t.params[i]) > kTol) return false;
      }
      for (std::size_t i = 0; i < p.args.size(); ++i)
        if (!match_pattern(p.args[i], t.args[i], subst, theory, b)) return false;
      return true;
    }
  }
  return false;
}

Term instantiate_pattern(const Pattern& p, const std::map<std::string, Term>& subst,
                         const Binding& b) {
  switch (p.kind) {
    case Pattern::Kind::kVar:
      return subst.at(p.name);
    case Pattern::Kind::kLabel:
      return Term::app(b.labels.at(p.name), {instantiate_pattern(p.args.front(), subst, b)});
    case Pattern::Kind::kOp: {
      std::vector<double> params;
      for (const ParamPattern& q : p.params)
        params.push_back(q.meta.empty() ? q.expr(b) : b.reals.at(q.meta));
      std::vector<Term> args;
      for (const Pattern& a : p.args) args.push_back(instantiate_pattern(a, subst, b));
      return Term::app(p.name, std::move(args), std::move(params));
    }
  }
  return {};
}

std::string Judgement::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < ctx.size(); ++i)
    s += (i ? ", " : "") + ctx[i].x + " =" + format_number(ctx[i].eps) + " " + ctx[i].y;
  return s + (ctx.empty() ? "|- " : " |- ") + lhs.to_string() + " =" + format_number(eps) + " " +
         rhs.to_string();
}

namespace {

constexpr double kEpsTol = 1e-9;

std::string show(double x) { return format_number(std::round(x * 1e12) / 1e12); }

struct NodeCheck {
  const GradedTheory& theory;
  const std::vector<ContextEntry>& root_ctx;

  std::optional<CheckResult> walk(const DerivationTree& node, const std::string& path) const {
    if (node.rule == "arch")
      throw ArchUnsupported("the archimedean rule is not accepted in proof objects (at " + path +
                            ")");
    for (std::size_t i = 0; i < node.premises.size(); ++i)
      if (auto r = walk(node.premises[i], path + "/" + std::to_string(i))) return r;
    std::string reason = local(node);
    if (!reason.empty()) return CheckResult{false, path, reason};
    return std::nullopt;
  }

  static bool same_sides(const Judgement& a, const Judgement& b) {
    return approx_equal(a.lhs, b.lhs) && approx_equal(a.rhs, b.rhs);
  }

  std::string premise_count(const DerivationTree& n, std::size_t k) const {
    if (n.premises.size() != k)
      return n.rule + " needs " + std::to_string(k) + " premise(s), got " +
             std::to_string(n.premises.size());
    return "";
  }

  // Empty string when the node is valid.
  std::string local(const DerivationTree& n) const {
    const Judgement& c = n.conclusion;
    if (!(c.eps >= 0.0 && c.eps <= 1.0)) return "distance " + show(c.eps) + " outside [0,1]";
    if (c.ctx != root_ctx) return "context differs from the root context";
    try {
      check_term(c.lhs, theory.signature());
      check_term(c.rhs, theory.signature());
    } catch (const ValidationError& e) {
      return e.what();
    }
    const auto dl = term_depth(c.lhs, theory.signature());
    const auto dr = term_depth(c.rhs, theory.signature());
    if (!dl || !dr) return "a side has no uniform depth";
    if (!dl->admits(dr->depth) && !dr->admits(dl->depth))
      return "sides have different uniform depths";

    if (n.rule == "refl") {
      if (auto e = premise_count(n, 0); !e.empty()) return e;
      if (c.eps != 0.0) return "refl concludes distance 0";
      if (!approx_equal(c.lhs, c.rhs)) return "refl needs identical sides";
      return "";
    }
    if (n.rule == "sym") {
      if (auto e = premise_count(n, 1); !e.empty()) return e;
      const Judgement& p = n.premises[0].conclusion;
      if (!approx_equal(p.lhs, c.rhs) || !approx_equal(p.rhs, c.lhs))
        return "sym must swap the premise sides";
      if (std::abs(p.eps - c.eps) > kEpsTol) return "sym must keep the distance";
      return "";
    }
    if (n.rule == "triang") {
      if (auto e = premise_count(n, 2); !e.empty()) return e;
      const Judgement& p = n.premises[0].conclusion;
      const Judgement& q = n.premises[1].conclusion;
      if (!approx_equal(p.lhs, c.lhs) || !approx_equal(q.rhs, c.rhs))
        return "triang sides do not match the premises";
      if (!approx_equal(p.rhs, q.lhs)) return "triang premises do not share a middle term";
      const double want = std::min(1.0, p.eps + q.eps);
      if (std::abs(c.eps - want) > kEpsTol)
        return "triang distance " + show(c.eps) + " != " + show(want);
      return "";
    }
    if (n.rule == "wk") {
      if (auto e = premise_count(n, 1); !e.empty()) return e;
      const Judgement& p = n.premises[0].conclusion;
      if (!same_sides(p, c)) return "wk must keep both sides";
      if (c.eps < p.eps - kEpsTol) return "wk cannot decrease the distance";
      return "";
    }
    if (n.rule == "nexp") {
      if (c.lhs.variable || c.rhs.variable || c.lhs.head != c.rhs.head)
        return "nexp needs the same operation on both sides";
      if (c.lhs.params.size() != c.rhs.params.size()) return "nexp parameters differ";
      for (std::size_t i = 0; i < c.lhs.params.size(); ++i)
        if (std::abs(c.lhs.params[i] - c.rhs.params[i]) > kEpsTol) return "nexp parameters differ";
      if (auto e = premise_count(n, c.lhs.args.size()); !e.empty()) return e;
      for (std::size_t i = 0; i < n.premises.size(); ++i) {
        const Judgement& p = n.premises[i].conclusion;
        if (!approx_equal(p.lhs, c.lhs.args[i]) || !approx_equal(p.rhs, c.rhs.args[i]))
          return "nexp premise " + std::to_string(i) + " does not relate argument " +
                 std::to_string(i);
        if (std::abs(p.eps - c.eps) > kEpsTol)
          return "nexp premise " + std::to_string(i) + " has a different distance";
      }
      return "";
    }
    if (n.rule == "assn") {
      if (auto e = premise_count(n, 0); !e.empty()) return e;
      if (!c.lhs.variable || !c.rhs.variable) return "assn relates variables only";
      for (const ContextEntry& g : root_ctx)
        if (g.x == c.lhs.head && g.y == c.rhs.head && std::abs(g.eps - c.eps) <= kEpsTol)
          return "";
      return "conclusion is not an assumption of the context";
    }
    if (n.rule == "ax") return check_axiom(n);
    return "unknown rule '" + n.rule + "'";
  }

  std::string check_axiom(const DerivationTree& n) const {
    const Judgement& c = n.conclusion;
    const Axiom* ax = theory.find_axiom(n.axiom);
    if (!ax) return "unknown axiom '" + n.axiom + "'";
    if (!n.subst_depth) return "ax needs the uniform depth of its substitution";
    for (const std::string& v : ax->variables())
      if (!n.subst.count(v)) return "substitution misses variable " + v;
    for (const auto& [v, t] : n.subst) {
      try {
        check_term(t, theory.signature());
      } catch (const ValidationError& e) {
        return "substitution for " + v + ": " + e.what();
      }
      auto d = term_depth(t, theory.signature());
      if (!d || !d->admits(*n.subst_depth))
        return "substitution for " + v + " does not have uniform depth " +
               std::to_string(*n.subst_depth);
    }
    if (auto e = premise_count(n, ax->hyps.size()); !e.empty()) return e;
    Binding b;
    for (std::size_t i = 0; i < ax->hyps.size(); ++i) {
      const auto& h = ax->hyps[i];
      const Judgement& p = n.premises[i].conclusion;
      if (!approx_equal(p.lhs, n.subst.at(h.x)) || !approx_equal(p.rhs, n.subst.at(h.y)))
        return "premise " + std::to_string(i) + " does not prove hypothesis " + h.x + " = " + h.y;
      b.reals[h.eps] = p.eps;
    }
    if (!match_pattern(ax->lhs, c.lhs, n.subst, theory, b) ||
        !match_pattern(ax->rhs, c.rhs, n.subst, theory, b))
      return "conclusion is not an instance of " + ax->id;
    if (!approx_equal(instantiate_pattern(ax->lhs, n.subst, b), c.lhs) ||
        !approx_equal(instantiate_pattern(ax->rhs, n.subst, b), c.rhs))
      return "computed parameters of " + ax->id + " do not match";
    if (ax->side && !ax->side(b, theory)) return "side condition of " + ax->id + " fails";
    const double want = ax->eps(b, theory);
    if (std::abs(c.eps - want) > kEpsTol)
      return ax->id + " gives distance " + show(want) + ", not " + show(c.eps);
    return "";
  }
};

}  // namespace

CheckResult check_derivation(const GradedTheory& theory, const DerivationTree& proof) {
  NodeCheck chk{theory, proof.conclusion.ctx};
  if (auto r = chk.walk(proof, "root")) return *r;
  return {};
}

GradedTheory TheorySpec::build() const {
  LabelSpace ls = label_metric ? validate_metric(labels, *label_metric) : discrete_metric(labels);
  return build_trace_theory(base, ls, TensorKind(tensor, discount));
}

namespace {

Term term_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string())
    throw ParseError(std::string("missing string field '") + key + "'");
  return parse_term(j[key].get<std::string>());
}

double number_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw ParseError(std::string("missing numeric field '") + key + "'");
  return j[key].get<double>();
}

DerivationTree node_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("proof node must be an object");
  DerivationTree n;
  if (!j.contains("rule") || !j["rule"].is_string()) throw ParseError("proof node without rule");
  n.rule = j["rule"].get<std::string>();
  if (!j.contains("conclusion") || !j["conclusion"].is_object())
    throw ParseError("proof node without conclusion");
  const json& c = j["conclusion"];
  if (c.contains("ctx")) {
    if (!c["ctx"].is_array()) throw ParseError("ctx must be an array");
    for (const json& g : c["ctx"]) {
      if (!g.is_array() || g.size() != 3 || !g[0].is_string() || !g[1].is_string() ||
          !g[2].is_number())
        throw ParseError("ctx entries are [\"x\", \"y\", eps]");
      n.conclusion.ctx.push_back({g[0].get<std::string>(), g[1].get<std::string>(),
                                  g[2].get<double>()});
    }
  }
  n.conclusion.lhs = term_field(c, "lhs");
  n.conclusion.rhs = term_field(c, "rhs");
  n.conclusion.eps = number_field(c, "eps");
  if (j.contains("premises")) {
    if (!j["premises"].is_array()) throw ParseError("premises must be an array");
    for (const json& p : j["premises"]) n.premises.push_back(node_from_json(p));
  }
  if (j.contains("axiom")) {
    if (!j["axiom"].is_string()) throw ParseError("axiom must be a string");
    n.axiom = j["axiom"].get<std::string>();
  }
  if (j.contains("subst")) {
    if (!j["subst"].is_object()) throw ParseError("subst must be an object");
    for (const auto& [k, v] : j["subst"].items()) {
      if (!v.is_string()) throw ParseError("subst values are term strings");
      n.subst[k] = parse_term(v.get<std::string>());
    }
  }
  if (j.contains("subst_depth")) {
    if (!j["subst_depth"].is_number_unsigned()) throw ParseError("subst_depth must be a natural");
    n.subst_depth = j["subst_depth"].get<std::size_t>();
  }
  return n;
}

json node_to_json(const DerivationTree& n) {
  json ctx = json::array();
  for (const auto& g : n.conclusion.ctx) ctx.push_back({g.x, g.y, g.eps});
  json j = {{"rule", n.rule},
            {"conclusion",
             {{"ctx", ctx},
              {"lhs", n.conclusion.lhs.to_string()},
              {"rhs", n.conclusion.rhs.to_string()},
              {"eps", n.conclusion.eps}}}};
  json prem = json::array();
  for (const auto& p : n.premises) prem.push_back(node_to_json(p));
  j["premises"] = prem;
  if (!n.axiom.empty()) j["axiom"] = n.axiom;
  if (!n.subst.empty()) {
    json s = json::object();
    for (const auto& [k, v] : n.subst) s[k] = v.to_string();
    j["subst"] = s;
  }
  if (n.subst_depth) j["subst_depth"] = *n.subst_depth;
  return j;
}

TheorySpec theory_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("theory must be an object");
  TheorySpec t;
  if (!j.contains("base") || !j["base"].is_string()) throw ParseError("theory without base");
  t.base = base_theory_from_string(j["base"].get<std::string>());
  if (!j.contains("labels") || !j["labels"].is_array()) throw ParseError("theory without labels");
  for (const json& l : j["labels"]) {
    if (!l.is_string()) throw ParseError("labels are strings");
    t.labels.push_back(l.get<std::string>());
  }
  try {
    if (j.contains("label_metric"))
      t.label_metric = j["label_metric"].get<std::vector<std::vector<double>>>();
    if (j.contains("tensor")) t.tensor = tensor_variant_from_string(j["tensor"].get<std::string>());
    if (j.contains("discount")) t.discount = j["discount"].get<double>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed theory: ") + e.what());
  }
  return t;
}

}  // namespace

ProofFile parse_proof(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  ProofFile f;
  try {
    if (j.is_object() && j.contains("proof")) {
      if (j.contains("theory")) f.theory = theory_from_json(j["theory"]);
      f.proof = node_from_json(j["proof"]);
    } else {
      f.proof = node_from_json(j);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed proof: ") + e.what());
  }
  return f;
}

ProofFile load_proof(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_proof(ss.str());
}

std::string proof_to_json(const ProofFile& f) {
  json out;
  if (f.theory) {
    json t = {{"base", to_string(f.theory->base)},
              {"labels", f.theory->labels},
              {"tensor", to_string(f.theory->tensor)},
              {"discount", f.theory->discount}};
    if (f.theory->label_metric) t["label_metric"] = *f.theory->label_metric;
    out = {{"theory", t}, {"proof", node_to_json(f.proof)}};
  } else {
    out = node_to_json(f.proof);
  }
  return out.dump(2);
}

namespace {

ModelAtom prepend(std::size_t a, const ModelAtom& at) {
  ModelAtom out;
  out.first.reserve(at.first.size() + 1);
  out.first.push_back(a);
  out.first.insert(out.first.end(), at.first.begin(), at.first.end());
  out.second = at.second;
  return out;
}

ModelValue empty_value(BaseTheory base) {
  if (base == BaseTheory::kFuzzy) return FuzzySet<ModelAtom>{};
  if (base == BaseTheory::kDist) return FinDist<ModelAtom>{};
  return FinSet<ModelAtom>{};
}

ModelValue unit_value(BaseTheory base, const ModelAtom& a) {
  if (base == BaseTheory::kFuzzy) return fuzzy_unit(a);
  if (base == BaseTheory::kDist) return dist_unit(a);
  return set_unit(a);
}

ModelValue interpret_rec(const GradedTheory& th, const Term& t,
                         const std::map<std::string, ModelValue>& env) {
  if (t.variable) {
    auto it = env.find(t.head);
    if (it == env.end()) throw ValidationError("variable '" + t.head + "' is not a point");
    return it->second;
  }
  std::vector<ModelValue> args;
  for (const Term& a : t.args) args.push_back(interpret_rec(th, a, env));
  if (auto l = th.labels().find(t.head)) {
    return std::visit(
        [&](const auto& v) -> ModelValue {
          return lift_map([&](const ModelAtom& at) { return prepend(*l, at); }, v);
        },
        args[0]);
  }
  if (t.head == "zero") return empty_value(th.base());
  if (t.head == "plus") {
    if (th.base() == BaseTheory::kFuzzy) {
      auto out = std::get<FuzzySet<ModelAtom>>(args[0]);
      for (const auto& [x, m] : std::get<FuzzySet<ModelAtom>>(args[1]).membership) out.join(x, m);
      return out;
    }
    auto out = std::get<FinSet<ModelAtom>>(args[0]);
    const auto& rhs = std::get<FinSet<ModelAtom>>(args[1]).elements;
    out.elements.insert(rhs.begin(), rhs.end());
    return out;
  }
  if (t.head == "sc") {
    FuzzySet<ModelAtom> out;
    for (const auto& [x, m] : std::get<FuzzySet<ModelAtom>>(args[0]).membership)
      out.join(x, std::min(m, t.params[0]));
    return out;
  }
  if (t.head == "p") {
    const double r = t.params[0];
    FinDist<ModelAtom> out;
    for (const auto& [x, w] : std::get<FinDist<ModelAtom>>(args[0]).weights)
      if (r * w > 0.0) out.weights[x] += r * w;
    for (const auto& [x, w] : std::get<FinDist<ModelAtom>>(args[1]).weights)
      if ((1.0 - r) * w > 0.0) out.weights[x] += (1.0 - r) * w;
    return out;
  }
  throw ValidationError("unknown operation '" + t.head + "'");
}

}  // namespace

ModelValue interpret_in(const GradedTheory& theory, const Term& term,
                        const std::map<std::string, ModelValue>& env) {
  check_term(term, theory.signature());
  return interpret_rec(theory, term, env);
}

ModelValue free_model_interpret(const GradedTheory& theory, const Term& term, std::size_t n,
                                const FinMetric& x) {
  check_term(term, theory.signature());
  auto d = term_depth(term, theory.signature());
  if (!d || !d->admits(n))
    throw DepthMismatch("term " + term.to_string() + " does not have uniform depth " +
                        std::to_string(n));
  std::map<std::string, ModelValue> env;
  for (const std::string& v : term_variables(term)) {
    if (!x.find(v)) throw ValidationError("variable '" + v + "' is not a point of the space");
    env.emplace(v, unit_value(theory.base(), {Word{}, v}));
  }
  return interpret_rec(theory, term, env);
}

ModelValue model_bind(const ModelValue& outer,
                      const std::function<ModelValue(const std::string&)>& f) {
  auto shift = [](const Word& w, const ModelAtom& at) {
    ModelAtom out;
    out.first = w;
    out.first.insert(out.first.end(), at.first.begin(), at.first.end());
    out.second = at.second;
    return out;
  };
  if (const auto* s = std::get_if<FinSet<ModelAtom>>(&outer)) {
    FinSet<FinSet<ModelAtom>> nested;
    for (const auto& [w, z] : s->elements)
      nested.elements.insert(
          lift_map([&](const ModelAtom& at) { return shift(w, at); },
                   std::get<FinSet<ModelAtom>>(f(z))));
    return lift_flatten(nested);
  }
  if (const auto* a = std::get_if<FuzzySet<ModelAtom>>(&outer)) {
    FuzzySet<FuzzySet<ModelAtom>> nested;
    for (const auto& [wz, m] : a->membership)
      nested.join(lift_map([&](const ModelAtom& at) { return shift(wz.first, at); },
                           std::get<FuzzySet<ModelAtom>>(f(wz.second))),
                  m);
    return lift_flatten(nested);
  }
  const auto& mu = std::get<FinDist<ModelAtom>>(outer);
  FinDist<FinDist<ModelAtom>> nested;
  for (const auto& [wz, p] : mu.weights)
    nested.weights[lift_map([&](const ModelAtom& at) { return shift(wz.first, at); },
                            std::get<FinDist<ModelAtom>>(f(wz.second)))] += p;
  return lift_flatten(nested);
}

double model_distance(const GradedTheory& theory, const ModelValue& a, const ModelValue& b,
                      const FinMetric& x) {
  const LabelSpace& ls = theory.labels();
  auto d = [&](const ModelAtom& u, const ModelAtom& v) {
    if (u.first.size() != v.first.size()) throw DepthMismatch("atoms of different depth");
    double acc = x(x.index_of(u.second), x.index_of(v.second));
    for (std::size_t i = u.first.size(); i-- > 0;)
      acc = theory.tensor().combine(ls(u.first[i], v.first[i]), acc);
    return acc;
  };
  if (a.index() != b.index()) throw SemanticsMismatch("model values of different theories");
  if (const auto* s = std::get_if<FinSet<ModelAtom>>(&a))
    return hausdorff_distance(*s, std::get<FinSet<ModelAtom>>(b), d);
  if (const auto* f = std::get_if<FuzzySet<ModelAtom>>(&a)) {
    std::size_t depth = 0;
    for (const auto& [at, m] : f->membership) depth = at.first.size();
    for (const auto& [at, m] : std::get<FuzzySet<ModelAtom>>(b).membership) depth = at.first.size();
    double carrier = std::pow(static_cast<double>(ls.size()), static_cast<double>(depth)) *
                     static_cast<double>(x.size());
    const auto size = carrier > 1e18 ? static_cast<std::size_t>(-1)
                                     : static_cast<std::size_t>(carrier);
    return fuzzy_hausdorff_distance(*f, std::get<FuzzySet<ModelAtom>>(b), d, size);
  }
  return kantorovich_distance(std::get<FinDist<ModelAtom>>(a), std::get<FinDist<ModelAtom>>(b), d)
      .value;
}

double free_model_distance(const GradedTheory& theory, const Term& s, const Term& t,
                           const FinMetric& x) {
  check_term(s, theory.signature());
  check_term(t, theory.signature());
  auto ds = term_depth(s, theory.signature());
  auto dt = term_depth(t, theory.signature());
  if (!ds || !dt) throw DepthMismatch("a term has no uniform depth");
  const std::size_t n = std::max(ds->depth, dt->depth);
  if (!ds->admits(n) || !dt->admits(n))
    throw DepthMismatch("terms have uniform depths " + std::to_string(ds->depth) + " and " +
                        std::to_string(dt->depth));
  return model_distance(theory, free_model_interpret(theory, s, n, x),
                        free_model_interpret(theory, t, n, x), x);
}

ModelValue canonicalize(const ModelValue& v) {
  auto round = [](double w) { return std::round(w * 1e12) / 1e12; };
  if (const auto* f = std::get_if<FuzzySet<ModelAtom>>(&v)) {
    FuzzySet<ModelAtom> out;
    for (const auto& [x, m] : f->membership)
      if (round(m) > 0.0) out.membership[x] = round(m);
    return out;
  }
  if (const auto* d = std::get_if<FinDist<ModelAtom>>(&v)) {
    FinDist<ModelAtom> out;
    for (const auto& [x, w] : d->weights)
      if (round(w) > 0.0) out.weights[x] = round(w);
    return out;
  }
  return v;
}

std::string to_string(const GradedTheory& theory, const ModelValue& v) {
  auto atom = [&](const ModelAtom& a) {
    std::string w = word_to_string(theory.labels(), a.first);
    return "(" + w + (w.empty() ? "" : ",") + a.second + ")";
  };
  std::string s = "{";
  bool first = true;
  std::visit(
      [&](const auto& val) {
        using V = std::decay_t<decltype(val)>;
        if constexpr (std::is_same_v<V, FinSet<ModelAtom>>) {
          for (const auto& a : val.elements) {
            s += (first ? "" : ", ") + atom(a);
            first = false;
          }
        } else if constexpr (std::is_same_v<V, FuzzySet<ModelAtom>>) {
          for (const auto& [a, m] : val.membership) {
            s += (first ? "" : ", ") + atom(a) + ":" + format_number(m);
            first = false;
          }
        } else {
          for (const auto& [a, p] : val.weights) {
            s += (first ? "" : ", ") + atom(a) + ":" + format_number(p);
            first = false;
          }
        }
      },
      v);
  return s + "}";
}

}  // namespace gradist
