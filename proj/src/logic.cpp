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

#include "gradist/logic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "gradist/errors.hpp"

namespace gradist {

ModalSignature ModalSignature::for_semantics(Semantics s) {
  switch (s) {
    case Semantics::kMetricTrace:
      return {s, {PropOp::kOr}};
    case Semantics::kFuzzyTrace:
      return {s, {PropOp::kOr, PropOp::kMeetC}};
    case Semantics::kProbTrace:
      return {s, {PropOp::kNeg, PropOp::kAff}};
    case Semantics::kStreamBranching:
      return {s, {PropOp::kOr, PropOp::kAnd, PropOp::kNeg, PropOp::kAddC, PropOp::kSubC}};
  }
  return {s, {}};
}

bool ModalSignature::allows(PropOp op) const {
  return std::find(ops.begin(), ops.end(), op) != ops.end();
}

bool ModalSignature::ops_nonexpansive_on_grid(double step) const {
  std::vector<double> pts;
  for (double v = 0.0; v <= 1.0 + 1e-12; v += step) pts.push_back(std::min(v, 1.0));
  for (PropOp op : ops) {
    std::vector<std::vector<double>> const_sets{{}};
    if (op_constant_count(op) == 1) {
      const_sets.clear();
      for (double c : pts) const_sets.push_back({c});
    } else if (op_constant_count(op) == 2) {
      const_sets.clear();
      for (double p : pts)
        for (double q : pts)
          if (p + q <= 1.0 + 1e-12) const_sets.push_back({p, q});
    }
    for (const auto& cs : const_sets) {
      if (op_arity(op) == 1) {
        for (double x : pts)
          for (double y : pts) {
            double fx = apply_op(op, cs, std::vector<double>{x});
            double fy = apply_op(op, cs, std::vector<double>{y});
            if (fx < -kTol || fx > 1.0 + kTol) return false;
            if (std::abs(fx - fy) > std::abs(x - y) + kTol) return false;
          }
      } else {
        for (double x1 : pts)
          for (double x2 : pts)
            for (double y1 : pts)
              for (double y2 : pts) {
                double fx = apply_op(op, cs, std::vector<double>{x1, x2});
                double fy = apply_op(op, cs, std::vector<double>{y1, y2});
                if (std::abs(fx - fy) > std::max(std::abs(x1 - y1), std::abs(x2 - y2)) + kTol)
                  return false;
              }
      }
    }
  }
  return true;
}

void check_whitelist(const Formula& f, Semantics s) {
  if (f.kind() == Formula::Kind::kProp) {
    const auto sig = ModalSignature::for_semantics(s);
    if (!sig.allows(f.op()))
      throw WhitelistError("operator " + to_string(f.op()) + " is not available under " +
                           to_string(s));
  }
  for (const Formula& sub : f.subs()) check_whitelist(sub, s);
}

double modality_metric(const LabelSpace& labels, std::size_t a, const FinSet<ValuedLabel>& u) {
  double best = 0.0;
  for (const auto& [b, v] : u.elements) best = std::max(best, std::min(1.0 - labels(a, b), v));
  return best;
}

double modality_fuzzy(const LabelSpace&, std::size_t a, const FuzzySet<ValuedLabel>& u) {
  double best = 0.0;
  for (const auto& [bv, m] : u.membership)
    if (bv.first == a) best = std::max(best, std::min(m, bv.second));
  return best;
}

double modality_prob(const LabelSpace& labels, std::size_t a, const FinDist<ValuedLabel>& u) {
  double sum = 0.0;
  for (const auto& [bv, p] : u.weights) sum += p * (1.0 - labels(a, bv.first)) * bv.second;
  return clamp01(sum);
}

double modality_stream(const LabelSpace& labels, std::size_t a, const ValuedLabel& u) {
  return std::min(1.0 - labels(a, u.first), u.second);
}

std::vector<double> modal_step(const Coalgebra& c, Semantics s, std::size_t a,
                               const std::vector<double>& values) {
  const LabelSpace& L = c.labels;
  std::vector<double> out(c.num_states(), 0.0);
  for (std::size_t x = 0; x < c.num_states(); ++x) {
    double r = 0.0;
    for (const Transition& t : c.trans[x]) {
      const double v = values[t.target];
      switch (s) {
        case Semantics::kMetricTrace:
          r = std::max(r, std::min(1.0 - L(a, t.label), v));
          break;
        case Semantics::kFuzzyTrace:
          if (t.label == a) r = std::max(r, std::min(t.weight, v));
          break;
        case Semantics::kProbTrace:
          r += t.weight * (1.0 - L(a, t.label)) * v;
          break;
        case Semantics::kStreamBranching:
          r = std::min(1.0 - L(a, t.label), v);
          break;
      }
    }
    out[x] = clamp01(r);
  }
  return out;
}

namespace {

std::size_t label_index(const Coalgebra& c, const std::string& name) {
  auto i = c.labels.find(name);
  if (!i) throw ValidationError("modality label '" + name + "' is not declared by the system");
  return *i;
}

std::vector<double> eval_rec(const Formula& f, const Coalgebra& c, Semantics s) {
  switch (f.kind()) {
    case Formula::Kind::kConst1:
      return std::vector<double>(c.num_states(), 1.0);
    case Formula::Kind::kModal:
      return modal_step(c, s, label_index(c, f.label()), eval_rec(f.subs().front(), c, s));
    case Formula::Kind::kProp: {
      std::vector<std::vector<double>> args;
      for (const Formula& sub : f.subs()) args.push_back(eval_rec(sub, c, s));
      std::vector<double> out(c.num_states());
      std::vector<double> point(args.size());
      for (std::size_t x = 0; x < c.num_states(); ++x) {
        for (std::size_t k = 0; k < args.size(); ++k) point[k] = args[k][x];
        out[x] = apply_op(f.op(), f.constants(), point);
      }
      return out;
    }
  }
  return {};
}

}  // namespace

std::vector<double> evaluate(const Formula& f, const Coalgebra& c, Semantics s) {
  require_compatible(c, s);
  check_whitelist(f, s);
  return eval_rec(f, c, s);
}

std::size_t PropConfig::effective_size_cap(std::size_t depth) const {
  if (size_cap != 0) return size_cap;
  return modal_only ? depth + 1 : depth + 2;
}

std::vector<double> constant_grid(PropOp op, double grid) {
  if (!(grid > 0.0 && grid <= 1.0)) throw RangeError("constant grid step must lie in (0,1]");
  const auto steps = static_cast<std::size_t>(std::floor(1.0 / grid + 1e-9));
  auto at = [&](std::size_t k) { return std::round(static_cast<double>(k) * grid * 1e12) / 1e12; };
  std::vector<double> out;
  switch (op) {
    case PropOp::kAddC:
    case PropOp::kSubC:
      for (std::size_t k = 1; k <= steps; ++k) out.push_back(at(k));
      break;
    case PropOp::kMeetC:
      for (std::size_t k = 0; k < steps; ++k) out.push_back(at(k));
      break;
    case PropOp::kAff:
      for (std::size_t k = 0; k <= steps; ++k) out.push_back(at(k));
      break;
    default:
      break;
  }
  return out;
}

namespace {

struct VectorHash {
  std::size_t operator()(const std::vector<double>& v) const {
    std::size_t h = v.size();
    for (double x : v) h ^= std::hash<double>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

struct Entry {
  Formula formula;
  std::string text;
  std::vector<double> values;
};

// Builds formulas bucket by bucket, (depth, size) with size the outer loop
// so that every subformula bucket is final before it is used. With a system
// attached, truth vectors are computed compositionally and a formula whose
// vector was already produced at the same depth by an earlier formula (in
// depth, size, text order) is dropped.
class Enumerator {
 public:
  Enumerator(Semantics s, std::vector<std::string> labels, std::size_t depth,
             const PropConfig& cfg, const Coalgebra* system)
      : sem_(s), labels_(std::move(labels)), depth_(depth), cap_(cfg.effective_size_cap(depth)),
        system_(system) {
    if (!cfg.modal_only) {
      for (PropOp op : ModalSignature::for_semantics(s).ops) {
        if (op_constant_count(op) == 0) {
          const_sets_.push_back({op, {}, {}});
        } else if (op_constant_count(op) == 1) {
          for (double c : constant_grid(op, cfg.grid)) const_sets_.push_back({op, {c}, {}});
        } else {
          auto g = constant_grid(op, cfg.grid);
          for (double p : g)
            for (double q : g)
              if (p + q <= 1.0 + 1e-12 && !(p == 1.0 && q == 0.0))
                const_sets_.push_back({op, {p, q}, {}});
        }
      }
    }
    if (system_)
      for (const auto& l : labels_) label_ids_.push_back(label_index(*system_, l));
    buckets_.assign(depth_ + 1, std::vector<std::vector<Entry>>(cap_ + 1));
    seen_.resize(depth_ + 1);
    build();
  }

  // Visits formulas in (depth, size, text) order; stops when `f` is false.
  void for_each(const std::function<bool(const Entry&)>& f) const {
    for (std::size_t d = 0; d <= depth_; ++d)
      for (std::size_t s = 1; s <= cap_; ++s)
        for (const Entry& e : buckets_[d][s])
          if (!f(e)) return;
  }

 private:
  struct OpConstants {
    PropOp op;
    std::vector<double> constants;
    // Text up to the first formula argument, e.g. "aff(0.5, 0.25, ".
    std::string prefix;
  };

  // A candidate before materialization: a modality over one entry, or an
  // operator instance over one or two entries of earlier buckets.
  struct Candidate {
    std::vector<double> values;
    std::string text;
    std::size_t modal_label = 0;
    const OpConstants* op = nullptr;
    const Entry* left = nullptr;
    const Entry* right = nullptr;
  };

  void build() {
    for (auto& oc : const_sets_) {
      oc.prefix = gradist::to_string(oc.op) + "(";
      for (double c : oc.constants) oc.prefix += format_number(c) + ", ";
    }
    for (std::size_t s = 1; s <= cap_; ++s)
      for (std::size_t d = 0; d <= depth_; ++d) {
        std::vector<Candidate> cand;
        auto offer = [&](Candidate c) {
          // Vectors already produced at this depth by an earlier bucket lose.
          if (system_ && seen_[d].count(c.values)) return;
          if (c.op)
            c.text = c.op->prefix + c.left->text + (c.right ? ", " + c.right->text : "") + ")";
          else
            c.text = "<" + labels_[c.modal_label] + ">" + c.left->text;
          cand.push_back(std::move(c));
        };
        if (d == 0 && s == 1) bucket_one();
        if (d > 0 && s >= 2)
          for (const Entry& sub : buckets_[d - 1][s - 1])
            for (std::size_t k = 0; k < labels_.size(); ++k)
              offer({system_ ? modal_step(*system_, sem_, label_ids_[k], sub.values)
                             : std::vector<double>{},
                     {}, k, nullptr, &sub, nullptr});
        for (const auto& oc : const_sets_) {
          if (op_arity(oc.op) == 1 && s >= 2) {
            for (const Entry& sub : buckets_[d][s - 1])
              offer({pointwise(oc, {&sub.values}), {}, 0, &oc, &sub, nullptr});
          } else if (op_arity(oc.op) == 2 && s >= 3) {
            for (std::size_t s1 = 1; s1 <= s - 2; ++s1) {
              const std::size_t s2 = s - 1 - s1;
              for (const Entry& l : buckets_[d][s1])
                for (const Entry& r : buckets_[d][s2])
                  offer({pointwise(oc, {&l.values, &r.values}), {}, 0, &oc, &l, &r});
            }
          }
        }
        // Per truth vector keep the candidate with the least text.
        std::vector<std::size_t> keep;
        if (system_) {
          std::unordered_map<std::vector<double>, std::size_t, VectorHash> least;
          for (std::size_t i = 0; i < cand.size(); ++i) {
            auto [it, fresh] = least.try_emplace(cand[i].values, i);
            if (!fresh && cand[i].text < cand[it->second].text) it->second = i;
          }
          for (const auto& [v, i] : least) keep.push_back(i);
        } else {
          for (std::size_t i = 0; i < cand.size(); ++i) keep.push_back(i);
        }
        std::sort(keep.begin(), keep.end(),
                  [&](std::size_t a, std::size_t b) { return cand[a].text < cand[b].text; });
        auto& bucket = buckets_[d][s];
        for (std::size_t i : keep) {
          Candidate& c = cand[i];
          if (system_) seen_[d].insert(c.values);
          Formula f = c.op ? Formula::prop(c.op->op, c.op->constants,
                                           c.right ? std::vector<Formula>{c.left->formula,
                                                                          c.right->formula}
                                                   : std::vector<Formula>{c.left->formula})
                           : Formula::modal(labels_[c.modal_label], c.left->formula);
          bucket.push_back({std::move(f), std::move(c.text), std::move(c.values)});
        }
      }
  }

  void bucket_one() {
    const std::vector<double> v = ones();
    if (system_) seen_[0].insert(v);
    buckets_[0][1].push_back({Formula::one(), "1", v});
  }

  std::vector<double> ones() const {
    return system_ ? std::vector<double>(system_->num_states(), 1.0) : std::vector<double>{};
  }

  std::vector<double> pointwise(const OpConstants& oc,
                                std::initializer_list<const std::vector<double>*> args) const {
    if (!system_) return {};
    std::vector<double> out(system_->num_states());
    std::vector<double> point(args.size());
    for (std::size_t x = 0; x < out.size(); ++x) {
      std::size_t k = 0;
      for (const auto* a : args) point[k++] = (*a)[x];
      out[x] = apply_op(oc.op, oc.constants, point);
    }
    return out;
  }

  Semantics sem_;
  std::vector<std::string> labels_;
  std::size_t depth_, cap_;
  const Coalgebra* system_;
  std::vector<std::size_t> label_ids_;
  std::vector<OpConstants> const_sets_;
  std::vector<std::vector<std::vector<Entry>>> buckets_;
  std::vector<std::unordered_set<std::vector<double>, VectorHash>> seen_;
};

LogicalDistanceMatrix distance_matrix(const Coalgebra& c, Semantics s, std::size_t depth,
                                      const PropConfig& cfg, bool exact_depth) {
  require_compatible(c, s);
  const std::size_t n = c.num_states();
  LogicalDistanceMatrix m;
  m.value.assign(n, std::vector<double>(n, 0.0));
  m.best.assign(n, std::vector<std::optional<Formula>>(n));
  Enumerator en(s, c.labels.points(), depth, cfg, &c);
  en.for_each([&](const Entry& e) {
    if (exact_depth && e.formula.depth() != depth) return true;
    ++m.formulas_evaluated;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double gap = std::abs(e.values[i] - e.values[j]);
        if (!m.best[i][j] || gap > m.value[i][j]) {
          m.value[i][j] = m.value[j][i] = gap;
          m.best[i][j] = m.best[j][i] = e.formula;
        }
      }
    return true;
  });
  return m;
}

}  // namespace

std::vector<Formula> enumerate_formulas(Semantics s, const std::vector<std::string>& labels,
                                        std::size_t depth, const PropConfig& cfg) {
  std::vector<Formula> out;
  Enumerator en(s, labels, depth, cfg, nullptr);
  en.for_each([&](const Entry& e) {
    out.push_back(e.formula);
    return true;
  });
  return out;
}

}  // namespace gradist

namespace gradist {

LogicalDistanceMatrix logical_distance_matrix(const Coalgebra& c, Semantics s, std::size_t depth,
                                              const PropConfig& cfg) {
  return distance_matrix(c, s, depth, cfg, false);
}

LogicalDistanceMatrix logical_distance_at_depth(const Coalgebra& c, Semantics s,
                                                std::size_t depth, const PropConfig& cfg) {
  return distance_matrix(c, s, depth, cfg, true);
}

LogicalDistance logical_distance(const Coalgebra& c, Semantics s, std::size_t x, std::size_t y,
                                 std::size_t depth, const PropConfig& cfg) {
  require_compatible(c, s);
  if (x >= c.num_states() || y >= c.num_states()) throw ValidationError("state out of range");
  LogicalDistance r;
  Enumerator en(s, c.labels.points(), depth, cfg, &c);
  en.for_each([&](const Entry& e) {
    const double gap = std::abs(e.values[x] - e.values[y]);
    if (!r.best || gap > r.value) {
      r.value = gap;
      r.best = e.formula;
    }
    return true;
  });
  return r;
}

WitnessResult witness_search(const Coalgebra& c, Semantics s, std::size_t x, std::size_t y,
                             std::size_t depth, double target, const PropConfig& cfg) {
  require_compatible(c, s);
  if (x >= c.num_states() || y >= c.num_states()) throw ValidationError("state out of range");
  if (!(target >= 0.0 && target <= 1.0)) throw RangeError("witness target outside [0,1]");
  WitnessResult r;
  auto search = [&](const PropConfig& pc) {
    Enumerator en(s, c.labels.points(), depth, pc, &c);
    en.for_each([&](const Entry& e) {
      const double gap = std::abs(e.values[x] - e.values[y]);
      if (!r.best || gap > r.best_gap) {
        r.best_gap = gap;
        r.best = e.formula;
      }
      if (gap >= target - 1e-6) {
        r.witness = e.formula;
        return false;
      }
      return true;
    });
  };
  PropConfig modal = cfg;
  modal.modal_only = true;
  modal.size_cap = 0;
  search(modal);
  if (!r.witness && !cfg.modal_only) search(cfg);
  return r;
}

std::string to_string(InvarianceStatus s) {
  switch (s) {
    case InvarianceStatus::kTight:
      return "tight";
    case InvarianceStatus::kStrict:
      return "strict";
    case InvarianceStatus::kViolation:
      return "VIOLATION";
  }
  return "?";
}

InvarianceReport invariance_check(const Coalgebra& c, Semantics s, std::size_t depth,
                                  const PropConfig& cfg, double tol) {
  const auto logical = logical_distance_matrix(c, s, depth, cfg);
  const auto behavioural = behavioural_distance_matrix(c, s, depth);
  InvarianceReport r;
  for (std::size_t i = 0; i < c.num_states(); ++i)
    for (std::size_t j = i + 1; j < c.num_states(); ++j) {
      InvarianceEntry e;
      e.x = i;
      e.y = j;
      e.logical = logical.value[i][j];
      e.behavioural = behavioural[i][j];
      e.best = logical.best[i][j];
      if (e.logical > e.behavioural + tol) {
        e.status = InvarianceStatus::kViolation;
        ++r.violations;
      } else if (e.logical < e.behavioural - 1e-6) {
        e.status = InvarianceStatus::kStrict;
      }
      r.entries.push_back(std::move(e));
    }
  return r;
}

}  // namespace gradist
