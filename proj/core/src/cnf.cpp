// Copyright 2026 The ucit Authors
//
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

#include "ucit/cnf.hpp"

#include <unordered_map>

namespace ucit {

namespace {

BoolExpr fold(const BoolExpr& e, std::unordered_map<const void*, BoolExpr>& memo) {
  if (auto it = memo.find(e.node_id()); it != memo.end()) return it->second;

  BoolExpr out;
  switch (e.op()) {
    case ExprOp::ConstTrue:
    case ExprOp::ConstFalse:
    case ExprOp::Atom:
      out = e;
      break;
    case ExprOp::Not: {
      BoolExpr c = fold(e.child(0), memo);
      if (c.op() == ExprOp::ConstTrue) out = BoolExpr::constant(false);
      else if (c.op() == ExprOp::ConstFalse) out = BoolExpr::constant(true);
      else out = BoolExpr::negation(std::move(c));
      break;
    }
    case ExprOp::And:
    case ExprOp::Or: {
      const bool is_and = e.op() == ExprOp::And;
      // The absorbing constant kills the whole node, the neutral one drops out.
      const ExprOp absorbing = is_and ? ExprOp::ConstFalse : ExprOp::ConstTrue;
      std::vector<BoolExpr> kids;
      bool absorbed = false;
      for (const auto& raw : e.children()) {
        BoolExpr c = fold(raw, memo);
        if (c.op() == absorbing) {
          absorbed = true;
          break;
        }
        if (!c.is_constant()) kids.push_back(std::move(c));
      }
      if (absorbed) out = BoolExpr::constant(!is_and);
      else if (kids.empty()) out = BoolExpr::constant(is_and);
      else out = is_and ? BoolExpr::conjunction(std::move(kids))
                        : BoolExpr::disjunction(std::move(kids));
      break;
    }
    case ExprOp::Implies: {
      BoolExpr a = fold(e.child(0), memo);
      BoolExpr b = fold(e.child(1), memo);
      if (a.op() == ExprOp::ConstFalse || b.op() == ExprOp::ConstTrue)
        out = BoolExpr::constant(true);
      else if (a.op() == ExprOp::ConstTrue) out = b;
      else if (b.op() == ExprOp::ConstFalse) out = BoolExpr::negation(std::move(a));
      else out = BoolExpr::implication(std::move(a), std::move(b));
      break;
    }
    case ExprOp::Iff: {
      BoolExpr a = fold(e.child(0), memo);
      BoolExpr b = fold(e.child(1), memo);
      if (a.is_constant() && b.is_constant())
        out = BoolExpr::constant(a.op() == b.op());
      else if (a.op() == ExprOp::ConstTrue) out = b;
      else if (b.op() == ExprOp::ConstTrue) out = a;
      else if (a.op() == ExprOp::ConstFalse) out = BoolExpr::negation(std::move(b));
      else if (b.op() == ExprOp::ConstFalse) out = BoolExpr::negation(std::move(a));
      else out = BoolExpr::equivalence(std::move(a), std::move(b));
      break;
    }
  }
  memo.emplace(e.node_id(), out);
  return out;
}

// Bidirectional Tseitin definitions; expects a constant-free tree.
// Shared subtrees get a single definition.
class TseitinContext {
public:
  TseitinContext(VarAllocator& fresh, Cnf& out) : fresh_(fresh), out_(out) {}

  // Asserts e at the top level. Root conjunctions recurse and disjunctions,
  // implications, and equivalences flatten into plain clauses, so encoder
  // output (big ANDs of small clauses) stays free of auxiliary variables.
  void assert_root(const BoolExpr& e) {
    switch (e.op()) {
      case ExprOp::And:
        for (const auto& c : e.children()) assert_root(c);
        break;
      case ExprOp::Or: {
        Clause cl;
        flatten_or(e, cl);
        out_.clauses.push_back(std::move(cl));
        break;
      }
      case ExprOp::Implies: {
        Clause cl{define(e.child(0)).negated()};
        flatten_or(e.child(1), cl);
        out_.clauses.push_back(std::move(cl));
        break;
      }
      case ExprOp::Iff: {
        const Literal a = define(e.child(0));
        const Literal b = define(e.child(1));
        out_.clauses.push_back({a.negated(), b});
        out_.clauses.push_back({a, b.negated()});
        break;
      }
      default:
        out_.clauses.push_back({define(e)});
        break;
    }
  }

  Literal define(const BoolExpr& e) {
    if (auto it = memo_.find(e.node_id()); it != memo_.end()) return it->second;

    Literal result{};
    switch (e.op()) {
      case ExprOp::Atom:
        result = pos(e.atom_value());
        break;
      case ExprOp::Not:
        result = define(e.child(0)).negated();
        break;
      case ExprOp::And: {
        std::vector<Literal> kids = define_children(e);
        const Literal g = pos(fresh_.fresh());
        Clause back{g};
        for (const Literal& k : kids) {
          out_.clauses.push_back({g.negated(), k});  // g -> k
          back.push_back(k.negated());               // all k -> g
        }
        out_.clauses.push_back(std::move(back));
        result = g;
        break;
      }
      case ExprOp::Or: {
        std::vector<Literal> kids = define_children(e);
        const Literal g = pos(fresh_.fresh());
        Clause fwd{g.negated()};
        for (const Literal& k : kids) {
          out_.clauses.push_back({g, k.negated()});  // k -> g
          fwd.push_back(k);                          // g -> some k
        }
        out_.clauses.push_back(std::move(fwd));
        result = g;
        break;
      }
      case ExprOp::Implies: {
        const Literal a = define(e.child(0));
        const Literal b = define(e.child(1));
        const Literal g = pos(fresh_.fresh());
        out_.clauses.push_back({g.negated(), a.negated(), b});
        out_.clauses.push_back({g, a});
        out_.clauses.push_back({g, b.negated()});
        result = g;
        break;
      }
      case ExprOp::Iff: {
        const Literal a = define(e.child(0));
        const Literal b = define(e.child(1));
        const Literal g = pos(fresh_.fresh());
        out_.clauses.push_back({g.negated(), a.negated(), b});
        out_.clauses.push_back({g.negated(), a, b.negated()});
        out_.clauses.push_back({g, a, b});
        out_.clauses.push_back({g, a.negated(), b.negated()});
        result = g;
        break;
      }
      default:
        throw Error("constant below the root of a folded expression");
    }
    memo_.emplace(e.node_id(), result);
    return result;
  }

private:
  void flatten_or(const BoolExpr& e, Clause& cl) {
    if (e.op() == ExprOp::Or) {
      for (const auto& c : e.children()) flatten_or(c, cl);
    } else {
      cl.push_back(define(e));
    }
  }

  std::vector<Literal> define_children(const BoolExpr& e) {
    std::vector<Literal> lits;
    lits.reserve(e.child_count());
    for (const auto& c : e.children()) lits.push_back(define(c));
    return lits;
  }

  VarAllocator& fresh_;
  Cnf& out_;
  std::unordered_map<const void*, Literal> memo_;
};

}  // namespace

BoolExpr fold_constants(const BoolExpr& expr) {
  std::unordered_map<const void*, BoolExpr> memo;
  return fold(expr, memo);
}

Literal tseitin_literal(const BoolExpr& expr, VarAllocator& fresh, Cnf& out) {
  const BoolExpr folded = fold_constants(expr);
  if (folded.is_constant()) {
    // Pin a fresh variable to the constant so callers get a plain literal.
    const Literal g = pos(fresh.fresh());
    const Literal unit = folded.op() == ExprOp::ConstTrue ? g : g.negated();
    out.clauses.push_back({unit});
    out.var_count = fresh.count();
    return g;
  }
  TseitinContext ctx(fresh, out);
  const Literal root = ctx.define(folded);
  out.var_count = fresh.count();
  return root;
}

Cnf to_cnf(const BoolExpr& expr, VarAllocator& fresh) {
  Cnf out;
  const BoolExpr folded = fold_constants(expr);
  if (folded.is_constant()) {
    if (folded.op() == ExprOp::ConstFalse) out.clauses.push_back({});
    out.var_count = fresh.count();
    return out;
  }
  TseitinContext ctx(fresh, out);
  ctx.assert_root(folded);
  out.var_count = fresh.count();
  return out;
}

bool evaluate(const BoolExpr& expr, const Assignment& a) {
  return expr.evaluate_with([&a](VarId v) { return a.value(v); });
}

}  // namespace ucit
