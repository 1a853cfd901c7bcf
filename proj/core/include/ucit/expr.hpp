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

#ifndef UCIT_EXPR_HPP
#define UCIT_EXPR_HPP

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ucit {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Dense, zero-based index of a propositional variable.
using VarId = std::int32_t;

/// A variable with a polarity. Negation is an involution.
struct Literal {
  VarId var = 0;
  bool positive = true;

  [[nodiscard]] Literal negated() const { return Literal{var, !positive}; }
  friend bool operator==(const Literal&, const Literal&) = default;
};

inline Literal pos(VarId v) { return Literal{v, true}; }
inline Literal neg(VarId v) { return Literal{v, false}; }

enum class ExprOp : std::uint8_t {
  ConstTrue,
  ConstFalse,
  Atom,
  Not,
  And,
  Or,
  Implies,
  Iff,
};

/// Immutable propositional expression tree over atoms of type `AtomT`.
///
/// The same tree shape carries both solver-level formulas (atoms = VarId)
/// and model-level formulas (atoms = named factor/ordering atoms); see
/// `BoolExpr` and `ModelExpr`. Nodes are shared, copying is cheap.
template <typename AtomT>
class BasicExpr {
public:
  /// Default-constructed expression is the constant `true`.
  BasicExpr() : node_(true_node()) {}

  static BasicExpr constant(bool value) {
    return value ? BasicExpr(true_node()) : BasicExpr(false_node());
  }

  static BasicExpr atom(AtomT a) {
    auto n = std::make_shared<Node>();
    n->op = ExprOp::Atom;
    n->atom = std::move(a);
    return BasicExpr(std::move(n));
  }

  static BasicExpr negation(BasicExpr e) {
    return make(ExprOp::Not, {std::move(e)});
  }

  /// N-ary conjunction. The children list must be non-empty.
  static BasicExpr conjunction(std::vector<BasicExpr> children) {
    if (children.empty()) throw Error("conjunction requires at least one operand");
    if (children.size() == 1) return std::move(children.front());
    return make(ExprOp::And, std::move(children));
  }

  /// N-ary disjunction. The children list must be non-empty.
  static BasicExpr disjunction(std::vector<BasicExpr> children) {
    if (children.empty()) throw Error("disjunction requires at least one operand");
    if (children.size() == 1) return std::move(children.front());
    return make(ExprOp::Or, std::move(children));
  }

  static BasicExpr implication(BasicExpr lhs, BasicExpr rhs) {
    return make(ExprOp::Implies, {std::move(lhs), std::move(rhs)});
  }

  static BasicExpr equivalence(BasicExpr lhs, BasicExpr rhs) {
    return make(ExprOp::Iff, {std::move(lhs), std::move(rhs)});
  }

  [[nodiscard]] ExprOp op() const { return node_->op; }
  [[nodiscard]] bool is_constant() const {
    return node_->op == ExprOp::ConstTrue || node_->op == ExprOp::ConstFalse;
  }

  [[nodiscard]] const AtomT& atom_value() const {
    if (node_->op != ExprOp::Atom) throw Error("expression node is not an atom");
    return node_->atom;
  }

  [[nodiscard]] std::size_t child_count() const { return node_->children.size(); }
  [[nodiscard]] const BasicExpr& child(std::size_t i) const { return node_->children[i]; }
  [[nodiscard]] const std::vector<BasicExpr>& children() const { return node_->children; }

  /// Evaluates under standard propositional semantics; `atom_value_of`
  /// maps an atom to its truth value.
  template <typename F>
  [[nodiscard]] bool evaluate_with(F&& atom_value_of) const {
    switch (node_->op) {
      case ExprOp::ConstTrue: return true;
      case ExprOp::ConstFalse: return false;
      case ExprOp::Atom: return atom_value_of(node_->atom);
      case ExprOp::Not: return !child(0).evaluate_with(atom_value_of);
      case ExprOp::And:
        for (const auto& c : node_->children)
          if (!c.evaluate_with(atom_value_of)) return false;
        return true;
      case ExprOp::Or:
        for (const auto& c : node_->children)
          if (c.evaluate_with(atom_value_of)) return true;
        return false;
      case ExprOp::Implies:
        return !child(0).evaluate_with(atom_value_of) || child(1).evaluate_with(atom_value_of);
      case ExprOp::Iff:
        return child(0).evaluate_with(atom_value_of) == child(1).evaluate_with(atom_value_of);
    }
    throw Error("corrupt expression node");
  }

  template <typename F>
  void for_each_atom(F&& fn) const {
    if (node_->op == ExprOp::Atom) {
      fn(node_->atom);
      return;
    }
    for (const auto& c : node_->children) c.for_each_atom(fn);
  }

  /// Structural equality.
  friend bool operator==(const BasicExpr& a, const BasicExpr& b) {
    if (a.node_ == b.node_) return true;
    if (a.node_->op != b.node_->op) return false;
    if (a.node_->op == ExprOp::Atom) return a.node_->atom == b.node_->atom;
    if (a.node_->children.size() != b.node_->children.size()) return false;
    for (std::size_t i = 0; i < a.node_->children.size(); ++i)
      if (!(a.node_->children[i] == b.node_->children[i])) return false;
    return true;
  }

  /// Stable identity of the underlying node, used for memoization.
  [[nodiscard]] const void* node_id() const { return node_.get(); }

private:
  struct Node {
    ExprOp op = ExprOp::ConstTrue;
    AtomT atom{};
    std::vector<BasicExpr> children;
  };

  explicit BasicExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static BasicExpr make(ExprOp op, std::vector<BasicExpr> children) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->children = std::move(children);
    return BasicExpr(std::move(n));
  }

  static std::shared_ptr<const Node> true_node() {
    static const std::shared_ptr<const Node> n = [] {
      auto p = std::make_shared<Node>();
      p->op = ExprOp::ConstTrue;
      return p;
    }();
    return n;
  }

  static std::shared_ptr<const Node> false_node() {
    static const std::shared_ptr<const Node> n = [] {
      auto p = std::make_shared<Node>();
      p->op = ExprOp::ConstFalse;
      return p;
    }();
    return n;
  }

  std::shared_ptr<const Node> node_;
};

template <typename AtomT>
BasicExpr<AtomT> operator!(BasicExpr<AtomT> e) {
  return BasicExpr<AtomT>::negation(std::move(e));
}

template <typename AtomT>
BasicExpr<AtomT> operator&&(BasicExpr<AtomT> a, BasicExpr<AtomT> b) {
  return BasicExpr<AtomT>::conjunction({std::move(a), std::move(b)});
}

template <typename AtomT>
BasicExpr<AtomT> operator||(BasicExpr<AtomT> a, BasicExpr<AtomT> b) {
  return BasicExpr<AtomT>::disjunction({std::move(a), std::move(b)});
}

template <typename AtomB, typename AtomA, typename F>
BasicExpr<AtomB> detail_transform_atoms(const BasicExpr<AtomA>& e, F& fn,
                                        std::unordered_map<const void*, BasicExpr<AtomB>>& memo) {
  if (auto it = memo.find(e.node_id()); it != memo.end()) return it->second;
  BasicExpr<AtomB> out;
  switch (e.op()) {
    case ExprOp::ConstTrue: out = BasicExpr<AtomB>::constant(true); break;
    case ExprOp::ConstFalse: out = BasicExpr<AtomB>::constant(false); break;
    case ExprOp::Atom: out = fn(e.atom_value()); break;
    default: {
      std::vector<BasicExpr<AtomB>> kids;
      kids.reserve(e.child_count());
      for (std::size_t i = 0; i < e.child_count(); ++i)
        kids.push_back(detail_transform_atoms<AtomB>(e.child(i), fn, memo));
      switch (e.op()) {
        case ExprOp::Not: out = BasicExpr<AtomB>::negation(std::move(kids.front())); break;
        case ExprOp::And: out = BasicExpr<AtomB>::conjunction(std::move(kids)); break;
        case ExprOp::Or: out = BasicExpr<AtomB>::disjunction(std::move(kids)); break;
        case ExprOp::Implies:
          out = BasicExpr<AtomB>::implication(std::move(kids[0]), std::move(kids[1]));
          break;
        case ExprOp::Iff:
          out = BasicExpr<AtomB>::equivalence(std::move(kids[0]), std::move(kids[1]));
          break;
        default: throw Error("corrupt expression node");
      }
    }
  }
  memo.emplace(e.node_id(), out);
  return out;
}

/// Rewrites every atom of `e` through `fn : AtomA -> BasicExpr<AtomB>`,
/// preserving the connective structure. Shared subtrees are translated once.
template <typename AtomB, typename AtomA, typename F>
BasicExpr<AtomB> transform_atoms(const BasicExpr<AtomA>& e, F&& fn) {
  std::unordered_map<const void*, BasicExpr<AtomB>> memo;
  return detail_transform_atoms<AtomB>(e, fn, memo);
}

/// Solver-level expression: atoms are variable ids.
using BoolExpr = BasicExpr<VarId>;

}  // namespace ucit

#endif  // UCIT_EXPR_HPP
