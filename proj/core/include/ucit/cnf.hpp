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

#ifndef UCIT_CNF_HPP
#define UCIT_CNF_HPP

#include <vector>

#include "ucit/expr.hpp"

namespace ucit {

using Clause = std::vector<Literal>;

/// Conjunctive normal form. An empty clause makes the formula
/// unsatisfiable by construction; all literals reference vars < var_count.
struct Cnf {
  VarId var_count = 0;
  std::vector<Clause> clauses;

  friend bool operator==(const Cnf&, const Cnf&) = default;
};

/// A total truth assignment over variables [0, size()).
class Assignment {
public:
  Assignment() = default;
  explicit Assignment(std::size_t var_count, bool fill = false)
      : values_(var_count, fill) {}

  [[nodiscard]] std::size_t size() const { return values_.size(); }

  [[nodiscard]] bool value(VarId v) const {
    if (v < 0 || static_cast<std::size_t>(v) >= values_.size())
      throw Error("unbound variable " + std::to_string(v) + " in assignment");
    return values_[static_cast<std::size_t>(v)];
  }

  void set(VarId v, bool b) { values_.at(static_cast<std::size_t>(v)) = b; }

  [[nodiscard]] bool satisfies(const Literal& l) const { return value(l.var) == l.positive; }

  friend bool operator==(const Assignment&, const Assignment&) = default;

private:
  std::vector<bool> values_;
};

/// Hands out dense fresh variable ids; `count()` is one past the
/// largest id allocated so far.
class VarAllocator {
public:
  explicit VarAllocator(VarId first = 0) : next_(first) {}

  VarId fresh() { return next_++; }
  [[nodiscard]] VarId count() const { return next_; }

private:
  VarId next_;
};

/// Tseitin transformation. The result is equisatisfiable with `expr` and
/// every model of the result, restricted to the original variables, is a
/// model of `expr`. Auxiliary variables come from `fresh` only, which must
/// already cover every variable `expr` references.
Cnf to_cnf(const BoolExpr& expr, VarAllocator& fresh);

/// Like `to_cnf` but appends the definitional clauses to `out` without
/// asserting the formula, and returns a literal equivalent to `expr`.
/// Assuming the returned literal is equivalent to conjoining `expr`.
Literal tseitin_literal(const BoolExpr& expr, VarAllocator& fresh, Cnf& out);

/// Evaluates `expr` under a total assignment; throws on unbound variables.
bool evaluate(const BoolExpr& expr, const Assignment& a);

/// Constant folding; the result is either a constant or a tree free of
/// constant nodes below the root.
BoolExpr fold_constants(const BoolExpr& expr);

}  // namespace ucit

#endif  // UCIT_CNF_HPP
