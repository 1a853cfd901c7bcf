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

#ifndef UCIT_SOLVER_HPP
#define UCIT_SOLVER_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ucit/cnf.hpp"

namespace ucit {

/// Complete DPLL solver with unit propagation over two watched literals.
///
/// Decisions take the lowest-index unassigned variable and try false first;
/// there is no randomness, so identical input yields identical models.
/// Clauses may be added incrementally between solve() calls, and a call may
/// carry assumption literals that hold for that call only. Instances hold
/// mutable search state and are single-threaded; distinct instances may run
/// in parallel.
class Solver {
public:
  Solver() = default;
  explicit Solver(const Cnf& cnf);

  /// Grows the variable table to at least `n` variables.
  void ensure_var_count(VarId n);
  VarId add_variable();
  [[nodiscard]] VarId var_count() const { return static_cast<VarId>(assign_.size()); }

  void add_clause(std::span<const Literal> lits);
  void add_clause(std::initializer_list<Literal> lits) {
    add_clause(std::span<const Literal>(lits.begin(), lits.size()));
  }
  void add_cnf(const Cnf& cnf);

  /// Returns a total satisfying assignment, or nullopt if unsatisfiable.
  std::optional<Assignment> solve() { return solve({}); }
  std::optional<Assignment> solve(std::span<const Literal> assumptions);

  /// Number of solve() calls so far (diagnostics).
  [[nodiscard]] std::uint64_t num_solves() const { return num_solves_; }

private:
  // Literals are encoded as 2*var for positive, 2*var+1 for negative.
  static int encode(Literal l) { return static_cast<int>(l.var) * 2 + (l.positive ? 0 : 1); }
  static int negate(int enc) { return enc ^ 1; }
  static VarId var_of(int enc) { return static_cast<VarId>(enc >> 1); }

  enum : std::int8_t { kUnassigned = -1, kFalse = 0, kTrue = 1 };

  struct Watch {
    int clause;
    int blocker;  // a literal of the clause; if true, skip the visit
  };

  struct Decision {
    int lit;
    std::size_t trail_pos;
    bool flipped;
  };

  [[nodiscard]] std::int8_t lit_value(int enc) const {
    const std::int8_t v = assign_[static_cast<std::size_t>(var_of(enc))];
    if (v == kUnassigned) return kUnassigned;
    return static_cast<std::int8_t>((enc & 1) ? (v ^ 1) : v);
  }

  bool enqueue(int enc);      // false on contradiction with current value
  bool propagate();           // false on conflict
  void unwind_trail(std::size_t keep);
  bool resolve_conflict(std::size_t assumption_count);  // flip or give up
  Assignment extract_model() const;

  std::vector<std::vector<int>> clauses_;
  std::vector<std::vector<Watch>> watches_;  // indexed by encoded literal
  std::vector<std::int8_t> assign_;          // per var
  std::vector<int> trail_;                   // encoded literals, assignment order
  std::vector<Decision> decisions_;
  std::size_t prop_head_ = 0;
  VarId decide_hint_ = 0;  // no unassigned variable below this index
  bool ok_ = true;         // false once the clause set is unsatisfiable at root
  std::uint64_t num_solves_ = 0;
};

/// One-shot solve of a CNF. UNSAT iff no total assignment satisfies all
/// clauses; on SAT the returned assignment is total over cnf.var_count.
std::optional<Assignment> solve(const Cnf& cnf);

/// Equivalent to solve(cnf with the assumptions folded in as unit clauses).
std::optional<Assignment> solve_with_assumptions(const Cnf& cnf,
                                                 std::span<const Literal> assume);

}  // namespace ucit

#endif  // UCIT_SOLVER_HPP
