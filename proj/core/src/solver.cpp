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

#include "ucit/solver.hpp"

#include <algorithm>

namespace ucit {

Solver::Solver(const Cnf& cnf) {
  ensure_var_count(cnf.var_count);
  add_cnf(cnf);
}

void Solver::ensure_var_count(VarId n) {
  if (n <= var_count()) return;
  assign_.resize(static_cast<std::size_t>(n), kUnassigned);
  watches_.resize(static_cast<std::size_t>(n) * 2);
}

VarId Solver::add_variable() {
  const VarId v = var_count();
  ensure_var_count(v + 1);
  return v;
}

void Solver::add_cnf(const Cnf& cnf) {
  ensure_var_count(cnf.var_count);
  for (const Clause& c : cnf.clauses) add_clause(c);
}

void Solver::add_clause(std::span<const Literal> lits) {
  // Clauses may only be added at root level (between solve calls).
  if (!decisions_.empty()) throw Error("add_clause during active search");
  if (!ok_) return;

  std::vector<int> enc;
  enc.reserve(lits.size());
  for (const Literal& l : lits) {
    if (l.var < 0) throw Error("negative variable id in clause");
    ensure_var_count(l.var + 1);
    enc.push_back(encode(l));
  }
  std::sort(enc.begin(), enc.end());
  enc.erase(std::unique(enc.begin(), enc.end()), enc.end());

  std::vector<int> kept;
  kept.reserve(enc.size());
  for (std::size_t i = 0; i < enc.size(); ++i) {
    if (i + 1 < enc.size() && enc[i + 1] == negate(enc[i])) return;  // tautology
    const std::int8_t v = lit_value(enc[i]);
    if (v == kTrue) return;  // satisfied at root, permanently
    if (v == kFalse) continue;
    kept.push_back(enc[i]);
  }

  if (kept.empty()) {
    ok_ = false;
    return;
  }
  if (kept.size() == 1) {
    if (!enqueue(kept[0])) ok_ = false;
    return;
  }

  const int idx = static_cast<int>(clauses_.size());
  watches_[static_cast<std::size_t>(kept[0])].push_back({idx, kept[1]});
  watches_[static_cast<std::size_t>(kept[1])].push_back({idx, kept[0]});
  clauses_.push_back(std::move(kept));
}

bool Solver::enqueue(int enc) {
  const std::int8_t v = lit_value(enc);
  if (v != kUnassigned) return v == kTrue;
  assign_[static_cast<std::size_t>(var_of(enc))] =
      static_cast<std::int8_t>((enc & 1) ? kFalse : kTrue);
  trail_.push_back(enc);
  return true;
}

bool Solver::propagate() {
  while (prop_head_ < trail_.size()) {
    const int falsified = negate(trail_[prop_head_++]);
    std::vector<Watch>& wl = watches_[static_cast<std::size_t>(falsified)];

    std::size_t read = 0, write = 0;
    while (read < wl.size()) {
      const Watch w = wl[read];
      if (lit_value(w.blocker) == kTrue) {
        wl[write++] = wl[read++];
        continue;
      }

      std::vector<int>& c = clauses_[static_cast<std::size_t>(w.clause)];
      // Keep the falsified literal at position 1.
      if (c[0] == falsified) std::swap(c[0], c[1]);

      if (lit_value(c[0]) == kTrue) {
        wl[write++] = {w.clause, c[0]};
        ++read;
        continue;
      }

      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (lit_value(c[k]) != kFalse) {
          std::swap(c[1], c[k]);
          watches_[static_cast<std::size_t>(c[1])].push_back({w.clause, c[0]});
          moved = true;
          ++read;  // watch moved elsewhere, drop from this list
          break;
        }
      }
      if (moved) continue;

      // Clause is unit or conflicting on c[0].
      wl[write++] = wl[read++];
      if (!enqueue(c[0])) {
        while (read < wl.size()) wl[write++] = wl[read++];
        wl.resize(write);
        return false;
      }
    }
    wl.resize(write);
  }
  return true;
}

void Solver::unwind_trail(std::size_t keep) {
  for (std::size_t i = trail_.size(); i > keep; --i) {
    const VarId v = var_of(trail_[i - 1]);
    assign_[static_cast<std::size_t>(v)] = kUnassigned;
    if (v < decide_hint_) decide_hint_ = v;
  }
  trail_.resize(keep);
  prop_head_ = keep;
}

// Chronological backtracking: flip the deepest decision not yet flipped.
// Assumptions occupy the bottom of the decision stack and are never flipped.
bool Solver::resolve_conflict(std::size_t assumption_count) {
  while (decisions_.size() > assumption_count && decisions_.back().flipped)
    decisions_.pop_back();
  if (decisions_.size() <= assumption_count) return false;

  Decision& d = decisions_.back();
  unwind_trail(d.trail_pos);
  d.lit = negate(d.lit);
  d.flipped = true;
  enqueue(d.lit);  // cannot fail: the variable was just unassigned
  return true;
}

Assignment Solver::extract_model() const {
  Assignment a(assign_.size());
  for (std::size_t v = 0; v < assign_.size(); ++v)
    a.set(static_cast<VarId>(v), assign_[v] == kTrue);
  return a;
}

std::optional<Assignment> Solver::solve(std::span<const Literal> assumptions) {
  ++num_solves_;
  if (!ok_) return std::nullopt;

  // Root units queued by add_clause propagate here; a conflict now is
  // independent of any assumptions and therefore permanent.
  if (!propagate()) {
    ok_ = false;
    unwind_trail(trail_.size());  // keep state consistent; formula is dead
    return std::nullopt;
  }
  const std::size_t root_trail = trail_.size();

  auto give_up = [&]() {
    decisions_.clear();
    unwind_trail(root_trail);
    return std::nullopt;
  };

  for (const Literal& l : assumptions) {
    if (l.var < 0 || l.var >= var_count()) throw Error("assumption references undeclared variable");
    const int enc = encode(l);
    if (lit_value(enc) == kTrue) continue;
    decisions_.push_back({enc, trail_.size(), false});
    if (!enqueue(enc) || !propagate()) return give_up();
  }
  const std::size_t assumption_count = decisions_.size();

  for (;;) {
    while (decide_hint_ < var_count() &&
           assign_[static_cast<std::size_t>(decide_hint_)] != kUnassigned)
      ++decide_hint_;

    if (decide_hint_ == var_count()) {
      Assignment model = extract_model();
      decisions_.clear();
      unwind_trail(root_trail);
      decide_hint_ = 0;
      return model;
    }

    decisions_.push_back({encode(neg(decide_hint_)), trail_.size(), false});
    enqueue(decisions_.back().lit);

    while (!propagate()) {
      if (!resolve_conflict(assumption_count)) {
        decide_hint_ = 0;
        decisions_.clear();
        unwind_trail(root_trail);
        return std::nullopt;
      }
    }
  }
}

std::optional<Assignment> solve(const Cnf& cnf) {
  Solver s(cnf);
  return s.solve();
}

std::optional<Assignment> solve_with_assumptions(const Cnf& cnf,
                                                 std::span<const Literal> assume) {
  Solver s(cnf);
  for (const Literal& l : assume) s.ensure_var_count(l.var + 1);
  return s.solve(assume);
}

}  // namespace ucit
