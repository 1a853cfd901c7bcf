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

#include <algorithm>
#include <unordered_set>

#include "spaces_internal.hpp"
#include "ucit/solver.hpp"

namespace ucit {

namespace {

VarId state_var(const SpaceEncoding& enc, int state, int step) {
  return enc.atoms.require({AtomKind::StateAt, state, step});
}

VarId trans_var(const SpaceEncoding& enc, int trans, int step) {
  return enc.atoms.require({AtomKind::TransAt, trans, step});
}

VarId visited_var(const SpaceEncoding& enc, int state) {
  return enc.atoms.require({AtomKind::Visited, state, -1});
}

}  // namespace

SpaceEncoding encode_fsm_space(const FsmModel& m) {
  validate(m);
  SpaceEncoding enc;
  enc.kind = SpaceKind::Fsm;
  enc.model = m;

  const int num_states = static_cast<int>(m.states.size());
  const int num_trans = static_cast<int>(m.transitions.size());
  const int bound = m.effective_path_bound();  // steps 0..bound, transitions 0..bound-1

  for (int s = 0; s < num_states; ++s) {
    enc.state_index.emplace(m.states[static_cast<std::size_t>(s)], s);
    for (int k = 0; k <= bound; ++k) enc.atoms.add({AtomKind::StateAt, s, k});
  }
  for (int t = 0; t < num_trans; ++t) {
    enc.transition_index.emplace(m.transitions[static_cast<std::size_t>(t)].label, t);
    for (int k = 0; k < bound; ++k) enc.atoms.add({AtomKind::TransAt, t, k});
  }
  for (int s = 0; s < num_states; ++s) enc.atoms.add({AtomKind::Visited, s, -1});
  for (std::size_t f = 0; f < m.factors.size(); ++f) {
    enc.factor_index.emplace(m.factors[f].name, static_cast<int>(f));
    auto& values = enc.value_index.emplace_back();
    for (std::size_t v = 0; v < m.factors[f].domain.size(); ++v) {
      values.emplace(m.factors[f].domain[v], static_cast<int>(v));
      enc.atoms.add({AtomKind::FactorValue, static_cast<int>(f), static_cast<int>(v)});
    }
  }

  const int initial = enc.state_index.at(m.initial);
  const int final_s = enc.state_index.at(m.final_state);
  const auto at = [&](int s, int k) { return BoolExpr::atom(state_var(enc, s, k)); };
  const auto taken = [&](int t, int k) { return BoolExpr::atom(trans_var(enc, t, k)); };

  std::vector<BoolExpr> parts;
  parts.push_back(at(initial, 0));
  parts.push_back(at(final_s, bound));

  // Exactly one state per step; the final state absorbs so shorter paths
  // pad out the remaining steps.
  for (int k = 0; k <= bound; ++k) {
    std::vector<VarId> slot;
    for (int s = 0; s < num_states; ++s) slot.push_back(state_var(enc, s, k));
    parts.push_back(detail::exactly_one_expr(slot));
  }
  for (int k = 0; k < bound; ++k)
    parts.push_back(BoolExpr::implication(at(final_s, k), at(final_s, k + 1)));

  // Transition relation: at most one transition per step; a taken
  // transition pins its endpoints and its guard; a non-final state must
  // leave through one of its outgoing transitions.
  for (int k = 0; k < bound; ++k)
    for (int t1 = 0; t1 < num_trans; ++t1)
      for (int t2 = t1 + 1; t2 < num_trans; ++t2)
        parts.push_back(!taken(t1, k) || !taken(t2, k));
  for (int t = 0; t < num_trans; ++t) {
    const FsmTransition& tr = m.transitions[static_cast<std::size_t>(t)];
    const int from = enc.state_index.at(tr.from);
    const int to = enc.state_index.at(tr.to);
    const BoolExpr guard = detail::compile_model_expr(enc, tr.guard, false);
    // validate() bans transitions out of the final state, so endpoint
    // pinning alone guarantees nothing fires during the padding steps.
    for (int k = 0; k < bound; ++k) {
      parts.push_back(BoolExpr::implication(taken(t, k), at(from, k)));
      parts.push_back(BoolExpr::implication(taken(t, k), at(to, k + 1)));
      if (guard.op() != ExprOp::ConstTrue)
        parts.push_back(BoolExpr::implication(taken(t, k), guard));
    }
  }
  for (int s = 0; s < num_states; ++s) {
    if (s == final_s) continue;
    for (int k = 0; k < bound; ++k) {
      std::vector<BoolExpr> options;
      for (int t = 0; t < num_trans; ++t)
        if (enc.state_index.at(m.transitions[static_cast<std::size_t>(t)].from) == s)
          options.push_back(taken(t, k));
      BoolExpr move = options.empty() ? BoolExpr::constant(false)
                                      : BoolExpr::disjunction(std::move(options));
      parts.push_back(BoolExpr::implication(at(s, k), std::move(move)));
    }
  }

  // visited(s) ≡ s appears at some step; factors of unvisited states are
  // pinned all-false so each test case has exactly one representation.
  for (int s = 0; s < num_states; ++s) {
    std::vector<BoolExpr> appearances;
    for (int k = 0; k <= bound; ++k) appearances.push_back(at(s, k));
    parts.push_back(BoolExpr::equivalence(BoolExpr::atom(visited_var(enc, s)),
                                          BoolExpr::disjunction(std::move(appearances))));
  }
  for (std::size_t f = 0; f < m.factors.size(); ++f) {
    const BoolExpr visited = BoolExpr::atom(visited_var(enc, enc.state_index.at(m.factor_state[f])));
    std::vector<BoolExpr> values;
    for (std::size_t v = 0; v < m.factors[f].domain.size(); ++v)
      values.push_back(BoolExpr::atom(enc.factor_value_var(static_cast<int>(f), static_cast<int>(v))));
    for (std::size_t v1 = 0; v1 < values.size(); ++v1)
      for (std::size_t v2 = v1 + 1; v2 < values.size(); ++v2)
        parts.push_back(!values[v1] || !values[v2]);
    for (const BoolExpr& value : values)
      parts.push_back(BoolExpr::implication(value, visited));
    parts.push_back(BoolExpr::implication(visited, BoolExpr::disjunction(std::move(values))));
  }

  enc.constraint = BoolExpr::conjunction(std::move(parts));
  VarAllocator fresh(enc.atoms.size());
  enc.cnf = to_cnf(enc.constraint, fresh);

  if (!Solver(enc.cnf).solve())
    throw Error("FSM admits no path from '" + m.initial + "' to '" + m.final_state +
                "' within path bound " + std::to_string(bound));
  return enc;
}

BoolExpr encode_state_sequence_requirement(const SpaceEncoding& enc,
                                           std::span<const std::string> states) {
  const FsmModel& m = enc.fsm();
  const int bound = m.effective_path_bound();
  if (states.size() < 2) throw Error("state sequence requirement needs at least two states");

  std::vector<int> ids;
  std::unordered_set<int> seen;
  for (const auto& name : states) {
    auto it = enc.state_index.find(name);
    if (it == enc.state_index.end()) throw Error("unknown state '" + name + "'");
    if (!seen.insert(it->second).second)
      throw Error("state '" + name + "' repeated in sequence requirement");
    ids.push_back(it->second);
  }

  // Disjunction over strictly increasing step tuples, as for event orders.
  std::vector<BoolExpr> disjuncts;
  std::vector<BoolExpr> partial;
  const auto recurse = [&](const auto& self, std::size_t next, int min_step) -> void {
    if (next == ids.size()) {
      disjuncts.push_back(BoolExpr::conjunction(partial));
      return;
    }
    const int remaining = static_cast<int>(ids.size() - next);
    for (int k = min_step; k + remaining <= bound + 1; ++k) {
      partial.push_back(BoolExpr::atom(state_var(enc, ids[next], k)));
      self(self, next + 1, k + 1);
      partial.pop_back();
    }
  };
  recurse(recurse, 0, 0);
  return BoolExpr::disjunction(std::move(disjuncts));
}

BoolExpr encode_state_pair_requirement(const SpaceEncoding& enc, const std::string& s1,
                                       const std::string& s2) {
  const std::string pair[] = {s1, s2};
  return encode_state_sequence_requirement(enc, pair);
}

FsmPathTest decode_fsm_test(const SpaceEncoding& enc, const Assignment& a) {
  const FsmModel& m = enc.fsm();
  const int num_states = static_cast<int>(m.states.size());
  const int num_trans = static_cast<int>(m.transitions.size());
  const int bound = m.effective_path_bound();
  const int final_s = enc.state_index.at(m.final_state);

  std::vector<int> trace;
  for (int k = 0; k <= bound; ++k) {
    int chosen = -1;
    for (int s = 0; s < num_states; ++s) {
      if (!a.value(state_var(enc, s, k))) continue;
      if (chosen >= 0) throw MalformedAssignment("two states at step " + std::to_string(k));
      chosen = s;
    }
    if (chosen < 0) throw MalformedAssignment("no state at step " + std::to_string(k));
    trace.push_back(chosen);
  }
  const auto first_final = std::find(trace.begin(), trace.end(), final_s);
  if (first_final == trace.end())
    throw MalformedAssignment("path never reaches the final state");
  const int path_len = static_cast<int>(first_final - trace.begin()) + 1;
  for (int k = path_len; k <= bound; ++k)
    if (trace[static_cast<std::size_t>(k)] != final_s)
      throw MalformedAssignment("state after the final state at step " + std::to_string(k));

  FsmPathTest tc;
  for (int k = 0; k < path_len; ++k)
    tc.states.push_back(m.states[static_cast<std::size_t>(trace[static_cast<std::size_t>(k)])]);

  for (int k = 0; k < bound; ++k) {
    int chosen = -1;
    for (int t = 0; t < num_trans; ++t) {
      if (!a.value(trans_var(enc, t, k))) continue;
      if (chosen >= 0) throw MalformedAssignment("two transitions at step " + std::to_string(k));
      chosen = t;
    }
    if (k < path_len - 1) {
      if (chosen < 0) throw MalformedAssignment("no transition at step " + std::to_string(k));
      tc.transitions.push_back(m.transitions[static_cast<std::size_t>(chosen)].label);
    } else if (chosen >= 0) {
      throw MalformedAssignment("transition taken after the final state");
    }
  }

  for (std::size_t f = 0; f < m.factors.size(); ++f) {
    if (!a.value(visited_var(enc, enc.state_index.at(m.factor_state[f])))) continue;
    int chosen = -1;
    for (std::size_t v = 0; v < m.factors[f].domain.size(); ++v) {
      if (!a.value(enc.factor_value_var(static_cast<int>(f), static_cast<int>(v)))) continue;
      if (chosen >= 0)
        throw MalformedAssignment("factor '" + m.factors[f].name + "' has two values");
      chosen = static_cast<int>(v);
    }
    if (chosen < 0)
      throw MalformedAssignment("factor '" + m.factors[f].name + "' of a visited state is unset");
    tc.values.emplace_back(m.factors[f].name,
                           m.factors[f].domain[static_cast<std::size_t>(chosen)]);
  }
  return tc;
}

namespace detail {

Assignment encode_fsm_assignment(const SpaceEncoding& enc, const FsmPathTest& tc) {
  const FsmModel& m = enc.fsm();
  const int bound = m.effective_path_bound();
  if (tc.states.empty()) throw Error("FSM test case has an empty state path");
  if (static_cast<int>(tc.states.size()) > bound + 1)
    throw Error("state path longer than the path bound allows");
  if (tc.transitions.size() + 1 != tc.states.size())
    throw Error("transition list does not match the state path length");

  Assignment a(static_cast<std::size_t>(enc.atoms.size()));
  std::vector<int> trace;
  for (const auto& name : tc.states) {
    auto it = enc.state_index.find(name);
    if (it == enc.state_index.end()) throw Error("unknown state '" + name + "'");
    trace.push_back(it->second);
  }
  const int path_len = static_cast<int>(trace.size());
  for (int k = 0; k < path_len; ++k)
    a.set(state_var(enc, trace[static_cast<std::size_t>(k)], k), true);
  const int final_s = enc.state_index.at(m.final_state);
  for (int k = path_len; k <= bound; ++k) a.set(state_var(enc, final_s, k), true);

  for (std::size_t i = 0; i < tc.transitions.size(); ++i) {
    auto it = enc.transition_index.find(tc.transitions[i]);
    if (it == enc.transition_index.end())
      throw Error("unknown transition '" + tc.transitions[i] + "'");
    a.set(trans_var(enc, it->second, static_cast<int>(i)), true);
  }

  for (int s : std::unordered_set<int>(trace.begin(), trace.end()))
    a.set(visited_var(enc, s), true);
  if (path_len <= bound) a.set(visited_var(enc, final_s), true);

  for (const auto& [factor, value] : tc.values) {
    auto fit = enc.factor_index.find(factor);
    if (fit == enc.factor_index.end()) throw Error("unknown factor '" + factor + "'");
    const auto& values = enc.value_index.at(static_cast<std::size_t>(fit->second));
    auto vit = values.find(value);
    if (vit == values.end())
      throw Error("unknown value '" + value + "' for factor '" + factor + "'");
    a.set(enc.factor_value_var(fit->second, vit->second), true);
  }
  return a;
}

}  // namespace detail

}  // namespace ucit
