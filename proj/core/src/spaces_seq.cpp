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

#include <unordered_set>

#include "spaces_internal.hpp"

namespace ucit {

namespace {

int position_count(const SequenceModel& m) {
  return m.variant == SequenceVariant::Permutation ? static_cast<int>(m.events.size())
                                                   : m.max_len;
}

VarId occupy_var(const SpaceEncoding& enc, int event, int position) {
  return enc.atoms.require({AtomKind::EventAt, event, position});
}

VarId empty_var(const SpaceEncoding& enc, int position) {
  return enc.atoms.require({AtomKind::EmptyAt, -1, position});
}

// Disjunction over all strictly increasing position tuples of the
// conjunction occupy(e1,i1) ∧ ... ∧ occupy(et,it).
void collect_position_tuples(const SpaceEncoding& enc, std::span<const int> events,
                             std::size_t next, int min_pos, int positions,
                             std::vector<BoolExpr>& partial, std::vector<BoolExpr>& out) {
  if (next == events.size()) {
    out.push_back(BoolExpr::conjunction(partial));
    return;
  }
  const int remaining = static_cast<int>(events.size() - next);
  for (int p = min_pos; p + remaining <= positions; ++p) {
    partial.push_back(BoolExpr::atom(occupy_var(enc, events[next], p)));
    collect_position_tuples(enc, events, next + 1, p + 1, positions, partial, out);
    partial.pop_back();
  }
}

}  // namespace

SpaceEncoding encode_seq_space(const SequenceModel& m) {
  validate(m);
  SpaceEncoding enc;
  enc.kind = SpaceKind::Sequence;
  enc.model = m;

  const int n = static_cast<int>(m.events.size());
  const int positions = position_count(m);
  for (int e = 0; e < n; ++e) {
    enc.event_index.emplace(m.events[static_cast<std::size_t>(e)], e);
    for (int p = 0; p < positions; ++p) enc.atoms.add({AtomKind::EventAt, e, p});
  }
  if (m.variant == SequenceVariant::VariableLength)
    for (int p = 0; p < positions; ++p) enc.atoms.add({AtomKind::EmptyAt, -1, p});

  std::vector<BoolExpr> parts;
  for (int p = 0; p < positions; ++p) {
    std::vector<VarId> slot;
    for (int e = 0; e < n; ++e) slot.push_back(occupy_var(enc, e, p));
    if (m.variant == SequenceVariant::VariableLength) slot.push_back(empty_var(enc, p));
    parts.push_back(detail::exactly_one_expr(slot));
  }
  if (m.variant == SequenceVariant::Permutation) {
    for (int e = 0; e < n; ++e) {
      std::vector<VarId> places;
      for (int p = 0; p < positions; ++p) places.push_back(occupy_var(enc, e, p));
      parts.push_back(detail::exactly_one_expr(places));
    }
  } else {
    // Occupied positions are left-contiguous: empties only grow rightwards.
    for (int p = 0; p + 1 < positions; ++p)
      parts.push_back(BoolExpr::implication(BoolExpr::atom(empty_var(enc, p)),
                                            BoolExpr::atom(empty_var(enc, p + 1))));
  }
  BoolExpr system = detail::compile_model_expr(enc, m.system_constraint, true);
  if (system.op() != ExprOp::ConstTrue) parts.push_back(std::move(system));
  enc.constraint = BoolExpr::conjunction(std::move(parts));

  VarAllocator fresh(enc.atoms.size());
  enc.cnf = to_cnf(enc.constraint, fresh);
  return enc;
}

BoolExpr encode_order_requirement(const SpaceEncoding& enc,
                                  std::span<const std::string> ordered_events) {
  const SequenceModel& m = enc.seq();
  if (ordered_events.size() < 2)
    throw Error("ordering requirement needs at least two events");

  std::vector<int> ids;
  std::unordered_set<int> seen;
  for (const auto& name : ordered_events) {
    auto it = enc.event_index.find(name);
    if (it == enc.event_index.end()) throw Error("unknown event '" + name + "'");
    if (!seen.insert(it->second).second && m.variant == SequenceVariant::Permutation)
      throw Error("event '" + name + "' repeated in a permutation-space requirement");
    ids.push_back(it->second);
  }

  const int positions = position_count(m);
  if (static_cast<int>(ids.size()) > positions) return BoolExpr::constant(false);
  std::vector<BoolExpr> disjuncts;
  std::vector<BoolExpr> partial;
  collect_position_tuples(enc, ids, 0, 0, positions, partial, disjuncts);
  return BoolExpr::disjunction(std::move(disjuncts));
}

EventSeqTest decode_seq_test(const SpaceEncoding& enc, const Assignment& a) {
  const SequenceModel& m = enc.seq();
  const int n = static_cast<int>(m.events.size());
  const int positions = position_count(m);

  EventSeqTest tc;
  bool ended = false;
  for (int p = 0; p < positions; ++p) {
    int chosen = -1;
    for (int e = 0; e < n; ++e) {
      if (!a.value(occupy_var(enc, e, p))) continue;
      if (chosen >= 0) throw MalformedAssignment("two events at position " + std::to_string(p));
      chosen = e;
    }
    if (m.variant == SequenceVariant::VariableLength && a.value(empty_var(enc, p))) {
      if (chosen >= 0)
        throw MalformedAssignment("position " + std::to_string(p) + " both empty and occupied");
      ended = true;
      continue;
    }
    if (chosen < 0) throw MalformedAssignment("no event at position " + std::to_string(p));
    if (ended)
      throw MalformedAssignment("occupied position " + std::to_string(p) + " after an empty one");
    tc.events.push_back(m.events[static_cast<std::size_t>(chosen)]);
  }
  return tc;
}

namespace detail {

Assignment encode_seq_assignment(const SpaceEncoding& enc, const EventSeqTest& tc) {
  const SequenceModel& m = enc.seq();
  const int positions = position_count(m);
  if (static_cast<int>(tc.events.size()) > positions)
    throw Error("sequence longer than the space allows");

  Assignment a(static_cast<std::size_t>(enc.atoms.size()));
  int p = 0;
  for (const auto& name : tc.events) {
    auto it = enc.event_index.find(name);
    if (it == enc.event_index.end()) throw Error("unknown event '" + name + "'");
    a.set(occupy_var(enc, it->second, p++), true);
  }
  if (m.variant == SequenceVariant::VariableLength)
    for (; p < positions; ++p) a.set(empty_var(enc, p), true);
  return a;
}

}  // namespace detail

}  // namespace ucit
