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

#include "ucit/spaces.hpp"

#include <sstream>

#include "spaces_internal.hpp"

namespace ucit {

VarId AtomTable::add(const Atom& at) {
  if (auto it = index_.find(at); it != index_.end()) return it->second;
  const VarId v = static_cast<VarId>(atoms_.size());
  atoms_.push_back(at);
  index_.emplace(at, v);
  return v;
}

std::optional<VarId> AtomTable::find(const Atom& at) const {
  auto it = index_.find(at);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VarId AtomTable::require(const Atom& at) const {
  auto v = find(at);
  if (!v) throw Error("atom not present in encoding dictionary");
  return *v;
}

const CoveringArrayModel& SpaceEncoding::ca() const {
  if (kind != SpaceKind::CoveringArray) throw Error("encoding is not a covering-array space");
  return std::get<CoveringArrayModel>(model);
}

const SequenceModel& SpaceEncoding::seq() const {
  if (kind != SpaceKind::Sequence) throw Error("encoding is not a sequence space");
  return std::get<SequenceModel>(model);
}

const FsmModel& SpaceEncoding::fsm() const {
  if (kind != SpaceKind::Fsm) throw Error("encoding is not an FSM space");
  return std::get<FsmModel>(model);
}

std::string SpaceEncoding::atom_label(VarId v) const {
  const Atom& at = atoms[v];
  std::ostringstream out;
  switch (at.kind) {
    case AtomKind::FactorValue: {
      const auto& factors = kind == SpaceKind::Fsm ? fsm().factors : ca().factors;
      const Factor& f = factors.at(static_cast<std::size_t>(at.a));
      out << f.name << '=' << f.domain.at(static_cast<std::size_t>(at.b));
      break;
    }
    case AtomKind::EventAt:
      out << "at(" << seq().events.at(static_cast<std::size_t>(at.a)) << ", " << at.b << ')';
      break;
    case AtomKind::EmptyAt:
      out << "empty(" << at.b << ')';
      break;
    case AtomKind::StateAt:
      out << "at(" << fsm().states.at(static_cast<std::size_t>(at.a)) << ", " << at.b << ')';
      break;
    case AtomKind::TransAt:
      out << "taken(" << fsm().transitions.at(static_cast<std::size_t>(at.a)).label << ", "
          << at.b << ')';
      break;
    case AtomKind::Visited:
      out << "visited(" << fsm().states.at(static_cast<std::size_t>(at.a)) << ')';
      break;
  }
  return out.str();
}

std::string tuple_descriptor(std::span<const std::pair<std::string, std::string>> assignments) {
  std::ostringstream out;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (i > 0) out << ", ";
    out << assignments[i].first << '=' << assignments[i].second;
  }
  return out.str();
}

std::string ordering_descriptor(std::span<const std::string> items) {
  std::ostringstream out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out << " before ";
    out << items[i];
  }
  return out.str();
}

SpaceEncoding encode_space(const SpaceModel& m) {
  return std::visit(
      [](const auto& model) -> SpaceEncoding {
        using T = std::decay_t<decltype(model)>;
        if constexpr (std::is_same_v<T, CoveringArrayModel>) return encode_ca_space(model);
        else if constexpr (std::is_same_v<T, SequenceModel>) return encode_seq_space(model);
        else return encode_fsm_space(model);
      },
      m);
}

TestCase decode_test(const SpaceEncoding& enc, const Assignment& a) {
  switch (enc.kind) {
    case SpaceKind::CoveringArray: return decode_ca_test(enc, a);
    case SpaceKind::Sequence: return decode_seq_test(enc, a);
    case SpaceKind::Fsm: return decode_fsm_test(enc, a);
  }
  throw Error("corrupt encoding kind");
}

Assignment encode_test(const SpaceEncoding& enc, const TestCase& tc) {
  return std::visit(
      [&enc](const auto& t) -> Assignment {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, RowTest>) return detail::encode_ca_assignment(enc, t);
        else if constexpr (std::is_same_v<T, EventSeqTest>)
          return detail::encode_seq_assignment(enc, t);
        else return detail::encode_fsm_assignment(enc, t);
      },
      tc);
}

namespace detail {

BoolExpr exactly_one_expr(std::span<const VarId> vars) {
  std::vector<BoolExpr> parts;
  std::vector<BoolExpr> any;
  any.reserve(vars.size());
  for (VarId v : vars) any.push_back(BoolExpr::atom(v));
  parts.push_back(BoolExpr::disjunction(std::move(any)));
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j)
      parts.push_back(!BoolExpr::atom(vars[i]) || !BoolExpr::atom(vars[j]));
  return BoolExpr::conjunction(std::move(parts));
}

void exactly_one_clauses(std::span<const VarId> vars, Cnf& out) {
  Clause any;
  any.reserve(vars.size());
  for (VarId v : vars) any.push_back(pos(v));
  out.clauses.push_back(std::move(any));
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j)
      out.clauses.push_back({neg(vars[i]), neg(vars[j])});
}

BoolExpr compile_model_expr(const SpaceEncoding& enc, const ModelExpr& e, bool allow_before) {
  return transform_atoms<VarId>(e, [&](const ModelAtom& at) -> BoolExpr {
    if (const auto* va = std::get_if<ValueAtom>(&at)) {
      auto fit = enc.factor_index.find(va->factor);
      if (fit == enc.factor_index.end()) throw Error("unknown factor '" + va->factor + "'");
      const auto& values = enc.value_index.at(static_cast<std::size_t>(fit->second));
      auto vit = values.find(va->value);
      if (vit == values.end())
        throw Error("unknown value '" + va->value + "' for factor '" + va->factor + "'");
      return BoolExpr::atom(enc.factor_value_var(fit->second, vit->second));
    }
    const auto& ba = std::get<BeforeAtom>(at);
    if (!allow_before) throw Error("before(...) atoms are only valid in sequence constraints");
    const std::string order[] = {ba.first, ba.second};
    return encode_order_requirement(enc, order);
  });
}

}  // namespace detail

}  // namespace ucit
