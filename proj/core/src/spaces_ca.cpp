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

SpaceEncoding encode_ca_space(const CoveringArrayModel& m) {
  validate(m);
  SpaceEncoding enc;
  enc.kind = SpaceKind::CoveringArray;
  enc.model = m;

  for (std::size_t f = 0; f < m.factors.size(); ++f) {
    enc.factor_index.emplace(m.factors[f].name, static_cast<int>(f));
    auto& values = enc.value_index.emplace_back();
    for (std::size_t v = 0; v < m.factors[f].domain.size(); ++v) {
      values.emplace(m.factors[f].domain[v], static_cast<int>(v));
      enc.atoms.add({AtomKind::FactorValue, static_cast<int>(f), static_cast<int>(v)});
    }
  }

  std::vector<BoolExpr> parts;
  for (std::size_t f = 0; f < m.factors.size(); ++f) {
    std::vector<VarId> group;
    for (std::size_t v = 0; v < m.factors[f].domain.size(); ++v)
      group.push_back(enc.factor_value_var(static_cast<int>(f), static_cast<int>(v)));
    parts.push_back(detail::exactly_one_expr(group));
  }
  BoolExpr system = detail::compile_model_expr(enc, m.system_constraint, false);
  if (system.op() != ExprOp::ConstTrue) parts.push_back(std::move(system));
  enc.constraint = BoolExpr::conjunction(std::move(parts));

  VarAllocator fresh(enc.atoms.size());
  enc.cnf = to_cnf(enc.constraint, fresh);
  return enc;
}

BoolExpr encode_value_tuple(const SpaceEncoding& enc,
                            std::span<const std::pair<std::string, std::string>> assignments) {
  if (assignments.empty()) throw Error("value tuple must assign at least one factor");
  std::unordered_set<std::string> seen;
  std::vector<BoolExpr> atoms;
  atoms.reserve(assignments.size());
  for (const auto& [factor, value] : assignments) {
    if (!seen.insert(factor).second)
      throw Error("factor '" + factor + "' repeated in value tuple");
    atoms.push_back(detail::compile_model_expr(
        enc, ModelExpr::atom(ModelAtom{ValueAtom{factor, value}}), false));
  }
  return BoolExpr::conjunction(std::move(atoms));
}

RowTest decode_ca_test(const SpaceEncoding& enc, const Assignment& a) {
  const CoveringArrayModel& m = enc.ca();
  RowTest row;
  for (std::size_t f = 0; f < m.factors.size(); ++f) {
    int chosen = -1;
    for (std::size_t v = 0; v < m.factors[f].domain.size(); ++v) {
      if (!a.value(enc.factor_value_var(static_cast<int>(f), static_cast<int>(v)))) continue;
      if (chosen >= 0)
        throw MalformedAssignment("factor '" + m.factors[f].name + "' has two values");
      chosen = static_cast<int>(v);
    }
    if (chosen < 0)
      throw MalformedAssignment("factor '" + m.factors[f].name + "' has no value");
    row.values.emplace_back(m.factors[f].name, m.factors[f].domain[static_cast<std::size_t>(chosen)]);
  }
  return row;
}

namespace detail {

Assignment encode_ca_assignment(const SpaceEncoding& enc, const RowTest& tc) {
  static_cast<void>(enc.ca());  // kind check only
  Assignment a(static_cast<std::size_t>(enc.atoms.size()));
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
