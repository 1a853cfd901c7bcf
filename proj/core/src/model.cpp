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

#include "ucit/model.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace ucit {

namespace {

void check_unique(const std::vector<std::string>& names, const char* what) {
  std::unordered_set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) throw Error(std::string("empty ") + what + " name");
    if (!seen.insert(n).second) throw Error(std::string("duplicate ") + what + " '" + n + "'");
  }
}

void check_factors(const std::vector<Factor>& factors) {
  std::unordered_set<std::string> seen;
  for (const Factor& f : factors) {
    if (f.name.empty()) throw Error("empty factor name");
    if (!seen.insert(f.name).second) throw Error("duplicate factor '" + f.name + "'");
    if (f.domain.size() < 2)
      throw Error("factor '" + f.name + "' needs a domain of at least 2 values");
    std::set<std::string> values(f.domain.begin(), f.domain.end());
    if (values.size() != f.domain.size())
      throw Error("duplicate value in domain of factor '" + f.name + "'");
  }
}

}  // namespace

SpaceKind kind_of(const SpaceModel& m) {
  if (std::holds_alternative<CoveringArrayModel>(m)) return SpaceKind::CoveringArray;
  if (std::holds_alternative<SequenceModel>(m)) return SpaceKind::Sequence;
  return SpaceKind::Fsm;
}

std::string to_string(SpaceKind k) {
  switch (k) {
    case SpaceKind::CoveringArray: return "ca";
    case SpaceKind::Sequence: return "sequence";
    case SpaceKind::Fsm: return "fsm";
  }
  return "?";
}

void validate(const CoveringArrayModel& m) {
  if (m.factors.empty()) throw Error("covering-array model needs at least one factor");
  check_factors(m.factors);
  if (m.strength < 1) throw Error("strength must be at least 1");
  if (m.strength > static_cast<int>(m.factors.size()))
    throw Error("strength exceeds the number of factors");
}

void validate(const SequenceModel& m) {
  if (m.events.empty()) throw Error("sequence model needs at least one event");
  check_unique(m.events, "event");
  if (m.strength < 2) throw Error("sequence strength must be at least 2");
  if (m.variant == SequenceVariant::VariableLength) {
    if (m.max_len < 1) throw Error("variable-length sequences need max_len >= 1");
    if (m.max_len < m.strength)
      throw Error("max_len is smaller than the sequence strength");
  }
}

void validate(const FsmModel& m) {
  if (m.states.size() < 2) throw Error("fsm needs at least an initial and a final state");
  check_unique(m.states, "state");
  const auto has_state = [&m](const std::string& s) {
    return std::find(m.states.begin(), m.states.end(), s) != m.states.end();
  };
  if (!has_state(m.initial)) throw Error("initial state '" + m.initial + "' not declared");
  if (!has_state(m.final_state)) throw Error("final state '" + m.final_state + "' not declared");
  if (m.initial == m.final_state) throw Error("initial and final state must differ");

  std::unordered_set<std::string> labels;
  for (const FsmTransition& t : m.transitions) {
    if (t.label.empty()) throw Error("empty transition label");
    if (!labels.insert(t.label).second) throw Error("duplicate transition '" + t.label + "'");
    if (!has_state(t.from) || !has_state(t.to))
      throw Error("transition '" + t.label + "' references an unknown state");
    if (t.to == m.initial)
      throw Error("initial state must have no incoming transitions ('" + t.label + "')");
    if (t.from == m.final_state)
      throw Error("final state must have no outgoing transitions ('" + t.label + "')");
  }

  check_factors(m.factors);
  if (m.factor_state.size() != m.factors.size())
    throw Error("every factor must be bound to exactly one state");
  for (std::size_t i = 0; i < m.factors.size(); ++i) {
    if (!has_state(m.factor_state[i]))
      throw Error("factor '" + m.factors[i].name + "' bound to unknown state '" +
                  m.factor_state[i] + "'");
  }

  if (m.path_bound != 0 && m.path_bound < 2) throw Error("path-bound must be at least 2");
}

void validate(const SpaceModel& m) {
  std::visit([](const auto& model) { validate(model); }, m);
}

}  // namespace ucit
