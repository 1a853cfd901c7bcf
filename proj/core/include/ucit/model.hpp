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

#ifndef UCIT_MODEL_HPP
#define UCIT_MODEL_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ucit/expr.hpp"

namespace ucit {

/// Named atom `factor=value`, resolved against a model's factor table.
struct ValueAtom {
  std::string factor;
  std::string value;
  friend bool operator==(const ValueAtom&, const ValueAtom&) = default;
};

/// Named ordering atom `before(first, second)` for sequence spaces.
struct BeforeAtom {
  std::string first;
  std::string second;
  friend bool operator==(const BeforeAtom&, const BeforeAtom&) = default;
};

using ModelAtom = std::variant<ValueAtom, BeforeAtom>;

/// Model-level constraint: same tree as BoolExpr but over named atoms.
/// Encoders compile these down to variable ids.
using ModelExpr = BasicExpr<ModelAtom>;

/// A parameter with a finite discrete domain of at least two values.
struct Factor {
  std::string name;
  std::vector<std::string> domain;
  friend bool operator==(const Factor&, const Factor&) = default;
};

struct CoveringArrayModel {
  std::vector<Factor> factors;
  ModelExpr system_constraint;  // defaults to true
  int strength = 2;
  friend bool operator==(const CoveringArrayModel&, const CoveringArrayModel&) = default;
};

enum class SequenceVariant : std::uint8_t {
  Permutation,     // every event exactly once, length = |events|
  VariableLength,  // events may repeat or be absent, length <= max_len
};

struct SequenceModel {
  std::vector<std::string> events;
  SequenceVariant variant = SequenceVariant::Permutation;
  int max_len = 0;  // VariableLength only
  ModelExpr system_constraint;  // over before(a,b) atoms
  int strength = 2;
  friend bool operator==(const SequenceModel&, const SequenceModel&) = default;
};

struct FsmTransition {
  std::string label;
  std::string from;
  std::string to;
  ModelExpr guard;  // over factor atoms; defaults to true
  friend bool operator==(const FsmTransition&, const FsmTransition&) = default;
};

/// Guarded finite state machine. Each factor is defined in exactly one
/// state and can only be set when that state is visited; a test case is a
/// path from `initial` to `final_state` of at most `path_bound` transitions.
struct FsmModel {
  std::vector<std::string> states;  // includes initial and final
  std::string initial;
  std::string final_state;
  std::vector<FsmTransition> transitions;
  std::vector<Factor> factors;
  std::vector<std::string> factor_state;  // factor_state[i] defines factors[i]
  int path_bound = 0;  // 0 = default (|states| + 1)
  friend bool operator==(const FsmModel&, const FsmModel&) = default;

  [[nodiscard]] int effective_path_bound() const {
    return path_bound > 0 ? path_bound : static_cast<int>(states.size()) + 1;
  }
};

using SpaceModel = std::variant<CoveringArrayModel, SequenceModel, FsmModel>;

enum class SpaceKind : std::uint8_t { CoveringArray, Sequence, Fsm };

SpaceKind kind_of(const SpaceModel& m);
std::string to_string(SpaceKind k);

/// Checks the structural invariants of a model (unique names, domain
/// sizes, binding rules, initial/final shape). Throws Error on violation.
void validate(const CoveringArrayModel& m);
void validate(const SequenceModel& m);
void validate(const FsmModel& m);
void validate(const SpaceModel& m);

}  // namespace ucit

#endif  // UCIT_MODEL_HPP
