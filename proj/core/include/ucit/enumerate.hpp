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

#ifndef UCIT_ENUMERATE_HPP
#define UCIT_ENUMERATE_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "ucit/solver.hpp"
#include "ucit/spaces.hpp"

namespace ucit {

/// Coverage criteria. Each implicitly defines a candidate requirement set;
/// enumeration keeps the candidates that are satisfiable together with M.
struct CaStrength {
  int t = 2;
  friend bool operator==(const CaStrength&, const CaStrength&) = default;
};

struct SeqStrength {
  int t = 2;
  friend bool operator==(const SeqStrength&, const SeqStrength&) = default;
};

struct FsmHybrid {
  int value_t = 2;
  int seq_t = 2;
  /// Whether state-sequence requirements may mention the initial and final
  /// states; they carry no factors, so the default leaves them out.
  bool include_synthetic_states = false;
  friend bool operator==(const FsmHybrid&, const FsmHybrid&) = default;
};

using SimpleCriterion = std::variant<CaStrength, SeqStrength, FsmHybrid>;

struct Composite {
  std::vector<SimpleCriterion> parts;
  friend bool operator==(const Composite&, const Composite&) = default;
};

using Criterion = std::variant<CaStrength, SeqStrength, FsmHybrid, Composite>;

std::string to_string(const Criterion& c);

/// Enumeration result: the valid requirements, with ids dense in [0, valid),
/// plus bookkeeping about what the filter discarded.
struct RequirementSet {
  std::vector<Requirement> requirements;
  std::int64_t candidates = 0;  // everything the criterion implies
  std::int64_t invalid = 0;     // unsatisfiable together with M
  std::int64_t duplicates = 0;  // repeated descriptors (composite criteria)

  [[nodiscard]] std::int64_t valid() const {
    return static_cast<std::int64_t>(requirements.size());
  }
};

/// Incremental satisfiability oracle against a fixed encoding. Holds one
/// solver primed with M's CNF; requirement constraints turn into assumption
/// literals, so repeated conjunction checks never re-encode M.
class SatChecker {
public:
  explicit SatChecker(const SpaceEncoding& enc);

  /// Assumption literals whose conjunction is equisatisfiable with
  /// `expr ∧ <everything added so far>`. Conjunctions of atoms map to their
  /// literals; other shapes get a Tseitin definition added to the solver.
  std::vector<Literal> assumptions_for(const BoolExpr& expr);

  bool satisfiable(std::span<const Literal> assumptions);
  std::optional<Assignment> solve(std::span<const Literal> assumptions);
  [[nodiscard]] std::uint64_t num_solves() const { return solver_.num_solves(); }

private:
  Solver solver_;
  VarAllocator fresh_;
};

RequirementSet enumerate_ca(const SpaceEncoding& enc, int t, int jobs = 1);
RequirementSet enumerate_seq(const SpaceEncoding& enc, int t, int jobs = 1);
RequirementSet enumerate_fsm(const SpaceEncoding& enc, int value_t, int seq_t,
                             bool include_synthetic_states = false, int jobs = 1);

/// Criterion dispatch. Composite parts are concatenated with duplicate
/// descriptors dropped; value-tuple requirements come before ordering
/// requirements. The result is deterministic and independent of `jobs`.
RequirementSet enumerate(const Criterion& criterion, const SpaceEncoding& enc, int jobs = 1);

}  // namespace ucit

#endif  // UCIT_ENUMERATE_HPP
