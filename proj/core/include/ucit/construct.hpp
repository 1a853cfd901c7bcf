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

#ifndef UCIT_CONSTRUCT_HPP
#define UCIT_CONSTRUCT_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "ucit/enumerate.hpp"

namespace ucit {

/// Requirement processing order. Greedy packing is order-sensitive, so the
/// shuffle seed is part of the output's identity and recorded in metadata.
enum class RequirementOrder : std::uint8_t { AsEnumerated, Shuffled };

struct Policy {
  RequirementOrder order = RequirementOrder::AsEnumerated;
  std::uint64_t seed = 0;
  friend bool operator==(const Policy&, const Policy&) = default;
};

std::string to_string(RequirementOrder order);

struct ObjectMetadata {
  std::string model_hash;  // hash of the canonical model text, set by the caller
  std::string criterion;   // canonical criterion text, set by the caller
  Policy policy;
  std::int64_t requirement_count = 0;
  std::int64_t test_count = 0;
  friend bool operator==(const ObjectMetadata&, const ObjectMetadata&) = default;
};

/// The output of construction: one test per subset of jointly satisfiable
/// requirements, each requirement placed in exactly one subset.
struct UcitObject {
  std::vector<std::vector<int>> subsets;  // requirement ids, creation order
  std::vector<TestCase> tests;            // tests[i] realizes subsets[i]
  ObjectMetadata metadata;
};

/// Raised by build() when a requirement violates its precondition of being
/// individually satisfiable with M.
class InvalidRequirement : public Error {
public:
  using Error::Error;
};

/// Greedy first-fit accommodation. One solver holds M's CNF for the whole
/// run; every subset keeps the cumulative assumption literals of its
/// members, so an accommodation probe is a single assumption solve.
class SubsetPacker {
public:
  explicit SubsetPacker(const SpaceEncoding& enc);

  /// Verdict of r ∧ M ∧ ⋀(members of `subset`); read-only. Equivalent to a
  /// fresh solve of that conjunction.
  bool subset_cache_check(std::size_t subset, const Requirement& r);

  /// Places r into the first subset that can accommodate it, opening a new
  /// one if none fits; returns the subset index. Throws InvalidRequirement
  /// if r alone is unsatisfiable with M.
  std::size_t place(const Requirement& r);

  [[nodiscard]] std::size_t subset_count() const { return members_.size(); }
  [[nodiscard]] const std::vector<int>& members(std::size_t subset) const {
    return members_.at(subset);
  }

  /// Satisfying assignment of M ∧ ⋀(members of `subset`).
  std::optional<Assignment> solve_subset(std::size_t subset);

private:
  std::vector<Literal>& assumptions_of(const Requirement& r);

  SatChecker checker_;
  std::unordered_map<int, std::vector<Literal>> by_id_;
  std::vector<std::vector<int>> members_;
  std::vector<std::vector<Literal>> assumptions_;  // cumulative per subset
};

/// Runs the full construction: accommodate every requirement in policy
/// order with first-fit, then solve each subset once and decode the model
/// into a test case. The result always passes the verifier.
UcitObject build(const SpaceEncoding& enc, const RequirementSet& reqs, const Policy& policy);

namespace detail {
/// Fisher-Yates with an explicitly specified generator so shuffled output
/// is identical on every platform.
void deterministic_shuffle(std::vector<int>& items, std::uint64_t seed);
}  // namespace detail

}  // namespace ucit

#endif  // UCIT_CONSTRUCT_HPP
