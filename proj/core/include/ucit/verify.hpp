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

#ifndef UCIT_VERIFY_HPP
#define UCIT_VERIFY_HPP

#include <string>
#include <vector>

#include "ucit/construct.hpp"

namespace ucit {

/// Independent coverage audit of a test suite. Produced by evaluation only
/// (never the solver): each test is re-encoded to a total assignment, then
/// M decides validity and each requirement expression decides coverage.
struct CoverageReport {
  /// Per requirement (index = position in the RequirementSet): the indices
  /// of the tests satisfying it, decodable or not, valid or not.
  std::vector<std::vector<int>> covering_tests;
  std::vector<bool> test_valid;           // per test; false if undecodable
  std::vector<std::string> test_errors;   // per test; non-empty if undecodable

  std::int64_t covered = 0;  // requirements with at least one covering test
  std::int64_t total = 0;
  int invalid_tests = 0;

  /// The paper's defining guarantee: every requirement covered and every
  /// test case valid.
  [[nodiscard]] bool full_coverage() const {
    return covered == total && invalid_tests == 0;
  }
};

CoverageReport verify(const UcitObject& object, const RequirementSet& reqs,
                      const SpaceEncoding& enc);

/// Human-readable summary: totals, percentages, and up to the first ten
/// uncovered requirement descriptors.
std::string coverage_stats(const CoverageReport& report, const RequirementSet& reqs);

}  // namespace ucit

#endif  // UCIT_VERIFY_HPP
