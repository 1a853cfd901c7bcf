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

#include "ucit/verify.hpp"

#include <iomanip>
#include <sstream>

namespace ucit {

CoverageReport verify(const UcitObject& object, const RequirementSet& reqs,
                      const SpaceEncoding& enc) {
  CoverageReport report;
  report.total = reqs.valid();
  report.covering_tests.resize(reqs.requirements.size());
  report.test_valid.resize(object.tests.size(), false);
  report.test_errors.resize(object.tests.size());

  for (std::size_t i = 0; i < object.tests.size(); ++i) {
    Assignment a;
    try {
      a = encode_test(enc, object.tests[i]);
    } catch (const Error& e) {
      report.test_errors[i] = e.what();
      ++report.invalid_tests;
      continue;
    }
    report.test_valid[i] = evaluate(enc.constraint, a);
    if (!report.test_valid[i]) ++report.invalid_tests;
    for (std::size_t r = 0; r < reqs.requirements.size(); ++r)
      if (evaluate(reqs.requirements[r].expr, a))
        report.covering_tests[r].push_back(static_cast<int>(i));
  }

  for (const auto& covering : report.covering_tests)
    if (!covering.empty()) ++report.covered;
  return report;
}

std::string coverage_stats(const CoverageReport& report, const RequirementSet& reqs) {
  std::ostringstream out;
  const double percent =
      report.total == 0 ? 100.0
                        : 100.0 * static_cast<double>(report.covered) /
                              static_cast<double>(report.total);
  out << "requirements covered: " << report.covered << "/" << report.total << " ("
      << std::fixed << std::setprecision(1) << percent << "%)\n";
  out << "tests: " << report.test_valid.size() << " (" << report.invalid_tests
      << " invalid)\n";
  if (report.covered < report.total) {
    out << "uncovered:\n";
    int shown = 0;
    for (std::size_t r = 0; r < report.covering_tests.size() && shown < 10; ++r) {
      if (!report.covering_tests[r].empty()) continue;
      out << "  - " << reqs.requirements[r].descriptor << "\n";
      ++shown;
    }
    const std::int64_t hidden = report.total - report.covered - shown;
    if (hidden > 0) out << "  ... and " << hidden << " more\n";
  }
  return out.str();
}

}  // namespace ucit
