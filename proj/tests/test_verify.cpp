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
#include <random>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "oracles/oracles.hpp"
#include "ucit/construct.hpp"
#include "ucit/enumerate.hpp"
#include "ucit/model.hpp"
#include "ucit/spaces.hpp"
#include "ucit/verify.hpp"

namespace {

ucit::ModelExpr value_atom(std::string f, std::string v) {
  return ucit::ModelExpr::atom(ucit::ModelAtom{ucit::ValueAtom{std::move(f), std::move(v)}});
}

ucit::CoveringArrayModel booleans(int n) {
  ucit::CoveringArrayModel m;
  for (int i = 0; i < n; ++i)
    m.factors.push_back({"f" + std::to_string(i), {"T", "F"}});
  return m;
}

ucit::Criterion default_criterion(const ucit::SpaceModel& m) {
  if (std::holds_alternative<ucit::CoveringArrayModel>(m)) return ucit::CaStrength{2};
  if (std::holds_alternative<ucit::SequenceModel>(m)) return ucit::SeqStrength{2};
  const auto& fsm = std::get<ucit::FsmModel>(m);
  const int value_t = fsm.factors.size() >= 2 ? 2 : 1;
  return ucit::FsmHybrid{value_t, 2};
}

// Verdict agreement with the containment oracle, pair by pair.
void check_matches_oracle(const ucit::UcitObject& object, const ucit::RequirementSet& reqs,
                          const ucit::CoverageReport& report) {
  REQUIRE(report.covering_tests.size() == reqs.requirements.size());
  for (std::size_t r = 0; r < reqs.requirements.size(); ++r) {
    const auto& covering = report.covering_tests[r];
    for (std::size_t i = 0; i < object.tests.size(); ++i) {
      const bool verdict =
          std::find(covering.begin(), covering.end(), static_cast<int>(i)) != covering.end();
      CHECK(verdict == oracle::covers(object.tests[i], reqs.requirements[r].descriptor));
    }
  }
}

}  // namespace

TEST_CASE("a freshly built object passes its audit") {
  const auto m = booleans(3);
  const auto enc = ucit::encode_ca_space(m);
  const auto reqs = ucit::enumerate_ca(enc, 2);
  const auto object = ucit::build(enc, reqs, {});

  const auto report = ucit::verify(object, reqs, enc);
  CHECK(report.full_coverage());
  CHECK(report.covered == 12);
  CHECK(report.total == 12);
  CHECK(report.invalid_tests == 0);
  for (std::size_t i = 0; i < object.tests.size(); ++i) {
    CHECK(report.test_valid[i]);
    CHECK(report.test_errors[i].empty());
  }
  for (const auto& covering : report.covering_tests) CHECK_FALSE(covering.empty());
  check_matches_oracle(object, reqs, report);
}

TEST_CASE("an empty suite covers nothing and is not a full cover") {
  const auto enc = ucit::encode_ca_space(booleans(3));
  const auto reqs = ucit::enumerate_ca(enc, 2);

  const auto report = ucit::verify(ucit::UcitObject{}, reqs, enc);
  CHECK(report.covered == 0);
  CHECK(report.total == 12);
  CHECK(report.invalid_tests == 0);
  CHECK_FALSE(report.full_coverage());
  for (const auto& covering : report.covering_tests) CHECK(covering.empty());
}

TEST_CASE("deleting a test uncovers exactly its uniquely covered requirements") {
  auto m = booleans(4);
  m.system_constraint = !(value_atom("f0", "T") && value_atom("f1", "T"));
  const auto enc = ucit::encode_ca_space(m);
  const auto reqs = ucit::enumerate_ca(enc, 2);
  const auto object = ucit::build(enc, reqs, {});
  const auto before = ucit::verify(object, reqs, enc);
  REQUIRE(before.full_coverage());

  // pick a test some requirement depends on exclusively
  int victim = -1;
  for (std::size_t r = 0; r < before.covering_tests.size() && victim < 0; ++r)
    if (before.covering_tests[r].size() == 1) victim = before.covering_tests[r][0];
  REQUIRE(victim >= 0);

  std::set<std::string> expected;
  for (std::size_t r = 0; r < before.covering_tests.size(); ++r)
    if (before.covering_tests[r] == std::vector<int>{victim})
      expected.insert(reqs.requirements[r].descriptor);

  auto mutated = object;
  mutated.tests.erase(mutated.tests.begin() + victim);
  mutated.subsets.erase(mutated.subsets.begin() + victim);
  const auto after = ucit::verify(mutated, reqs, enc);

  std::set<std::string> uncovered;
  for (std::size_t r = 0; r < after.covering_tests.size(); ++r)
    if (after.covering_tests[r].empty()) uncovered.insert(reqs.requirements[r].descriptor);

  CHECK_FALSE(after.full_coverage());
  CHECK(uncovered == expected);
  CHECK(after.covered == after.total - static_cast<std::int64_t>(expected.size()));
}

TEST_CASE("a constraint-violating test is flagged but still counted for coverage") {
  auto m = booleans(3);
  m.system_constraint = !(value_atom("f0", "T") && value_atom("f1", "T"));
  const auto enc = ucit::encode_ca_space(m);
  const auto reqs = ucit::enumerate_ca(enc, 2);
  auto object = ucit::build(enc, reqs, {});
  REQUIRE(ucit::verify(object, reqs, enc).full_coverage());

  object.tests.push_back(ucit::RowTest{{{"f0", "T"}, {"f1", "T"}, {"f2", "T"}}});
  object.subsets.push_back({});
  const int added = static_cast<int>(object.tests.size()) - 1;

  const auto report = ucit::verify(object, reqs, enc);
  CHECK(report.invalid_tests == 1);
  CHECK_FALSE(report.test_valid[added]);
  CHECK(report.test_errors[added].empty());  // decodable, just forbidden
  CHECK(report.covered == report.total);     // coverage itself is intact
  CHECK_FALSE(report.full_coverage());

  // the invalid test still shows up in covering lists it satisfies
  for (std::size_t r = 0; r < reqs.requirements.size(); ++r) {
    if (reqs.requirements[r].descriptor != "f0=T, f2=T") continue;
    const auto& covering = report.covering_tests[r];
    CHECK(std::find(covering.begin(), covering.end(), added) != covering.end());
  }
}

TEST_CASE("an undecodable test reports its error and never covers anything") {
  const auto m = booleans(3);
  const auto enc = ucit::encode_ca_space(m);
  const auto reqs = ucit::enumerate_ca(enc, 2);
  auto object = ucit::build(enc, reqs, {});
  const auto clean = ucit::verify(object, reqs, enc);

  object.tests.push_back(ucit::RowTest{{{"f0", "X"}, {"f1", "T"}, {"f2", "T"}}});
  object.tests.push_back(ucit::EventSeqTest{{"a", "b"}});  // wrong shape entirely
  object.subsets.push_back({});
  object.subsets.push_back({});

  const auto report = ucit::verify(object, reqs, enc);
  CHECK(report.invalid_tests == 2);
  const auto n = object.tests.size();
  CHECK_FALSE(report.test_valid[n - 2]);
  CHECK_FALSE(report.test_valid[n - 1]);
  CHECK_FALSE(report.test_errors[n - 2].empty());
  CHECK_FALSE(report.test_errors[n - 1].empty());
  CHECK_FALSE(report.full_coverage());
  // coverage lists are unchanged: broken tests contribute nothing
  CHECK(report.covering_tests == clean.covering_tests);
}

TEST_CASE("coverage_stats reports totals, percentage, and uncovered descriptors") {
  const auto enc = ucit::encode_ca_space(booleans(3));
  const auto reqs = ucit::enumerate_ca(enc, 2);

  const auto full = ucit::verify(ucit::build(enc, reqs, {}), reqs, enc);
  const auto full_text = ucit::coverage_stats(full, reqs);
  CHECK(full_text.find("12/12") != std::string::npos);
  CHECK(full_text.find("100.0%") != std::string::npos);
  CHECK(full_text.find("0 invalid") != std::string::npos);
  CHECK(full_text.find("uncovered") == std::string::npos);

  const auto empty = ucit::verify(ucit::UcitObject{}, reqs, enc);
  const auto empty_text = ucit::coverage_stats(empty, reqs);
  CHECK(empty_text.find("0/12") != std::string::npos);
  CHECK(empty_text.find("0.0%") != std::string::npos);
  CHECK(empty_text.find("uncovered:") != std::string::npos);
  CHECK(empty_text.find("f0=T, f1=T") != std::string::npos);  // first descriptor listed
  CHECK(empty_text.find("... and 2 more") != std::string::npos);  // 12 uncovered, 10 shown
}

TEST_CASE("sequence and fsm suites audit exactly like the containment oracle") {
  ucit::SequenceModel sm;
  sm.events = {"open", "read", "close"};
  const auto seq_enc = ucit::encode_seq_space(sm);
  const auto seq_reqs = ucit::enumerate_seq(seq_enc, 2);
  const auto seq_object = ucit::build(seq_enc, seq_reqs, {});
  const auto seq_report = ucit::verify(seq_object, seq_reqs, seq_enc);
  CHECK(seq_report.full_coverage());
  check_matches_oracle(seq_object, seq_reqs, seq_report);

  ucit::FsmModel fm;
  fm.states = {"i", "A", "B", "f"};
  fm.initial = "i";
  fm.final_state = "f";
  fm.transitions = {{"ta", "i", "A", {}},
                    {"tb", "i", "B", {}},
                    {"af", "A", "f", {}},
                    {"bf", "B", "f", value_atom("g", "T")}};
  fm.factors = {{"g", {"T", "F"}}, {"h", {"T", "F"}}};
  fm.factor_state = {"A", "B"};
  const auto fsm_enc = ucit::encode_fsm_space(fm);
  const auto fsm_reqs = ucit::enumerate(ucit::FsmHybrid{1, 2}, fsm_enc);
  const auto fsm_object = ucit::build(fsm_enc, fsm_reqs, {});
  const auto fsm_report = ucit::verify(fsm_object, fsm_reqs, fsm_enc);
  CHECK(fsm_report.full_coverage());
  check_matches_oracle(fsm_object, fsm_reqs, fsm_report);
}

TEST_CASE("the audit agrees with the oracle across random models") {
  std::mt19937_64 rng(202);
  for (int round = 0; round < 15; ++round) {
    const ucit::SpaceModel m = oracle::random_model(rng);
    const auto enc = ucit::encode_space(m);
    const auto reqs = ucit::enumerate(default_criterion(m), enc);
    const auto object = ucit::build(enc, reqs, {});
    const auto report = ucit::verify(object, reqs, enc);
    CHECK(report.full_coverage());
    CHECK(report.total == reqs.valid());
    check_matches_oracle(object, reqs, report);
  }
}
