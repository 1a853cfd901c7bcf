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
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "oracles/oracles.hpp"
#include "ucit/enumerate.hpp"
#include "ucit/model.hpp"
#include "ucit/spaces.hpp"

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

ucit::CoveringArrayModel grid(int factors, int width) {
  ucit::CoveringArrayModel m;
  for (int f = 0; f < factors; ++f) {
    ucit::Factor factor{"f" + std::to_string(f), {}};
    for (int v = 0; v < width; ++v) factor.domain.push_back("v" + std::to_string(v));
    m.factors.push_back(std::move(factor));
  }
  return m;
}

// The six-state guarded machine with one factor on each of S0, S1, S2, S3.
ucit::FsmModel small_machine() {
  ucit::FsmModel m;
  m.states = {"i", "S0", "S1", "S2", "S3", "S4", "S5", "f"};
  m.initial = "i";
  m.final_state = "f";
  m.transitions = {
      {"T0", "i", "S0", {}},   {"T1", "S0", "S1", {}},
      {"T2", "S0", "S2", {}},  {"T3", "S1", "S3", value_atom("p1", "T")},
      {"T4", "S2", "S3", {}},  {"T5", "S2", "S5", {}},
      {"T6", "S1", "S4", value_atom("p1", "F")},
      {"T7", "S3", "S4", {}},  {"T8", "S3", "S5", {}},
      {"T9", "S4", "f", {}},   {"T10", "S5", "f", {}},
  };
  m.factors = {{"p0", {"T", "F"}}, {"p1", {"T", "F"}}, {"p4", {"T", "F"}}, {"p7", {"T", "F"}}};
  m.factor_state = {"S0", "S1", "S2", "S3"};
  m.path_bound = 6;
  return m;
}

std::vector<std::string> descriptors(const ucit::RequirementSet& rs) {
  std::vector<std::string> out;
  for (const auto& r : rs.requirements) out.push_back(r.descriptor);
  return out;
}

void check_dense_ids(const ucit::RequirementSet& rs) {
  for (std::size_t i = 0; i < rs.requirements.size(); ++i)
    CHECK(rs.requirements[i].id == static_cast<int>(i));
}

// Requirements a criterion should produce: those candidates covered by at
// least one brute-force-valid test, in candidate order.
template <typename Tests>
std::vector<std::string> coverable(const std::vector<std::string>& candidates,
                                   const Tests& tests) {
  std::vector<std::string> out;
  for (const std::string& d : candidates) {
    const bool hit = std::any_of(tests.begin(), tests.end(), [&](const auto& t) {
      return oracle::covers(ucit::TestCase(t), d);
    });
    if (hit) out.push_back(d);
  }
  return out;
}

std::vector<std::string> ca_candidate_descriptors(const ucit::CoveringArrayModel& m, int t) {
  std::vector<std::string> out;
  const int n = static_cast<int>(m.factors.size());
  std::vector<int> pick;
  const auto tuples = [&](const auto& self, std::vector<std::pair<std::string, std::string>>& acc,
                          std::size_t at) -> void {
    if (at == pick.size()) {
      out.push_back(ucit::tuple_descriptor(acc));
      return;
    }
    for (const auto& value : m.factors[static_cast<std::size_t>(pick[at])].domain) {
      acc.emplace_back(m.factors[static_cast<std::size_t>(pick[at])].name, value);
      self(self, acc, at + 1);
      acc.pop_back();
    }
  };
  const auto subsets = [&](const auto& self, int start) -> void {
    if (static_cast<int>(pick.size()) == t) {
      std::vector<std::pair<std::string, std::string>> acc;
      tuples(tuples, acc, 0);
      return;
    }
    for (int i = start; i < n; ++i) {
      pick.push_back(i);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  subsets(subsets, 0);
  return out;
}

}  // namespace

TEST_CASE("pairwise candidates over three boolean factors are all valid") {
  const auto m = booleans(3);
  const auto enc = ucit::encode_ca_space(m);
  const auto rs = ucit::enumerate_ca(enc, 2);
  CHECK(rs.candidates == 12);
  CHECK(rs.invalid == 0);
  CHECK(rs.duplicates == 0);
  REQUIRE(rs.valid() == 12);
  check_dense_ids(rs);
  // lexicographic: factor pairs (0,1), (0,2), (1,2); values leftmost-slowest
  CHECK(rs.requirements[0].descriptor == "f0=T, f1=T");
  CHECK(rs.requirements[1].descriptor == "f0=T, f1=F");
  CHECK(rs.requirements[2].descriptor == "f0=F, f1=T");
  CHECK(rs.requirements[3].descriptor == "f0=F, f1=F");
  CHECK(rs.requirements[4].descriptor == "f0=T, f2=T");
  CHECK(rs.requirements[11].descriptor == "f1=F, f2=F");
  CHECK(descriptors(rs) == ca_candidate_descriptors(m, 2));
}

TEST_CASE("a 4x3 grid yields fifty-four pairwise requirements") {
  const auto enc = ucit::encode_ca_space(grid(4, 3));
  const auto rs = ucit::enumerate_ca(enc, 2);
  CHECK(rs.candidates == 54);
  CHECK(rs.invalid == 0);
  CHECK(rs.valid() == 54);
}

TEST_CASE("constrained tuples are filtered out with exact counts") {
  auto m = booleans(3);
  m.system_constraint = !(value_atom("f0", "T") && value_atom("f1", "T"));
  const auto enc = ucit::encode_ca_space(m);
  const auto rs = ucit::enumerate_ca(enc, 2);
  CHECK(rs.candidates == 12);
  CHECK(rs.invalid == 1);
  REQUIRE(rs.valid() == 11);
  for (const auto& r : rs.requirements) CHECK(r.descriptor != "f0=T, f1=T");
  CHECK(descriptors(rs) == coverable(ca_candidate_descriptors(m, 2), oracle::all_valid_rows(m)));
}

TEST_CASE("enumeration matches the containment oracle on random covering arrays") {
  std::mt19937_64 rng(47);
  int checked = 0;
  while (checked < 15) {
    const ucit::SpaceModel sm = oracle::random_model(rng);
    const auto* ca = std::get_if<ucit::CoveringArrayModel>(&sm);
    if (ca == nullptr) continue;
    const auto enc = ucit::encode_ca_space(*ca);
    const auto rs = ucit::enumerate_ca(enc, 2);
    const auto cands = ca_candidate_descriptors(*ca, 2);
    CHECK(rs.candidates == static_cast<std::int64_t>(cands.size()));
    REQUIRE(descriptors(rs) == coverable(cands, oracle::all_valid_rows(*ca)));
    ++checked;
  }
}

TEST_CASE("sequence pairs cover ordered distinct events") {
  ucit::SequenceModel m;
  m.events = {"open", "read", "write", "seek", "close"};
  const auto enc = ucit::encode_seq_space(m);
  const auto rs = ucit::enumerate_seq(enc, 2);
  CHECK(rs.candidates == 20);  // 5 x 4 ordered pairs
  CHECK(rs.invalid == 0);
  REQUIRE(rs.valid() == 20);
  CHECK(rs.requirements[0].descriptor == "open before read");
  CHECK(rs.requirements[19].descriptor == "close before seek");
  for (const auto& r : rs.requirements) CHECK(r.kind == ucit::RequirementKind::Ordering);
}

TEST_CASE("variable-length pairs admit repetition and respect constraints") {
  ucit::SequenceModel m;
  m.events = {"a", "b", "c"};
  m.variant = ucit::SequenceVariant::VariableLength;
  m.max_len = 3;
  m.system_constraint = !ucit::ModelExpr::atom(ucit::ModelAtom{ucit::BeforeAtom{"c", "a"}});
  const auto enc = ucit::encode_seq_space(m);
  const auto rs = ucit::enumerate_seq(enc, 2);
  CHECK(rs.candidates == 9);  // ordered pairs with repetition
  CHECK(rs.invalid == 1);     // "c before a" contradicts the constraint
  REQUIRE(rs.valid() == 8);
  for (const auto& r : rs.requirements) CHECK(r.descriptor != "c before a");

  std::vector<std::string> cands;
  for (const auto& x : m.events)
    for (const auto& y : m.events)
      cands.push_back(x + " before " + y);
  CHECK(descriptors(rs) == coverable(cands, oracle::all_valid_seqs(m)));
}

TEST_CASE("hybrid enumeration splits into value tuples then state pairs") {
  const auto m = small_machine();
  const auto enc = ucit::encode_fsm_space(m);
  const auto rs = ucit::enumerate_fsm(enc, 2, 2);
  CHECK(rs.candidates == 24 + 30);  // C(4,2) x 4 values, 6 x 5 state pairs
  CHECK(rs.invalid == 23);          // 6 impossible tuples + 17 impossible pairs
  REQUIRE(rs.valid() == 31);        // 18 + 13

  // value tuples precede orderings; ids stay dense
  check_dense_ids(rs);
  const auto first_ordering = std::find_if(
      rs.requirements.begin(), rs.requirements.end(),
      [](const ucit::Requirement& r) { return r.kind == ucit::RequirementKind::Ordering; });
  CHECK(first_ordering - rs.requirements.begin() == 18);
  CHECK(std::all_of(first_ordering, rs.requirements.end(), [](const ucit::Requirement& r) {
    return r.kind == ucit::RequirementKind::Ordering;
  }));

  // factor pairs on branch-exclusive states are impossible
  for (const auto& r : rs.requirements) {
    const bool has_p1 = r.descriptor.find("p1=") != std::string::npos;
    const bool has_p4 = r.descriptor.find("p4=") != std::string::npos;
    CHECK_FALSE((has_p1 && has_p4));
  }

  // oracle agreement, value half and ordering half
  const auto paths = oracle::all_valid_paths(m);
  std::vector<std::string> cands;
  {
    ucit::CoveringArrayModel shadow;  // same factors, for candidate listing
    shadow.factors = m.factors;
    cands = ca_candidate_descriptors(shadow, 2);
  }
  for (const auto& s1 : std::vector<std::string>{"S0", "S1", "S2", "S3", "S4", "S5"})
    for (const auto& s2 : std::vector<std::string>{"S0", "S1", "S2", "S3", "S4", "S5"})
      if (s1 != s2) cands.push_back(s1 + " before " + s2);
  CHECK(descriptors(rs) == coverable(cands, paths));
}

TEST_CASE("synthetic endpoint states join the pair pool only on request") {
  const auto enc = ucit::encode_fsm_space(small_machine());
  const auto rs_default = ucit::enumerate_fsm(enc, 2, 2, false);
  const auto rs_synthetic = ucit::enumerate_fsm(enc, 2, 2, true);
  CHECK(rs_synthetic.candidates == 24 + 56);  // pairs now over all 8 states
  CHECK(rs_synthetic.valid() == 18 + 26);     // i->everything, S0..S5->f join in
  for (const auto& r : rs_default.requirements) {
    CHECK(r.descriptor.find("i before") == std::string::npos);
    CHECK(r.descriptor.find("before f") == std::string::npos);
  }
  const auto synth = descriptors(rs_synthetic);
  CHECK(std::find(synth.begin(), synth.end(), "i before f") != synth.end());
  CHECK(std::find(synth.begin(), synth.end(), "S0 before f") != synth.end());
}

TEST_CASE("out-of-range strengths are rejected") {
  const auto ca = ucit::encode_ca_space(booleans(3));
  CHECK_THROWS_AS(ucit::enumerate_ca(ca, 0), ucit::Error);
  CHECK_THROWS_AS(ucit::enumerate_ca(ca, 4), ucit::Error);

  ucit::SequenceModel sm;
  sm.events = {"a", "b", "c"};
  const auto seq = ucit::encode_seq_space(sm);
  CHECK_THROWS_AS(ucit::enumerate_seq(seq, 1), ucit::Error);
  CHECK_THROWS_AS(ucit::enumerate_seq(seq, 4), ucit::Error);

  const auto fsm = ucit::encode_fsm_space(small_machine());
  CHECK_THROWS_AS(ucit::enumerate_fsm(fsm, 0, 2), ucit::Error);
  CHECK_THROWS_AS(ucit::enumerate_fsm(fsm, 5, 2), ucit::Error);
  CHECK_THROWS_AS(ucit::enumerate_fsm(fsm, 2, 1), ucit::Error);
  CHECK_THROWS_AS(ucit::enumerate_fsm(fsm, 2, 7), ucit::Error);
}

TEST_CASE("criteria only apply to their own space kind") {
  const auto ca = ucit::encode_ca_space(booleans(2));
  CHECK_THROWS_AS(ucit::enumerate(ucit::SeqStrength{2}, ca), ucit::Error);
  CHECK_THROWS_AS(ucit::enumerate(ucit::FsmHybrid{2, 2}, ca), ucit::Error);

  ucit::SequenceModel sm;
  sm.events = {"a", "b"};
  const auto seq = ucit::encode_seq_space(sm);
  CHECK_THROWS_AS(ucit::enumerate(ucit::CaStrength{2}, seq), ucit::Error);
}

TEST_CASE("composite criteria merge parts, dropping repeated descriptors") {
  const auto enc = ucit::encode_ca_space(booleans(3));

  const ucit::Criterion twice = ucit::Composite{{ucit::CaStrength{2}, ucit::CaStrength{2}}};
  const auto rs_twice = ucit::enumerate(twice, enc);
  CHECK(rs_twice.candidates == 24);
  CHECK(rs_twice.duplicates == 12);
  CHECK(rs_twice.valid() == 12);
  check_dense_ids(rs_twice);

  const ucit::Criterion mixed = ucit::Composite{{ucit::CaStrength{1}, ucit::CaStrength{2}}};
  const auto rs_mixed = ucit::enumerate(mixed, enc);
  CHECK(rs_mixed.valid() == 18);  // 6 singles then 12 pairs
  CHECK(rs_mixed.requirements[0].descriptor == "f0=T");
  CHECK(rs_mixed.requirements[6].descriptor == "f0=T, f1=T");
}

TEST_CASE("composite hybrid parts keep value tuples ahead of orderings") {
  const auto enc = ucit::encode_fsm_space(small_machine());
  const ucit::Criterion c = ucit::Composite{{ucit::FsmHybrid{1, 2}, ucit::FsmHybrid{2, 2}}};
  const auto rs = ucit::enumerate(c, enc);
  // part one: 8 single-value tuples + 13 pairs; part two adds 18 pair
  // tuples, and its 13 ordering requirements repeat part one's.
  CHECK(rs.valid() == 8 + 18 + 13);
  CHECK(rs.duplicates == 13);
  check_dense_ids(rs);
  bool seen_ordering = false;
  for (const auto& r : rs.requirements) {
    if (r.kind == ucit::RequirementKind::Ordering) seen_ordering = true;
    else CHECK_FALSE(seen_ordering);
  }
}

TEST_CASE("the job count never changes the result") {
  const auto check_jobs = [](const ucit::SpaceEncoding& enc, const ucit::Criterion& c) {
    const auto one = ucit::enumerate(c, enc, 1);
    for (const int jobs : {2, 4, 7}) {
      const auto many = ucit::enumerate(c, enc, jobs);
      CHECK(many.candidates == one.candidates);
      CHECK(many.invalid == one.invalid);
      CHECK(many.duplicates == one.duplicates);
      REQUIRE(descriptors(many) == descriptors(one));
    }
  };
  check_jobs(ucit::encode_ca_space(grid(4, 3)), ucit::CaStrength{2});
  check_jobs(ucit::encode_fsm_space(small_machine()), ucit::FsmHybrid{2, 2});

  ucit::SequenceModel sm;
  sm.events = {"a", "b", "c", "d"};
  check_jobs(ucit::encode_seq_space(sm), ucit::SeqStrength{2});
}

TEST_CASE("the incremental checker agrees with one-shot solving") {
  auto m = booleans(3);
  m.system_constraint = !(value_atom("f0", "T") && value_atom("f1", "T"));
  const auto enc = ucit::encode_ca_space(m);
  ucit::SatChecker checker(enc);
  const auto cands = ca_candidate_descriptors(m, 2);
  int mismatches = 0;
  for (int round = 0; round < 2; ++round) {  // repeat: the checker must stay reusable
    for (int f1 = 0; f1 < 3; ++f1)
      for (int f2 = f1 + 1; f2 < 3; ++f2)
        for (const char* v1 : {"T", "F"})
          for (const char* v2 : {"T", "F"}) {
            const std::vector<std::pair<std::string, std::string>> pair = {
                {m.factors[static_cast<std::size_t>(f1)].name, v1},
                {m.factors[static_cast<std::size_t>(f2)].name, v2}};
            const auto expr = ucit::encode_value_tuple(enc, pair);
            const bool incremental = checker.satisfiable(checker.assumptions_for(expr));
            const bool oneshot = testutil::sat_with_space(enc, expr);
            if (incremental != oneshot) ++mismatches;
          }
  }
  CHECK(mismatches == 0);
  CHECK(cands.size() == 12);

  // a non-literal expression goes through a Tseitin selector
  const std::vector<std::pair<std::string, std::string>> left = {{"f0", "T"}};
  const std::vector<std::pair<std::string, std::string>> right = {{"f1", "T"}};
  const auto disj = ucit::BoolExpr::disjunction(
      {ucit::encode_value_tuple(enc, left), ucit::encode_value_tuple(enc, right)});
  const auto assumptions = checker.assumptions_for(disj);
  REQUIRE(assumptions.size() == 1);
  CHECK(assumptions[0].var >= enc.cnf.var_count);
  CHECK(checker.satisfiable(assumptions));
}
