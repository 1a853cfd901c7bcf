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

#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "oracles/oracles.hpp"
#include "ucit/dsl.hpp"
#include "ucit/spaces.hpp"

namespace {

std::string models_dir() { return UCIT_MODELS_DIR; }

// Asserts that `text` is rejected at the given position with a message
// containing `needle`. column -1 skips the column check.
void expect_error(const std::string& text, const std::string& needle, int line, int column = -1) {
  try {
    ucit::parse_model(text);
    FAIL_CHECK("expected ParseError containing '" << needle << "', but parsing succeeded");
  } catch (const ucit::ParseError& e) {
    INFO("message: ", e.what());
    CHECK(std::string(e.what()).find(needle) != std::string::npos);
    CHECK(e.line() == line);
    if (column >= 0) CHECK(e.column() == column);
  }
}

const char* const kConstrainedCa =
    "kind: ca\n"
    "factor: f0 = T, F\n"
    "factor: f1 = T, F\n"
    "factor: f2 = T, F\n"
    "constraint: !(f0=T && f1=T)\n"
    "criterion: strength 2\n";

}  // namespace

TEST_CASE("a covering-array document parses into the expected model") {
  const auto doc = ucit::parse_model(kConstrainedCa);
  const auto& m = std::get<ucit::CoveringArrayModel>(doc.model);
  REQUIRE(m.factors.size() == 3);
  CHECK(m.factors[0].name == "f0");
  CHECK(m.factors[0].domain == std::vector<std::string>{"T", "F"});
  CHECK(m.strength == 2);
  CHECK(ucit::print_expr(m.system_constraint) == "!(f0=T && f1=T)");
  REQUIRE(doc.criterion.has_value());
  CHECK(*doc.criterion == ucit::Criterion{ucit::CaStrength{2}});
}

TEST_CASE("every bundled model parses, prints, and reparses to the same document") {
  for (const char* name : {"demo_ca.ucit", "constrained_ca.ucit", "ca4x3.ucit",
                           "demo_sequence.ucit", "guarded_fsm.ucit"}) {
    INFO("model: ", name);
    const auto doc = ucit::load_model(models_dir() + "/" + name);
    const std::string printed = ucit::print_model(doc);
    const auto reparsed = ucit::parse_model(printed);
    CHECK(reparsed == doc);
    CHECK(ucit::print_model(reparsed) == printed);  // printing is a fixed point
  }
}

TEST_CASE("the bundled fsm document resolves guards, bounds, and criterion") {
  const auto doc = ucit::load_model(models_dir() + "/guarded_fsm.ucit");
  const auto& m = std::get<ucit::FsmModel>(doc.model);
  CHECK(m.states.size() == 8);
  CHECK(m.initial == "i");
  CHECK(m.final_state == "f");
  CHECK(m.path_bound == 9);
  REQUIRE(m.transitions.size() == 11);
  CHECK(m.transitions[3].label == "T3");
  CHECK(ucit::print_expr(m.transitions[3].guard) == "p1=T");
  CHECK(ucit::print_expr(m.transitions[6].guard) == "p1=F");
  CHECK(m.factors.size() == 16);
  CHECK(m.factor_state[0] == "S0");
  CHECK(m.factor_state[15] == "S5");
  REQUIRE(doc.criterion.has_value());
  CHECK(*doc.criterion == ucit::Criterion{ucit::FsmHybrid{3, 2}});
}

TEST_CASE("compile produces the same encoding as the direct encoder") {
  const auto doc = ucit::parse_model(kConstrainedCa);
  const auto via_doc = ucit::compile(doc);
  const auto direct = ucit::encode_space(doc.model);
  CHECK(via_doc.kind == direct.kind);
  CHECK(via_doc.atoms.size() == direct.atoms.size());
  CHECK(via_doc.cnf.var_count == direct.cnf.var_count);
  CHECK(via_doc.cnf.clauses == direct.cnf.clauses);
}

TEST_CASE("criterion_of falls back to the model's strength, except for fsm") {
  const auto ca = ucit::parse_model("kind: ca\nfactor: a = x, y\nfactor: b = x, y\n");
  CHECK(ucit::criterion_of(ca) == ucit::Criterion{ucit::CaStrength{2}});

  const auto seq = ucit::parse_model("kind: sequence\nevents: a, b, c\n");
  CHECK(ucit::criterion_of(seq) == ucit::Criterion{ucit::SeqStrength{2}});

  const auto fsm = ucit::parse_model(
      "kind: fsm\nstates: i, m, f\ninitial: i\nfinal: f\n"
      "transition: t0: i -> m\ntransition: t1: m -> f\n");
  CHECK_FALSE(fsm.criterion.has_value());
  CHECK_THROWS_AS(ucit::criterion_of(fsm), ucit::Error);
}

TEST_CASE("composite criteria parse part by part and print back") {
  const auto doc =
      ucit::parse_model("kind: ca\nfactor: a = x, y\nfactor: b = x, y\nfactor: c = x, y\n"
                        "criterion: strength 1, strength 2\n");
  REQUIRE(doc.criterion.has_value());
  const auto& composite = std::get<ucit::Composite>(*doc.criterion);
  REQUIRE(composite.parts.size() == 2);
  CHECK(composite.parts[0] == ucit::SimpleCriterion{ucit::CaStrength{1}});
  CHECK(composite.parts[1] == ucit::SimpleCriterion{ucit::CaStrength{2}});
  CHECK(ucit::to_string(*doc.criterion) == "strength 1, strength 2");

  const auto hybrid = ucit::parse_model(
      "kind: fsm\nstates: i, m, n, f\ninitial: i\nfinal: f\n"
      "transition: t0: i -> m\ntransition: t1: m -> n\ntransition: t2: n -> f\n"
      "criterion: hybrid value=1 seq=2 synthetic=yes\n");
  CHECK(*hybrid.criterion == ucit::Criterion{ucit::FsmHybrid{1, 2, true}});
  CHECK(ucit::to_string(*hybrid.criterion) == "hybrid value=1 seq=2 synthetic=yes");
}

TEST_CASE("expression printing uses minimal parentheses") {
  const auto doc = ucit::parse_model(
      "kind: ca\nfactor: a = x, y\nfactor: b = x, y\nfactor: c = x, y\n"
      "constraint: a=x -> b=y -> c=x || a=y && !(b=x <-> c=y)\n");
  const auto& m = std::get<ucit::CoveringArrayModel>(doc.model);
  const std::string printed = ucit::print_expr(m.system_constraint);
  CHECK(printed == "a=x -> b=y -> c=x || a=y && !(b=x <-> c=y)");
  // and the printed form parses back to the same tree
  const auto again = ucit::parse_model(
      "kind: ca\nfactor: a = x, y\nfactor: b = x, y\nfactor: c = x, y\nconstraint: " + printed +
      "\n");
  CHECK(again == doc);
}

TEST_CASE("syntax errors carry exact positions") {
  // unknown factor: value starts after 'constraint:', f9 sits at column 13
  expect_error("kind: ca\nfactor: f0 = T, F\nconstraint: f9=T\n", "unknown factor 'f9'", 3, 13);
  expect_error("kind: ca\nfactor: f0 = T, F\nconstraint: f0=X\n",
               "'X' is not a value of factor 'f0'", 3, 16);
  expect_error("kind: ca\nfactor: f0 = T, F\nconstraint: f0=T %\n", "unexpected character '%'",
               3, 18);
  expect_error("kind: ca\nfactor: f0 = T, F\nconstraint: (f0=T\n", "expected ')'", 3, 18);
  expect_error("kind: sequence\nevents: a, b, c\nconstraint: before(a, a)\n",
               "repeats an event", 3, 20);
  expect_error("kind: ca\nfactor: f0 = T, F\njunk line\n", "expected 'key: value'", 3, 1);
}

TEST_CASE("structural errors are rejected with their line") {
  expect_error("factor: f0 = T, F\n", "missing 'kind:' line", 1);
  expect_error("kind: lattice\n", "kind must be 'ca', 'sequence', or 'fsm'", 1);
  expect_error("kind: ca\nkind: ca\nfactor: f0 = T, F\n", "duplicate 'kind:' line", 2);
  expect_error("kind: ca\nfactor: f0 = T, F\ncriterion: strength 2\ncriterion: strength 1\n",
               "duplicate 'criterion:' line", 4);
  expect_error("kind: ca\ncriterion: strength 2\n", "needs at least one 'factor:' line", 1);
  expect_error("kind: ca\nfactor: f0 = T, F\nevents: a, b\n",
               "key 'events:' is not valid in a ca model", 3);
  expect_error("kind: fsm\nstates: i, f\ninitial: i\nfinal: f\ntransition: t: i -> f\n"
               "constraint: x=y\n",
               "key 'constraint:' is not valid in a fsm model", 6);
  expect_error("kind: sequence\nevents: a, b\nbind: a = b\n",
               "key 'bind:' is not valid in a sequence model", 3);
}

TEST_CASE("declaration errors name the offending identifier") {
  expect_error("kind: ca\nfactor: f0 = T\n", "needs at least two values", 2);
  expect_error("kind: ca\nfactor: f0 = T, T\n", "value 'T' repeated in factor 'f0'", 2);
  expect_error("kind: ca\nfactor: f0 = T, F\nfactor: f0 = T, F\n",
               "factor 'f0' already declared", 3);
  expect_error("kind: sequence\nevents: a, b, a\n", "event 'a' already declared", 2);
  expect_error("kind: sequence\nevents: a, b\nvariant: ring\n",
               "variant must be 'permutation' or 'variable-length N'", 3);
  expect_error("kind: sequence\nevents: a, b\nconstraint: before(a, z)\n", "unknown event 'z'",
               3);
}

TEST_CASE("fsm declaration errors name the offending identifier") {
  const std::string head = "kind: fsm\nstates: i, m, f\ninitial: i\nfinal: f\n";
  expect_error(head + "transition: t: i -> q\n", "unknown state 'q'", 5);
  expect_error(head + "transition: t: i -> m\ntransition: t: m -> f\n",
               "transition 't' already declared", 6);
  expect_error(head + "transition: t: i -> m\ntransition: u: m -> f\nbind: q = p\n",
               "unknown state 'q'", 7);
  expect_error(head + "transition: t: i -> m\ntransition: u: m -> f\n"
                      "factor: p = T, F\nbind: m = p\nbind: m = p\n",
               "factor 'p' already bound", 9);
  expect_error(head + "transition: t: i -> m\ntransition: u: m -> f\nfactor: p = T, F\n",
               "factor 'p' is not bound to any state", 1);
  expect_error(head + "transition: t: i -> m when p=T\n", "expected 'guard:' or end of line", 5);
  expect_error("kind: fsm\ninitial: i\nfinal: f\n", "needs a 'states:' line", 1);
  expect_error("kind: fsm\nstates: i, f\nfinal: f\ntransition: t: i -> f\n",
               "needs an 'initial:' line", 1);
}

TEST_CASE("criteria must match the model kind") {
  expect_error("kind: sequence\nevents: a, b\ncriterion: strength 2\n",
               "'strength' does not apply to a sequence model", 3);
  expect_error("kind: ca\nfactor: f0 = T, F\ncriterion: hybrid value=1 seq=2\n",
               "'hybrid' does not apply to a ca model", 3);
  expect_error("kind: ca\nfactor: f0 = T, F\ncriterion: strength two\n",
               "expected an integer, found 'two'", 3);
  expect_error("kind: ca\nfactor: f0 = T, F\ncriterion: coverage 2\n",
               "unknown criterion 'coverage'", 3);
  const std::string fsm_head =
      "kind: fsm\nstates: i, m, f\ninitial: i\nfinal: f\n"
      "transition: t0: i -> m\ntransition: t1: m -> f\n";
  expect_error(fsm_head + "criterion: hybrid value=1\n", "hybrid criterion needs value=N and seq=N",
               7);
  expect_error(fsm_head + "criterion: hybrid value=1 seq=2 synthetic=maybe\n",
               "synthetic= takes 'yes' or 'no'", 7);
  expect_error(fsm_head + "criterion: hybrid value=1 seq=2 depth=3\n",
               "unknown hybrid option 'depth=3'", 7);
}

TEST_CASE("model-level validation failures surface as parse errors") {
  // structurally well-formed text, semantically broken machine
  expect_error("kind: fsm\nstates: i, f\ninitial: i\nfinal: f\ntransition: t: f -> f\n",
               "final state", 1);
  expect_error("kind: sequence\nevents: a, b\nvariant: variable-length 1\n", "max_len", 1);
}

TEST_CASE("load_model reports missing files as plain errors") {
  CHECK_THROWS_WITH_AS(ucit::load_model("/nonexistent/path.ucit"),
                       "cannot open model file '/nonexistent/path.ucit'", ucit::Error);
}

TEST_CASE("random models survive a print/parse round trip") {
  std::mt19937_64 rng(303);
  int fsm_roundtrips = 0;
  for (int round = 0; round < 60; ++round) {
    ucit::ModelDocument doc;
    doc.model = oracle::random_model(rng);
    fsm_roundtrips += std::holds_alternative<ucit::FsmModel>(doc.model) ? 1 : 0;
    const std::string printed = ucit::print_model(doc);
    CAPTURE(printed);
    const auto reparsed = ucit::parse_model(printed);
    CHECK(reparsed == doc);
  }
  CHECK(fsm_roundtrips > 5);  // the sample exercises every space kind
}

TEST_CASE("mutated documents either parse or raise ParseError, never crash") {
  const std::string base = kConstrainedCa;
  const std::string charset = "abcf019TF=,:!&|()<->#\n \t";
  std::mt19937_64 rng(404);
  int rejected = 0;
  for (int round = 0; round < 400; ++round) {
    std::string text = base;
    const int edits = 1 + static_cast<int>(rng() % 4);
    for (int e = 0; e < edits; ++e) {
      const auto pos = rng() % (text.size() + 1);
      switch (rng() % 3) {
        case 0:  // insert
          text.insert(text.begin() + static_cast<std::ptrdiff_t>(pos),
                      charset[rng() % charset.size()]);
          break;
        case 1:  // delete
          if (!text.empty()) text.erase(rng() % text.size(), 1);
          break;
        default:  // replace
          if (!text.empty()) text[rng() % text.size()] = charset[rng() % charset.size()];
          break;
      }
    }
    try {
      const auto doc = ucit::parse_model(text);
      (void)doc;
    } catch (const ucit::ParseError&) {
      ++rejected;
    }
  }
  CHECK(rejected > 100);  // the mutations actually hit the parser
}
