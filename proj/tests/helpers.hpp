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

// Shared helpers for the test suite: projected model enumeration over a
// space encoding, canonical string keys for comparing test cases as sets,
// and satisfiability of a requirement against an encoding.

#ifndef UCIT_TESTS_HELPERS_HPP
#define UCIT_TESTS_HELPERS_HPP

#include <algorithm>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ucit/cnf.hpp"
#include "ucit/solver.hpp"
#include "ucit/spaces.hpp"

namespace testutil {

/// All satisfying assignments of enc.cnf projected onto the semantic atoms,
/// found by repeated solving with blocking clauses. Order unspecified.
inline std::vector<ucit::Assignment> all_space_assignments(const ucit::SpaceEncoding& enc) {
  ucit::Solver solver;
  solver.ensure_var_count(enc.cnf.var_count);
  solver.add_cnf(enc.cnf);
  const ucit::VarId n = enc.atoms.size();
  std::vector<ucit::Assignment> found;
  while (auto model = solver.solve()) {
    ucit::Assignment proj(static_cast<std::size_t>(n));
    std::vector<ucit::Literal> block;
    for (ucit::VarId v = 0; v < n; ++v) {
      const bool val = model->value(v);
      proj.set(v, val);
      block.push_back(val ? ucit::neg(v) : ucit::pos(v));
    }
    found.push_back(std::move(proj));
    solver.add_clause(block);
  }
  return found;
}

/// Decoded form of all_space_assignments.
inline std::vector<ucit::TestCase> all_space_tests(const ucit::SpaceEncoding& enc) {
  std::vector<ucit::TestCase> tests;
  for (const auto& a : all_space_assignments(enc)) tests.push_back(ucit::decode_test(enc, a));
  return tests;
}

/// Canonical string key so test-case collections compare as multisets.
inline std::string key_of(const ucit::TestCase& tc) {
  std::string key;
  if (const auto* row = std::get_if<ucit::RowTest>(&tc)) {
    key = "row";
    for (const auto& [f, v] : row->values) key += "|" + f + "=" + v;
  } else if (const auto* seq = std::get_if<ucit::EventSeqTest>(&tc)) {
    key = "seq";
    for (const auto& e : seq->events) key += "|" + e;
  } else {
    const auto& path = std::get<ucit::FsmPathTest>(tc);
    key = "path|";
    for (const auto& s : path.states) key += s + ",";
    key += "|";
    for (const auto& t : path.transitions) key += t + ",";
    key += "|";
    for (const auto& [f, v] : path.values) key += f + "=" + v + ",";
  }
  return key;
}

template <typename Tests>
std::vector<std::string> sorted_keys(const Tests& tests) {
  std::vector<std::string> keys;
  for (const auto& t : tests) keys.push_back(key_of(ucit::TestCase(t)));
  std::sort(keys.begin(), keys.end());
  return keys;
}

/// Whether `expr` is satisfiable together with the encoding's M.
inline bool sat_with_space(const ucit::SpaceEncoding& enc, const ucit::BoolExpr& expr) {
  ucit::Cnf cnf = enc.cnf;
  ucit::VarAllocator fresh(cnf.var_count);
  const ucit::Literal root = ucit::tseitin_literal(expr, fresh, cnf);
  cnf.var_count = fresh.count();
  cnf.clauses.push_back({root});
  return ucit::solve(cnf).has_value();
}

}  // namespace testutil

#endif  // UCIT_TESTS_HELPERS_HPP
