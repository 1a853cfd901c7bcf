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

#include "ucit/enumerate.hpp"

#include <algorithm>
#include <exception>
#include <sstream>
#include <thread>
#include <unordered_set>

namespace ucit {

namespace {

struct Candidate {
  BoolExpr expr;
  std::string descriptor;
  RequirementKind kind = RequirementKind::ValueTuple;
};

// expr as a conjunction of literals, or nullopt if it has any other shape.
std::optional<std::vector<Literal>> literal_conjunction(const BoolExpr& e) {
  const auto as_literal = [](const BoolExpr& x) -> std::optional<Literal> {
    if (x.op() == ExprOp::Atom) return pos(x.atom_value());
    if (x.op() == ExprOp::Not && x.child(0).op() == ExprOp::Atom)
      return neg(x.child(0).atom_value());
    return std::nullopt;
  };
  std::vector<Literal> lits;
  if (auto l = as_literal(e)) {
    lits.push_back(*l);
    return lits;
  }
  if (e.op() != ExprOp::And) return std::nullopt;
  for (const auto& c : e.children()) {
    auto l = as_literal(c);
    if (!l) return std::nullopt;
    lits.push_back(*l);
  }
  return lits;
}

// Runs the r ∧ M filter over `candidates`, skipping indices marked false in
// `needs_check`. Workers get private solvers; verdicts do not depend on the
// chunking, so the output is independent of the job count.
std::vector<char> filter_candidates(const SpaceEncoding& enc,
                                    const std::vector<Candidate>& candidates,
                                    const std::vector<char>& needs_check, int jobs) {
  std::vector<char> verdict(candidates.size(), 0);
  const auto run_range = [&](std::size_t begin, std::size_t end) {
    SatChecker checker(enc);
    for (std::size_t i = begin; i < end; ++i) {
      if (!needs_check[i]) continue;
      verdict[i] = checker.satisfiable(checker.assumptions_for(candidates[i].expr)) ? 1 : 0;
    }
  };

  if (jobs <= 1 || candidates.size() < 2) {
    run_range(0, candidates.size());
    return verdict;
  }

  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(jobs), candidates.size());
  const std::size_t chunk = (candidates.size() + workers - 1) / workers;
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(candidates.size(), begin + chunk);
    threads.emplace_back([&, w, begin, end] {
      try {
        run_range(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);
  return verdict;
}

RequirementSet assemble(const SpaceEncoding& enc, std::vector<Candidate> candidates, int jobs) {
  RequirementSet out;
  out.candidates = static_cast<std::int64_t>(candidates.size());

  // Value tuples come before ordering requirements regardless of the
  // criterion part order; duplicates are resolved before the solver runs.
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) {
                     return static_cast<int>(a.kind) < static_cast<int>(b.kind);
                   });
  std::vector<char> needs_check(candidates.size(), 1);
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (!seen.insert(candidates[i].descriptor).second) needs_check[i] = 0;

  const std::vector<char> verdict = filter_candidates(enc, candidates, needs_check, jobs);

  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!needs_check[i]) {
      ++out.duplicates;
      continue;
    }
    if (!verdict[i]) {
      ++out.invalid;
      continue;
    }
    Requirement r;
    r.id = static_cast<int>(out.requirements.size());
    r.expr = std::move(candidates[i].expr);
    r.descriptor = std::move(candidates[i].descriptor);
    r.kind = candidates[i].kind;
    out.requirements.push_back(std::move(r));
  }
  return out;
}

// Lexicographic t-subsets of [0, n).
template <typename F>
void for_each_subset(int n, int t, F&& fn) {
  std::vector<int> pick(static_cast<std::size_t>(t));
  const auto recurse = [&](const auto& self, int next, int start) -> void {
    if (next == t) {
      fn(std::span<const int>(pick));
      return;
    }
    for (int i = start; i <= n - (t - next); ++i) {
      pick[static_cast<std::size_t>(next)] = i;
      self(self, next + 1, i + 1);
    }
  };
  recurse(recurse, 0, 0);
}

// Value-tuple candidates over the chosen factors, leftmost varying slowest.
void append_value_tuples(const SpaceEncoding& enc, const std::vector<Factor>& factors,
                         std::span<const int> chosen, std::vector<Candidate>& out) {
  std::vector<int> value(chosen.size(), 0);
  for (;;) {
    std::vector<std::pair<std::string, std::string>> pairs;
    pairs.reserve(chosen.size());
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      const Factor& f = factors[static_cast<std::size_t>(chosen[i])];
      pairs.emplace_back(f.name, f.domain[static_cast<std::size_t>(value[i])]);
    }
    out.push_back({encode_value_tuple(enc, pairs), tuple_descriptor(pairs),
                   RequirementKind::ValueTuple});

    int i = static_cast<int>(chosen.size()) - 1;
    while (i >= 0) {
      const auto& domain = factors[static_cast<std::size_t>(chosen[static_cast<std::size_t>(i)])].domain;
      if (++value[static_cast<std::size_t>(i)] < static_cast<int>(domain.size())) break;
      value[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) return;
  }
}

std::vector<Candidate> ca_candidates(const SpaceEncoding& enc, int t) {
  const CoveringArrayModel& m = enc.ca();
  if (t < 1 || t > static_cast<int>(m.factors.size()))
    throw Error("strength " + std::to_string(t) + " out of range for " +
                std::to_string(m.factors.size()) + " factors");
  std::vector<Candidate> out;
  for_each_subset(static_cast<int>(m.factors.size()), t,
                  [&](std::span<const int> chosen) { append_value_tuples(enc, m.factors, chosen, out); });
  return out;
}

// Lexicographic t-tuples of events; `distinct` switches between
// permutations and tuples with repetition.
std::vector<Candidate> seq_candidates(const SpaceEncoding& enc, int t) {
  const SequenceModel& m = enc.seq();
  const int n = static_cast<int>(m.events.size());
  const int limit = m.variant == SequenceVariant::Permutation ? n : m.max_len;
  if (t < 2 || t > limit)
    throw Error("sequence strength " + std::to_string(t) + " out of range");
  const bool distinct = m.variant == SequenceVariant::Permutation;

  std::vector<Candidate> out;
  std::vector<int> pick;
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  const auto recurse = [&](const auto& self) -> void {
    if (static_cast<int>(pick.size()) == t) {
      std::vector<std::string> events;
      events.reserve(pick.size());
      for (int e : pick) events.push_back(m.events[static_cast<std::size_t>(e)]);
      out.push_back({encode_order_requirement(enc, events), ordering_descriptor(events),
                     RequirementKind::Ordering});
      return;
    }
    for (int e = 0; e < n; ++e) {
      if (distinct && used[static_cast<std::size_t>(e)]) continue;
      used[static_cast<std::size_t>(e)] = 1;
      pick.push_back(e);
      self(self);
      pick.pop_back();
      used[static_cast<std::size_t>(e)] = 0;
    }
  };
  recurse(recurse);
  return out;
}

// reach[a][b]: b reachable from a via zero or more transitions, guards
// ignored. Used only to pre-filter; the solver stays authoritative.
std::vector<std::vector<char>> reachability(const SpaceEncoding& enc, const FsmModel& m) {
  const std::size_t n = m.states.size();
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (std::size_t s = 0; s < n; ++s) reach[s][s] = 1;
  for (const FsmTransition& t : m.transitions)
    reach[static_cast<std::size_t>(enc.state_index.at(t.from))]
         [static_cast<std::size_t>(enc.state_index.at(t.to))] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = 1;
  return reach;
}

void fsm_candidates(const SpaceEncoding& enc, int value_t, int seq_t, bool include_synthetic,
                    std::vector<Candidate>& out, std::vector<char>& prefiltered) {
  const FsmModel& m = enc.fsm();
  if (value_t < 1 || (value_t > static_cast<int>(m.factors.size()) && !m.factors.empty()))
    throw Error("hybrid value strength " + std::to_string(value_t) + " out of range");

  std::vector<int> eligible;
  for (std::size_t s = 0; s < m.states.size(); ++s) {
    if (!include_synthetic && (m.states[s] == m.initial || m.states[s] == m.final_state))
      continue;
    eligible.push_back(static_cast<int>(s));
  }
  if (seq_t < 2 || seq_t > static_cast<int>(eligible.size()))
    throw Error("hybrid sequence strength " + std::to_string(seq_t) + " out of range");

  const auto reach = reachability(enc, m);
  const auto co_occur = [&](int s1, int s2) {
    return reach[static_cast<std::size_t>(s1)][static_cast<std::size_t>(s2)] ||
           reach[static_cast<std::size_t>(s2)][static_cast<std::size_t>(s1)];
  };

  // (a) value tuples, restricted to factor sets whose defining states can
  // pairwise appear on one path. Tuples dropped here are still counted as
  // candidates and rejected without a solver call.
  for_each_subset(static_cast<int>(m.factors.size()), value_t, [&](std::span<const int> chosen) {
    bool compatible = true;
    for (std::size_t i = 0; i < chosen.size() && compatible; ++i)
      for (std::size_t j = i + 1; j < chosen.size() && compatible; ++j) {
        const int s1 = enc.state_index.at(m.factor_state[static_cast<std::size_t>(chosen[i])]);
        const int s2 = enc.state_index.at(m.factor_state[static_cast<std::size_t>(chosen[j])]);
        if (!co_occur(s1, s2)) compatible = false;
      }
    const std::size_t begin = out.size();
    append_value_tuples(enc, m.factors, chosen, out);
    prefiltered.resize(out.size(), 0);
    if (!compatible)
      for (std::size_t i = begin; i < out.size(); ++i) prefiltered[i] = 1;
  });

  // (b) ordered state sequences over distinct eligible states.
  std::vector<int> pick;
  std::vector<char> used(m.states.size(), 0);
  const auto recurse = [&](const auto& self) -> void {
    if (static_cast<int>(pick.size()) == seq_t) {
      std::vector<std::string> states;
      states.reserve(pick.size());
      for (int s : pick) states.push_back(m.states[static_cast<std::size_t>(s)]);
      out.push_back({encode_state_sequence_requirement(enc, states),
                     ordering_descriptor(states), RequirementKind::Ordering});
      return;
    }
    for (int s : eligible) {
      if (used[static_cast<std::size_t>(s)]) continue;
      used[static_cast<std::size_t>(s)] = 1;
      pick.push_back(s);
      self(self);
      pick.pop_back();
      used[static_cast<std::size_t>(s)] = 0;
    }
  };
  recurse(recurse);
  prefiltered.resize(out.size(), 0);
}

void require_kind(const SpaceEncoding& enc, SpaceKind kind, const char* criterion) {
  if (enc.kind != kind)
    throw Error(std::string(criterion) + " criterion does not apply to a " +
                to_string(enc.kind) + " space");
}

}  // namespace

SatChecker::SatChecker(const SpaceEncoding& enc)
    : solver_(enc.cnf), fresh_(enc.cnf.var_count) {}

std::vector<Literal> SatChecker::assumptions_for(const BoolExpr& expr) {
  if (auto lits = literal_conjunction(expr)) return *lits;
  Cnf defs;
  const Literal selector = tseitin_literal(expr, fresh_, defs);
  solver_.add_cnf(defs);
  return {selector};
}

bool SatChecker::satisfiable(std::span<const Literal> assumptions) {
  return solver_.solve(assumptions).has_value();
}

std::optional<Assignment> SatChecker::solve(std::span<const Literal> assumptions) {
  return solver_.solve(assumptions);
}

RequirementSet enumerate_ca(const SpaceEncoding& enc, int t, int jobs) {
  require_kind(enc, SpaceKind::CoveringArray, "strength");
  return assemble(enc, ca_candidates(enc, t), jobs);
}

RequirementSet enumerate_seq(const SpaceEncoding& enc, int t, int jobs) {
  require_kind(enc, SpaceKind::Sequence, "seq-strength");
  return assemble(enc, seq_candidates(enc, t), jobs);
}

RequirementSet enumerate_fsm(const SpaceEncoding& enc, int value_t, int seq_t,
                             bool include_synthetic_states, int jobs) {
  require_kind(enc, SpaceKind::Fsm, "hybrid");
  std::vector<Candidate> candidates;
  std::vector<char> prefiltered;
  fsm_candidates(enc, value_t, seq_t, include_synthetic_states, candidates, prefiltered);

  // Mirror `assemble`, with the pre-filtered tuples counted as invalid.
  RequirementSet out;
  out.candidates = static_cast<std::int64_t>(candidates.size());
  std::vector<char> needs_check(candidates.size(), 1);
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (prefiltered[i]) needs_check[i] = 0;
    else if (!seen.insert(candidates[i].descriptor).second) needs_check[i] = 0;
  }
  const std::vector<char> verdict = filter_candidates(enc, candidates, needs_check, jobs);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (prefiltered[i]) {
      ++out.invalid;
      continue;
    }
    if (!needs_check[i]) {
      ++out.duplicates;
      continue;
    }
    if (!verdict[i]) {
      ++out.invalid;
      continue;
    }
    Requirement r;
    r.id = static_cast<int>(out.requirements.size());
    r.expr = std::move(candidates[i].expr);
    r.descriptor = std::move(candidates[i].descriptor);
    r.kind = candidates[i].kind;
    out.requirements.push_back(std::move(r));
  }
  return out;
}

RequirementSet enumerate(const Criterion& criterion, const SpaceEncoding& enc, int jobs) {
  if (const auto* ca = std::get_if<CaStrength>(&criterion)) return enumerate_ca(enc, ca->t, jobs);
  if (const auto* sq = std::get_if<SeqStrength>(&criterion)) return enumerate_seq(enc, sq->t, jobs);
  if (const auto* hy = std::get_if<FsmHybrid>(&criterion))
    return enumerate_fsm(enc, hy->value_t, hy->seq_t, hy->include_synthetic_states, jobs);

  // Composite: concatenate the parts' requirement lists, then renumber.
  // Each part already dedupes internally; descriptors repeated across
  // parts are dropped here.
  const auto& parts = std::get<Composite>(criterion).parts;
  RequirementSet out;
  std::unordered_set<std::string> seen;
  std::vector<Requirement> orderings;
  for (const SimpleCriterion& part : parts) {
    RequirementSet sub = enumerate(
        std::visit([](const auto& p) { return Criterion(p); }, part), enc, jobs);
    out.candidates += sub.candidates;
    out.invalid += sub.invalid;
    out.duplicates += sub.duplicates;
    for (Requirement& r : sub.requirements) {
      if (!seen.insert(r.descriptor).second) {
        ++out.duplicates;
        continue;
      }
      (r.kind == RequirementKind::ValueTuple ? out.requirements : orderings)
          .push_back(std::move(r));
    }
  }
  for (Requirement& r : orderings) out.requirements.push_back(std::move(r));
  for (std::size_t i = 0; i < out.requirements.size(); ++i)
    out.requirements[i].id = static_cast<int>(i);
  return out;
}

std::string to_string(const Criterion& c) {
  std::ostringstream out;
  if (const auto* ca = std::get_if<CaStrength>(&c)) {
    out << "strength " << ca->t;
  } else if (const auto* sq = std::get_if<SeqStrength>(&c)) {
    out << "seq-strength " << sq->t;
  } else if (const auto* hy = std::get_if<FsmHybrid>(&c)) {
    out << "hybrid value=" << hy->value_t << " seq=" << hy->seq_t;
    if (hy->include_synthetic_states) out << " synthetic=yes";
  } else {
    const auto& parts = std::get<Composite>(c).parts;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i > 0) out << ", ";
      out << to_string(std::visit([](const auto& p) { return Criterion(p); }, parts[i]));
    }
  }
  return out.str();
}

}  // namespace ucit
