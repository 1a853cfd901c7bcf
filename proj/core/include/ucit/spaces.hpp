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

#ifndef UCIT_SPACES_HPP
#define UCIT_SPACES_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "ucit/cnf.hpp"
#include "ucit/model.hpp"

namespace ucit {

/// Semantic atom kinds appearing in space encodings.
enum class AtomKind : std::uint8_t {
  FactorValue,  // factor a has value b
  EventAt,      // event a occupies position b
  EmptyAt,      // position b is unused (variable-length sequences)
  StateAt,      // state a holds at step b
  TransAt,      // transition a is taken at step b
  Visited,      // state a appears somewhere on the path
};

struct Atom {
  AtomKind kind;
  std::int32_t a = -1;
  std::int32_t b = -1;
  friend bool operator==(const Atom&, const Atom&) = default;
};

struct AtomHash {
  std::size_t operator()(const Atom& at) const {
    std::size_t h = static_cast<std::size_t>(at.kind);
    h = h * 1000003u ^ static_cast<std::size_t>(at.a + 1);
    h = h * 1000003u ^ static_cast<std::size_t>(at.b + 1);
    return h;
  }
};

/// Bidirectional map between semantic atoms and the variable ids
/// [0, size()) they occupy in an encoding. Insertion order is the
/// variable order, so identical models produce identical tables.
class AtomTable {
public:
  VarId add(const Atom& at);
  [[nodiscard]] std::optional<VarId> find(const Atom& at) const;
  [[nodiscard]] VarId require(const Atom& at) const;
  [[nodiscard]] const Atom& operator[](VarId v) const { return atoms_.at(static_cast<std::size_t>(v)); }
  [[nodiscard]] VarId size() const { return static_cast<VarId>(atoms_.size()); }

  friend bool operator==(const AtomTable& x, const AtomTable& y) { return x.atoms_ == y.atoms_; }

private:
  std::vector<Atom> atoms_;
  std::unordered_map<Atom, VarId, AtomHash> index_;
};

/// One coverage entity: a constraint plus a human-readable descriptor.
enum class RequirementKind : std::uint8_t { ValueTuple, Ordering };

struct Requirement {
  int id = -1;
  BoolExpr expr;
  std::string descriptor;
  RequirementKind kind = RequirementKind::ValueTuple;
};

/// Decoded test cases, one shape per space kind.
struct RowTest {
  std::vector<std::pair<std::string, std::string>> values;  // factor -> value, model order
  friend bool operator==(const RowTest&, const RowTest&) = default;
};

struct EventSeqTest {
  std::vector<std::string> events;
  friend bool operator==(const EventSeqTest&, const EventSeqTest&) = default;
};

struct FsmPathTest {
  std::vector<std::string> states;       // initial .. final, padding removed
  std::vector<std::string> transitions;  // labels, aligned with state steps
  std::vector<std::pair<std::string, std::string>> values;  // visited-state factors only
  friend bool operator==(const FsmPathTest&, const FsmPathTest&) = default;
};

using TestCase = std::variant<RowTest, EventSeqTest, FsmPathTest>;

/// A space model compiled to solver form.
///
/// `constraint` is M as an expression over semantic atom variables only;
/// `cnf` is the equisatisfiable clause form the solver consumes (semantic
/// atoms occupy [0, atoms.size()), Tseitin auxiliaries follow). The atom
/// table covers every variable decoding or re-encoding needs.
struct SpaceEncoding {
  SpaceKind kind = SpaceKind::CoveringArray;
  SpaceModel model;
  AtomTable atoms;
  BoolExpr constraint;
  Cnf cnf;

  // name -> index tables, built by the encoders
  std::unordered_map<std::string, int> factor_index;
  std::vector<std::unordered_map<std::string, int>> value_index;  // per factor
  std::unordered_map<std::string, int> event_index;
  std::unordered_map<std::string, int> state_index;
  std::unordered_map<std::string, int> transition_index;

  [[nodiscard]] const CoveringArrayModel& ca() const;
  [[nodiscard]] const SequenceModel& seq() const;
  [[nodiscard]] const FsmModel& fsm() const;

  [[nodiscard]] std::string atom_label(VarId v) const;

  [[nodiscard]] VarId factor_value_var(int factor, int value) const {
    return atoms.require({AtomKind::FactorValue, factor, value});
  }
};

/// Raised when an assignment that is supposed to satisfy M cannot be
/// decoded (an exactly-one group violated, no state at a step, ...).
/// Indicates a solver or encoder bug, not bad user input.
class MalformedAssignment : public Error {
public:
  using Error::Error;
};

// --- covering arrays -----------------------------------------------------

SpaceEncoding encode_ca_space(const CoveringArrayModel& m);
BoolExpr encode_value_tuple(const SpaceEncoding& enc,
                            std::span<const std::pair<std::string, std::string>> assignments);
RowTest decode_ca_test(const SpaceEncoding& enc, const Assignment& a);

// --- sequences -----------------------------------------------------------

SpaceEncoding encode_seq_space(const SequenceModel& m);
/// Subsequence containment: the events appear in this order, possibly
/// interleaved with others.
BoolExpr encode_order_requirement(const SpaceEncoding& enc,
                                  std::span<const std::string> ordered_events);
EventSeqTest decode_seq_test(const SpaceEncoding& enc, const Assignment& a);

// --- guarded finite state machines ----------------------------------------

SpaceEncoding encode_fsm_space(const FsmModel& m);
BoolExpr encode_state_pair_requirement(const SpaceEncoding& enc, const std::string& s1,
                                       const std::string& s2);
/// Ordered visitation of t distinct states, interleaving allowed; the
/// pair form above is the t = 2 case.
BoolExpr encode_state_sequence_requirement(const SpaceEncoding& enc,
                                           std::span<const std::string> states);
FsmPathTest decode_fsm_test(const SpaceEncoding& enc, const Assignment& a);

// --- kind-generic helpers --------------------------------------------------

SpaceEncoding encode_space(const SpaceModel& m);
TestCase decode_test(const SpaceEncoding& enc, const Assignment& a);

/// Inverse of decode: reconstructs the total assignment over the semantic
/// atoms of `enc` that represents `tc`. Throws Error if the test case names
/// unknown identifiers or does not fit the space shape.
Assignment encode_test(const SpaceEncoding& enc, const TestCase& tc);

/// Descriptor text, e.g. "f0=T, f2=b" or "S2 before S5".
std::string tuple_descriptor(std::span<const std::pair<std::string, std::string>> assignments);
std::string ordering_descriptor(std::span<const std::string> items);

namespace detail {
/// exactly-one over the given atom variables, as an expression.
BoolExpr exactly_one_expr(std::span<const VarId> vars);
/// Appends at-least-one + pairwise at-most-one clauses.
void exactly_one_clauses(std::span<const VarId> vars, Cnf& out);
/// Compiles a model-level expression, mapping value atoms through the
/// encoding dictionary. `allow_before` enables before(a,b) ordering atoms.
BoolExpr compile_model_expr(const SpaceEncoding& enc, const ModelExpr& e, bool allow_before);
}  // namespace detail

}  // namespace ucit

#endif  // UCIT_SPACES_HPP
