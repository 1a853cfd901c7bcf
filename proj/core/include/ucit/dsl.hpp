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

#ifndef UCIT_DSL_HPP
#define UCIT_DSL_HPP

#include <optional>
#include <string>

#include "ucit/enumerate.hpp"
#include "ucit/model.hpp"

namespace ucit {

/// Syntax or resolution error in a .ucit document, with a 1-based source
/// position. what() includes the position.
class ParseError : public Error {
public:
  ParseError(const std::string& message, int line, int column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}

  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] int column() const { return column_; }

private:
  int line_;
  int column_;
};

/// A parsed .ucit document: one space model plus an optional coverage
/// criterion clause. Every identifier is already resolved.
struct ModelDocument {
  SpaceModel model;
  std::optional<Criterion> criterion;
  friend bool operator==(const ModelDocument&, const ModelDocument&) = default;
};

/// Parses a .ucit document (grammar documented in docs/formats.md).
/// Throws ParseError with position on any malformed input.
ModelDocument parse_model(const std::string& text);

/// Reads and parses a model file; file-system errors become Error.
ModelDocument load_model(const std::string& path);

/// Canonical text form; parse(print(parse(t))) == parse(t) for all valid t.
std::string print_model(const ModelDocument& doc);

/// Pretty-prints a constraint expression with minimal parentheses.
std::string print_expr(const ModelExpr& e);

/// Compiles the document's model into its solver encoding.
SpaceEncoding compile(const ModelDocument& doc);

/// The document's criterion; defaults to the model's own strength for
/// covering-array and sequence models. FSM documents must be explicit.
Criterion criterion_of(const ModelDocument& doc);

}  // namespace ucit

#endif  // UCIT_DSL_HPP
