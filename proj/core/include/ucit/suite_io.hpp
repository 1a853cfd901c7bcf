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

#ifndef UCIT_SUITE_IO_HPP
#define UCIT_SUITE_IO_HPP

#include <string>

#include "ucit/construct.hpp"
#include "ucit/dsl.hpp"
#include "ucit/verify.hpp"

namespace ucit {

/// FNV-1a (64-bit) of the canonical model text, as 16 lowercase hex digits.
/// Two documents hash equal iff they print equal, so formatting and comments
/// never affect the hash.
std::string model_hash_hex(const ModelDocument& doc);

/// Canonical suite JSON (schema in docs/formats.md). Field order is fixed,
/// indentation is two spaces, and a trailing newline is appended, so equal
/// objects serialize byte-identically.
std::string suite_to_json(const UcitObject& object);

/// Parses what suite_to_json emits. Unknown keys are ignored; missing or
/// ill-typed required keys raise Error.
UcitObject suite_from_json(const std::string& text);

/// Row tests as CSV: a header row of factor names in model order, then one
/// row of values per test. Only covering-array suites have a CSV form.
std::string suite_to_csv(const UcitObject& object, const SpaceEncoding& enc);

/// Parses what suite_to_csv emits. The header must name the encoding's
/// factors exactly; the result carries tests only (CSV has no metadata).
UcitObject suite_from_csv(const std::string& text, const SpaceEncoding& enc);

/// Coverage report as JSON (schema in docs/formats.md).
std::string report_to_json(const CoverageReport& report);

}  // namespace ucit

#endif  // UCIT_SUITE_IO_HPP
