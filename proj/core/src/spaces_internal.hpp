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

#ifndef UCIT_SPACES_INTERNAL_HPP
#define UCIT_SPACES_INTERNAL_HPP

#include "ucit/spaces.hpp"

namespace ucit::detail {

// Per-kind halves of encode_test. Each rebuilds a total assignment over the
// semantic atoms; identifiers that do not resolve raise Error, semantic
// violations (double values, broken paths) are left for M to reject.
Assignment encode_ca_assignment(const SpaceEncoding& enc, const RowTest& tc);
Assignment encode_seq_assignment(const SpaceEncoding& enc, const EventSeqTest& tc);
Assignment encode_fsm_assignment(const SpaceEncoding& enc, const FsmPathTest& tc);

}  // namespace ucit::detail

#endif  // UCIT_SPACES_INTERNAL_HPP
