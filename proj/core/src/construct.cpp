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

#include "ucit/construct.hpp"

#include <numeric>
#include <random>

namespace ucit {

std::string to_string(RequirementOrder order) {
  return order == RequirementOrder::AsEnumerated ? "as-enumerated" : "shuffled";
}

SubsetPacker::SubsetPacker(const SpaceEncoding& enc) : checker_(enc) {}

std::vector<Literal>& SubsetPacker::assumptions_of(const Requirement& r) {
  auto it = by_id_.find(r.id);
  if (it == by_id_.end())
    it = by_id_.emplace(r.id, checker_.assumptions_for(r.expr)).first;
  return it->second;
}

bool SubsetPacker::subset_cache_check(std::size_t subset, const Requirement& r) {
  std::vector<Literal> assume = assumptions_.at(subset);
  const std::vector<Literal>& own = assumptions_of(r);
  assume.insert(assume.end(), own.begin(), own.end());
  return checker_.satisfiable(assume);
}

std::size_t SubsetPacker::place(const Requirement& r) {
  for (std::size_t s = 0; s < members_.size(); ++s) {
    if (!subset_cache_check(s, r)) continue;
    members_[s].push_back(r.id);
    const std::vector<Literal>& own = assumptions_of(r);
    assumptions_[s].insert(assumptions_[s].end(), own.begin(), own.end());
    return s;
  }
  const std::vector<Literal>& own = assumptions_of(r);
  if (!checker_.satisfiable(own))
    throw InvalidRequirement("requirement '" + r.descriptor +
                             "' is unsatisfiable with the space model");
  members_.push_back({r.id});
  assumptions_.push_back(own);
  return members_.size() - 1;
}

std::optional<Assignment> SubsetPacker::solve_subset(std::size_t subset) {
  return checker_.solve(assumptions_.at(subset));
}

UcitObject build(const SpaceEncoding& enc, const RequirementSet& reqs, const Policy& policy) {
  std::vector<int> order(reqs.requirements.size());
  std::iota(order.begin(), order.end(), 0);
  if (policy.order == RequirementOrder::Shuffled)
    detail::deterministic_shuffle(order, policy.seed);

  SubsetPacker packer(enc);
  for (int idx : order) packer.place(reqs.requirements[static_cast<std::size_t>(idx)]);

  UcitObject object;
  for (std::size_t s = 0; s < packer.subset_count(); ++s) {
    object.subsets.push_back(packer.members(s));
    const std::optional<Assignment> a = packer.solve_subset(s);
    // Every member was admitted by an accommodation check, so the subset
    // conjunction is satisfiable; reaching this line means the solver
    // contradicted itself.
    if (!a) throw Error("internal: accepted subset became unsatisfiable at final solving");
    object.tests.push_back(decode_test(enc, *a));
  }
  object.metadata.policy = policy;
  object.metadata.requirement_count = reqs.valid();
  object.metadata.test_count = static_cast<std::int64_t>(object.tests.size());
  return object;
}

namespace detail {

void deterministic_shuffle(std::vector<int>& items, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = items.size(); i > 1; --i) {
    // rng() % i instead of uniform_int_distribution: the distribution's
    // mapping is implementation-defined, this is not.
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace detail

}  // namespace ucit
