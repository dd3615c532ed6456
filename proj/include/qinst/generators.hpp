// Copyright 2026 The qinst Authors
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

#pragma once

#include <cstddef>
#include <vector>

#include "qinst/instruments.hpp"
#include "qinst/objects.hpp"
#include "qinst/random.hpp"
#include "qinst/superop.hpp"

// Seeded generators of random states, observables, channels and instruments
// for property tests and mixing-law trials.

namespace qinst {

DensityOperator random_state(std::size_t d, Rng& rng);
DensityOperator random_pure_state(std::size_t d, Rng& rng);

/// Observable whose projections have the given ranks (summing to d) on a Haar
/// random basis. Rank-zero blocks give zero projections. Labels "0", "1", ...
SharpObservable random_observable(const std::vector<std::size_t>& ranks, Rng& rng);

/// d rank-one projections, optionally followed by an extra outcome with a zero projection.
SharpObservable random_nondegenerate_observable(std::size_t d, Rng& rng, bool with_null_outcome = false);

/// Random rank pattern with at least one projection of rank >= 2 (d >= 2).
SharpObservable random_degenerate_observable(std::size_t d, Rng& rng);

/// Channel with `kraus_count` Kraus operators cut from a Haar isometry.
Superoperator random_channel(std::size_t d, std::size_t kraus_count, Rng& rng);

/// Completely positive instrument whose Kraus operators are the blocks of a
/// Haar isometry; outcome x receives kraus_counts[x] operators.
Instrument random_cp_instrument(std::size_t d, const std::vector<std::size_t>& kraus_counts, Rng& rng);

/// Effects sum_i K_i^dagger K_i from a random CP instrument with `n` outcomes.
Povm random_povm(std::size_t d, std::size_t n, Rng& rng);

/// One random mixed state per outcome.
StateFamily random_state_family(const OutcomeSpace& outcomes, std::size_t d, Rng& rng);

/// E-compatible trace-preserving operation: a random channel after the pinching of e.
Superoperator random_compatible_operation(const SharpObservable& e, std::size_t kraus_count, Rng& rng);

}  // namespace qinst
