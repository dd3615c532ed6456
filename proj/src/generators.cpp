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

#include "qinst/generators.hpp"

#include <algorithm>
#include <numeric>

#include "qinst/errors.hpp"

namespace qinst {

DensityOperator random_state(std::size_t d, Rng& rng) { return DensityOperator(random_mixed_density(d, rng)); }

DensityOperator random_pure_state(std::size_t d, Rng& rng) { return DensityOperator(random_pure_density(d, rng)); }

SharpObservable random_observable(const std::vector<std::size_t>& ranks, Rng& rng) {
    std::size_t d = std::accumulate(ranks.begin(), ranks.end(), std::size_t{0});
    if (d == 0) throw ValidationError("random_observable: ranks must sum to a positive dimension");
    ComplexMatrix u = random_unitary(d, rng);
    auto n = static_cast<Eigen::Index>(d);
    std::vector<ComplexMatrix> projections;
    Eigen::Index col = 0;
    for (std::size_t r : ranks) {
        auto rank = static_cast<Eigen::Index>(r);
        ComplexMatrix block = u.middleCols(col, rank);
        projections.push_back(rank == 0 ? ComplexMatrix::Zero(n, n) : ComplexMatrix(block * block.adjoint()));
        col += rank;
    }
    return SharpObservable(OutcomeSpace::numbered(ranks.size()), std::move(projections));
}

SharpObservable random_nondegenerate_observable(std::size_t d, Rng& rng, bool with_null_outcome) {
    std::vector<std::size_t> ranks(d, 1);
    if (with_null_outcome) ranks.insert(ranks.begin() + static_cast<std::ptrdiff_t>(rng.index(d + 1)), 0);
    return random_observable(ranks, rng);
}

SharpObservable random_degenerate_observable(std::size_t d, Rng& rng) {
    if (d < 2) throw ValidationError("random_degenerate_observable: needs d >= 2");
    // One block of rank >= 2, the rest split at random.
    std::size_t big = 2 + rng.index(d - 1);
    std::vector<std::size_t> ranks{big};
    std::size_t left = d - big;
    while (left > 0) {
        std::size_t r = 1 + rng.index(left);
        ranks.push_back(r);
        left -= r;
    }
    std::shuffle(ranks.begin(), ranks.end(), rng.engine());
    return random_observable(ranks, rng);
}

Superoperator random_channel(std::size_t d, std::size_t kraus_count, Rng& rng) {
    ComplexMatrix v = random_isometry(d * kraus_count, d, rng);
    auto n = static_cast<Eigen::Index>(d);
    KrausSet set;
    for (std::size_t k = 0; k < kraus_count; ++k) set.operators.push_back(v.middleRows(static_cast<Eigen::Index>(k) * n, n));
    return Superoperator::from_kraus(set);
}

Instrument random_cp_instrument(std::size_t d, const std::vector<std::size_t>& kraus_counts, Rng& rng) {
    std::size_t total = std::accumulate(kraus_counts.begin(), kraus_counts.end(), std::size_t{0});
    if (total == 0) throw ValidationError("random_cp_instrument: needs at least one Kraus operator");
    ComplexMatrix v = random_isometry(d * total, d, rng);
    auto n = static_cast<Eigen::Index>(d);
    std::vector<Superoperator> maps;
    Eigen::Index row = 0;
    for (std::size_t count : kraus_counts) {
        if (count == 0) {
            maps.push_back(Superoperator::zero(d));
            continue;
        }
        KrausSet set;
        for (std::size_t k = 0; k < count; ++k, row += n) set.operators.push_back(v.middleRows(row, n));
        maps.push_back(Superoperator::from_kraus(set));
    }
    return Instrument::create(OutcomeSpace::numbered(kraus_counts.size()), std::move(maps));
}

Povm random_povm(std::size_t d, std::size_t n, Rng& rng) {
    std::vector<std::size_t> counts(n, 1);
    return povm_of(random_cp_instrument(d, counts, rng));
}

StateFamily random_state_family(const OutcomeSpace& outcomes, std::size_t d, Rng& rng) {
    std::vector<DensityOperator> states;
    for (std::size_t i = 0; i < outcomes.size(); ++i) states.push_back(random_state(d, rng));
    return StateFamily(outcomes, std::move(states));
}

Superoperator random_compatible_operation(const SharpObservable& e, std::size_t kraus_count, Rng& rng) {
    return compose(random_channel(e.dim(), kraus_count, rng), luders_pinching(e));
}

}  // namespace qinst
