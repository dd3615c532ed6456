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
#include <cstdint>
#include <random>

#include "qinst/matrix.hpp"

namespace qinst {

/// Seeded random source. Every stochastic routine in the library takes one of
/// these (or a seed to build one), so results are reproducible given the seed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double normal() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }
    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }
    Complex complex_normal() {
        double re = normal();
        double im = normal();
        return {re, im};
    }
    std::mt19937_64& engine() { return engine_; }

  private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng);

/// Unit vector with i.i.d. complex Gaussian components, normalized.
ComplexVector random_unit_vector(std::size_t d, Rng& rng);

/// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
ComplexMatrix random_unitary(std::size_t d, Rng& rng);

/// n x k isometry: the first k columns of a Haar unitary.
ComplexMatrix random_isometry(std::size_t n, std::size_t k, Rng& rng);

/// |psi><psi| for a random unit vector.
ComplexMatrix random_pure_density(std::size_t d, Rng& rng);

/// Full-rank mixed state: normalized squared-Gaussian spectrum in a Haar basis.
ComplexMatrix random_mixed_density(std::size_t d, Rng& rng);

}  // namespace qinst
