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

#include "qinst/random.hpp"

#include <cmath>

namespace qinst {

ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    // Column-major fill order is fixed so draws are reproducible.
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            m(i, j) = rng.complex_normal();
        }
    }
    return m;
}

ComplexVector random_unit_vector(std::size_t d, Rng& rng) {
    ComplexVector v = gaussian_matrix(d, 1, rng).col(0);
    return v / v.norm();
}

ComplexMatrix random_unitary(std::size_t d, Rng& rng) {
    ComplexMatrix g = gaussian_matrix(d, d, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < q.cols(); ++i) {
        Complex diag = r(i, i);
        double mag = std::abs(diag);
        if (mag > 0.0) q.col(i) *= diag / mag;
    }
    return q;
}

ComplexMatrix random_isometry(std::size_t n, std::size_t k, Rng& rng) {
    return random_unitary(n, rng).leftCols(static_cast<Eigen::Index>(k));
}

ComplexMatrix random_pure_density(std::size_t d, Rng& rng) {
    ComplexVector v = random_unit_vector(d, rng);
    return v * v.adjoint();
}

ComplexMatrix random_mixed_density(std::size_t d, Rng& rng) {
    RealVector spectrum(static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
        double g = rng.normal();
        spectrum(i) = g * g + 1e-3;
    }
    spectrum /= spectrum.sum();
    ComplexMatrix u = random_unitary(d, rng);
    ComplexMatrix rho = u * spectrum.cast<Complex>().asDiagonal() * u.adjoint();
    return (rho + rho.adjoint()) / 2.0;
}

}  // namespace qinst
