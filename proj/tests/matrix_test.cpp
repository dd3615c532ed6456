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

#include "qinst/matrix.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "qinst/errors.hpp"
#include "qinst/random.hpp"
#include "test_util.hpp"

namespace qinst {
namespace {

using testing::diag;
using testing::ket0;
using testing::ket1;
using testing::projector;

TEST(TensorProduct, IdentityTimesIdentity) {
    EXPECT_EQ(tensor_product(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)),
              ComplexMatrix(ComplexMatrix::Identity(4, 4)));
}

TEST(TensorProduct, BasisProjectors) {
    EXPECT_EQ(tensor_product(projector(ket0()), projector(ket1())), diag({0, 1, 0, 0}));
}

TEST(TensorProduct, MixedProductProperty) {
    Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        ComplexMatrix a = gaussian_matrix(2, 2, rng), b = gaussian_matrix(2, 2, rng);
        ComplexMatrix c = gaussian_matrix(2, 2, rng), d = gaussian_matrix(2, 2, rng);
        EXPECT_LT(max_abs_diff(tensor_product(a, b) * tensor_product(c, d), tensor_product(a * c, b * d)), 1e-12);
    }
}

TEST(TensorProduct, Associative) {
    Rng rng(12);
    ComplexMatrix a = gaussian_matrix(2, 3, rng), b = gaussian_matrix(3, 2, rng), c = gaussian_matrix(2, 2, rng);
    EXPECT_LT(max_abs_diff(tensor_product(tensor_product(a, b), c), tensor_product(a, tensor_product(b, c))), 1e-12);
}

TEST(PartialTrace, ProductState) {
    Rng rng(3);
    ComplexMatrix rho = random_mixed_density(2, rng);
    ComplexMatrix sigma = 2.5 * random_mixed_density(3, rng);
    EXPECT_LT(max_abs_diff(partial_trace_ancilla(tensor_product(rho, sigma), 2, 3), rho * 2.5), 1e-12);
    EXPECT_LT(max_abs_diff(partial_trace_system(tensor_product(rho, sigma), 2, 3), sigma), 1e-12);
}

TEST(PartialTrace, BellStateGivesMaximallyMixed) {
    ComplexVector phi = testing::ket({1.0, 0.0, 0.0, 1.0}) / std::sqrt(2.0);
    ComplexMatrix reduced = partial_trace_ancilla(phi * phi.adjoint(), 2, 2);
    EXPECT_LT(max_abs_diff(reduced, ComplexMatrix::Identity(2, 2) / 2.0), 1e-15);
}

TEST(PartialTrace, DimensionMismatch) {
    EXPECT_THROW(partial_trace_ancilla(ComplexMatrix::Identity(3, 3), 2, 2), DimensionError);
}

TEST(PartialTrace, PreservesTrace) {
    Rng rng(4);
    for (std::size_t ds : {1u, 2u, 3u}) {
        for (std::size_t da : {1u, 2u, 4u}) {
            ComplexMatrix m = gaussian_matrix(ds * da, ds * da, rng);
            EXPECT_LT(std::abs(partial_trace_ancilla(m, ds, da).trace() - m.trace()), 1e-12);
        }
    }
}

TEST(IsPsd, Examples) {
    EXPECT_TRUE(is_psd(ComplexMatrix::Identity(2, 2)));
    EXPECT_FALSE(is_psd(diag({1.0, -0.5})));
    ComplexMatrix swap = ComplexMatrix::Zero(4, 4);
    swap(0, 0) = swap(3, 3) = 1.0;
    swap(1, 2) = swap(2, 1) = 1.0;
    EXPECT_FALSE(is_psd(swap));
    EXPECT_NEAR(min_eigenvalue(swap), -1.0, 1e-14);
}

TEST(IsPsd, NonSquareThrows) { EXPECT_THROW(is_psd(ComplexMatrix::Zero(2, 3)), DimensionError); }

TEST(IsPsd, NonHermitianIsNotPsd) {
    ComplexMatrix m = ComplexMatrix::Identity(2, 2);
    m(0, 1) = 0.5;
    EXPECT_FALSE(is_psd(m));
    EXPECT_THROW(hermitian_eigenvalues(m), ValidationError);
}

TEST(IsPsd, AgreesWithGeneralEigensolver) {
    // Oracle: the non-Hermitian complex eigensolver, an independent code path.
    Rng rng(5);
    int positives = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t d = 1 + rng.index(8);
        ComplexMatrix g = gaussian_matrix(d, d, rng);
        ComplexMatrix h = (g + g.adjoint()) / 2.0;
        // Shift the spectrum so its minimum sits well away from zero.
        Eigen::ComplexEigenSolver<ComplexMatrix> general(h);
        double lowest = general.eigenvalues().real().minCoeff();
        double shift = -lowest + (rng.uniform() < 0.5 ? 0.1 : -0.1);
        h += shift * ComplexMatrix::Identity(h.rows(), h.cols());
        Eigen::ComplexEigenSolver<ComplexMatrix> oracle(h);
        bool expected = oracle.eigenvalues().real().minCoeff() >= 0.0;
        positives += expected;
        EXPECT_EQ(is_psd(h), expected) << "trial " << trial;
    }
    EXPECT_GT(positives, 50);
    EXPECT_LT(positives, 150);
}

TEST(IsPsd, ToleranceIsRelativeToSpectralRadius) {
    EXPECT_TRUE(is_psd(diag({1e6, -1e-5}), 1e-10));
    EXPECT_FALSE(is_psd(diag({1e6, -1e-3}), 1e-10));
    EXPECT_TRUE(is_psd(diag({1.0, -1e-13}), 0.0));  // absolute floor
}

TEST(UnitaryCompletion, IdentityIsKept) {
    EXPECT_LT(max_abs_diff(unitary_completion(ComplexMatrix::Identity(3, 3)), ComplexMatrix::Identity(3, 3)), 1e-15);
}

TEST(UnitaryCompletion, SingleColumn) {
    ComplexMatrix u = unitary_completion(ket0());
    EXPECT_LT(unitarity_defect(u), 1e-12);
    EXPECT_LT(max_abs_diff(u.col(0), ket0()), 1e-15);
}

TEST(UnitaryCompletion, RandomIsometry) {
    Rng rng(6);
    for (int trial = 0; trial < 20; ++trial) {
        ComplexMatrix g = gaussian_matrix(8, 3, rng);
        Eigen::HouseholderQR<ComplexMatrix> qr(g);
        ComplexMatrix v = ComplexMatrix(qr.householderQ()).leftCols(3);
        ComplexMatrix u = unitary_completion(v);
        EXPECT_LT(unitarity_defect(u), 1e-10);
        EXPECT_LT((u * u.adjoint() - ComplexMatrix::Identity(8, 8)).norm(), 1e-10);
        EXPECT_LT(max_abs_diff(u.leftCols(3), v), 1e-12);
    }
}

TEST(UnitaryCompletion, IsDeterministic) {
    Rng rng(7);
    ComplexMatrix v = random_isometry(6, 2, rng);
    EXPECT_EQ(unitary_completion(v), unitary_completion(v));
}

TEST(UnitaryCompletion, RejectsNonIsometry) {
    ComplexMatrix v = 1.01 * ComplexMatrix(ket0());
    EXPECT_THROW(unitary_completion(v), ValidationError);
    EXPECT_THROW(unitary_completion(ComplexMatrix::Identity(2, 3)), DimensionError);
}

}  // namespace
}  // namespace qinst
