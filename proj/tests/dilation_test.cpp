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

#include "qinst/dilation.hpp"

#include <gtest/gtest.h>

#include "qinst/errors.hpp"
#include "qinst/generators.hpp"
#include "test_util.hpp"

namespace qinst {
namespace {

using testing::ket0;
using testing::projector;

IndirectModel cnot_model() {
    return IndirectModel(2, DensityOperator::pure(ket0()), testing::cnot(), testing::z_observable());
}

TEST(IndirectModel, Validation) {
    ComplexMatrix not_unitary = testing::cnot();
    not_unitary(0, 0) = 1.001;
    EXPECT_THROW(IndirectModel(2, DensityOperator::pure(ket0()), not_unitary, testing::z_observable()), ValidationError);
    EXPECT_THROW(IndirectModel(3, DensityOperator::pure(ket0()), testing::cnot(), testing::z_observable()), DimensionError);
    EXPECT_THROW(IndirectModel(2, DensityOperator::pure(ket0()), testing::cnot(), SharpObservable::computational(3)),
                 DimensionError);
}

TEST(InstrumentOfModel, IdentityCouplingDoesNotDisturb) {
    Rng rng(1);
    DensityOperator sigma = random_state(3, rng);
    SharpObservable probe = random_degenerate_observable(3, rng);
    IndirectModel m(2, sigma, ComplexMatrix::Identity(6, 6), probe);
    Instrument x = instrument_of_model(m);
    for (int s = 0; s < 5; ++s) {
        ComplexMatrix rho = random_mixed_density(2, rng);
        for (std::size_t k = 0; k < probe.outcomes().size(); ++k) {
            double weight = trace_product(probe.projection(k), sigma.matrix());
            EXPECT_LT(max_abs_diff(x.map(k)(rho), weight * rho), 1e-14);
        }
    }
}

TEST(InstrumentOfModel, CnotGivesLudersZ) {
    Instrument x = instrument_of_model(cnot_model());
    Instrument lz = luders_instrument(testing::z_observable());
    for (std::size_t k = 0; k < 2; ++k) EXPECT_LT(distance(x.map(k), lz.map(k)), 1e-14);
}

TEST(InstrumentOfModel, Normalization) {
    Rng rng(2);
    ComplexMatrix u = random_unitary(6, rng);
    IndirectModel m(2, random_state(3, rng), u, SharpObservable::computational(3));
    Superoperator total = total_operation(instrument_of_model(m));
    for (int s = 0; s < 20; ++s) {
        EXPECT_NEAR(total(random_mixed_density(2, rng)).trace().real(), 1.0, 1e-10);
    }
}

TEST(InstrumentOfModel, AlwaysCompletelyPositive) {
    Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t d = 2 + rng.index(2), a = 2 + rng.index(3);
        IndirectModel m(d, random_state(a, rng), random_unitary(d * a, rng), random_degenerate_observable(a, rng));
        Instrument x = instrument_of_model(m);
        for (const auto& map : x.maps()) EXPECT_GE(min_choi_eigenvalue(map), -1e-9);
    }
}

TEST(InstrumentOfModel, LinearInAncillaState) {
    Rng rng(4);
    std::size_t d = 2, a = 3;
    ComplexMatrix u = random_unitary(d * a, rng);
    SharpObservable probe = random_degenerate_observable(a, rng);
    // sigma = sum_k lambda_k |v_k><v_k|
    HermitianEigen eig = hermitian_eigen(random_mixed_density(a, rng));
    ComplexMatrix sigma = ComplexMatrix::Zero(3, 3);
    std::vector<Superoperator> combined(probe.outcomes().size(), Superoperator::zero(d));
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
        ComplexVector v = eig.vectors.col(k);
        sigma += eig.values(k) * v * v.adjoint();
        Instrument pure = instrument_of_model(IndirectModel(d, DensityOperator::pure(v), u, probe));
        for (std::size_t x = 0; x < combined.size(); ++x) combined[x] += eig.values(k) * pure.map(x);
    }
    Instrument mixed = instrument_of_model(IndirectModel(d, DensityOperator(sigma), u, probe));
    for (std::size_t x = 0; x < combined.size(); ++x) EXPECT_LT(distance(mixed.map(x), combined[x]), 1e-10);
}

TEST(Dilate, LudersZ) {
    Instrument lz = luders_instrument(testing::z_observable());
    IndirectModel m = dilate(lz);
    EXPECT_EQ(m.anc_dim(), 2u);
    EXPECT_EQ(m.probe().outcomes().labels(), (std::vector<std::string>{"0", "1"}));
    EXPECT_LT(max_abs_diff(m.ancilla_state().matrix(), projector(ket0())), 1e-15);
    EXPECT_TRUE(verify_realization(m, lz, 1e-8).pass());
}

TEST(Dilate, UnitaryChannel) {
    Rng rng(5);
    ComplexMatrix v = random_unitary(3, rng);
    Instrument channel = Instrument::create(OutcomeSpace({"u"}), {Superoperator::conjugation(v)});
    IndirectModel m = dilate(channel);
    EXPECT_EQ(m.anc_dim(), 2u);
    EXPECT_EQ(m.probe().outcomes().size(), 1u);
    EXPECT_LT(max_abs_diff(m.probe().projection(0), ComplexMatrix::Identity(2, 2)), 1e-15);
    EXPECT_LT(verify_realization(m, channel).max_deviation(), 1e-8);
    // The coupling maps psi (x) |0> to (V psi) (x) |0>, up to a global phase.
    ComplexVector psi = random_unit_vector(3, rng);
    ComplexVector out = m.coupling() * tensor_product(psi, ket0());
    ComplexVector expected = tensor_product(ComplexVector(v * psi), ket0());
    EXPECT_NEAR(std::abs(expected.dot(out)), 1.0, 1e-10);
}

TEST(Dilate, RandomInstrumentRoundtrip) {
    Rng rng(6);
    Instrument x = random_cp_instrument(3, {2, 1, 2}, rng);
    IndirectModel m = dilate(x);
    EXPECT_EQ(m.anc_dim(), 5u);
    EXPECT_LT(unitarity_defect(m.coupling()), 1e-10);
    EXPECT_LT(verify_realization(m, x).max_deviation(), 1e-8);
}

TEST(Dilate, RejectsNonCp) {
    Instrument transpose =
        instrument_from_total_operation(SharpObservable::trivial(2), Superoperator::transpose_map(2));
    EXPECT_THROW(dilate(transpose), NotCompletelyPositiveError);
    try {
        dilate(transpose);
    } catch (const NotCompletelyPositiveError& e) {
        EXPECT_NEAR(e.min_choi_eigenvalue(), -1.0, 1e-12);
    }
}

TEST(Dilate, LeftoverDimensionsGoToFirstLabel) {
    // One Kraus operator in total: ancilla padded to 2, the spare slot joins outcome "a".
    Instrument x = Instrument::create(OutcomeSpace({"b", "a"}),
                                      {Superoperator::identity(2), Superoperator::zero(2)});
    IndirectModel m = dilate(x);
    EXPECT_EQ(m.anc_dim(), 2u);
    EXPECT_EQ(projection_rank(m.probe().projection(m.probe().outcomes().index_of("a"))), 1u);
    EXPECT_TRUE(verify_realization(m, x).pass());
}

TEST(VerifyRealization, Examples) {
    CheckReport z = verify_realization(cnot_model(), luders_instrument(testing::z_observable()), 1e-10);
    EXPECT_TRUE(z.pass());

    CheckReport x = verify_realization(cnot_model(), luders_instrument(testing::x_observable("0", "1")), 1e-10);
    EXPECT_FALSE(x.pass());
    // Oracle: ||L_Z0 - L_X0||_F on natural matrices = sqrt(sum |.|^2) of the difference of conj(P)(x)P terms.
    ComplexMatrix pz = projector(ket0()), px = projector(testing::ket_plus());
    double expected = (tensor_product(pz.conjugate(), pz) - tensor_product(px.conjugate(), px)).norm();
    EXPECT_NEAR(x.max_deviation(), expected, 1e-12);
    EXPECT_GT(x.max_deviation(), 0.5);

    EXPECT_THROW(verify_realization(cnot_model(), luders_instrument(testing::x_observable())), DimensionError);
}

TEST(DilationProperties, RoundtripOverRandomInstruments) {
    Rng rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t d = 1 + rng.index(4), n = 1 + rng.index(4);
        std::vector<std::size_t> counts(n);
        for (auto& c : counts) c = 1 + rng.index(3);
        Instrument x = random_cp_instrument(d, counts, rng);
        IndirectModel m = dilate(x);
        EXPECT_LT(unitarity_defect(m.coupling()), 1e-10);
        EXPECT_LT(verify_realization(m, x).max_deviation(), 1e-8);
        // probe invariants are enforced by the SharpObservable constructor
        EXPECT_NO_THROW(SharpObservable(m.probe().outcomes(), m.probe().projections()));
    }
}

}  // namespace
}  // namespace qinst
