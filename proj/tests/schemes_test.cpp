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

#include "qinst/schemes.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>

#include "qinst/errors.hpp"
#include "qinst/generators.hpp"
#include "test_util.hpp"

namespace qinst {
namespace {

using testing::ket0;
using testing::ket1;
using testing::ket_plus;
using testing::projector;
using Tuple = std::vector<std::size_t>;

Apparatus luders_z() { return scheme_of_instrument(luders_instrument(testing::z_observable()), "z"); }
Apparatus luders_x() { return scheme_of_instrument(luders_instrument(testing::x_observable()), "x"); }

/// Direct formula: Tr[X_n(x_n) o ... o X_1(x_1) rho] for every tuple.
std::vector<double> direct_joint(const std::vector<Instrument>& seq, const ComplexMatrix& rho) {
    std::vector<double> out;
    std::size_t total = 1;
    for (const auto& x : seq) total *= x.outcomes().size();
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::vector<std::size_t> tuple(seq.size());
        std::size_t rest = flat;
        for (std::size_t k = seq.size(); k-- > 0;) {
            tuple[k] = rest % seq[k].outcomes().size();
            rest /= seq[k].outcomes().size();
        }
        Superoperator chain = seq[0].map(tuple[0]);
        for (std::size_t k = 1; k < seq.size(); ++k) chain = compose(seq[k].map(tuple[k]), chain);
        out.push_back(chain(rho).trace().real());
    }
    return out;
}

TEST(SchemeOfInstrument, Examples) {
    Apparatus z = luders_z();
    DensityOperator plus = DensityOperator::pure(ket_plus());
    OutcomeDistribution p = z.distribution(plus);
    EXPECT_NEAR(p.probability("0"), 0.5, 1e-15);
    EXPECT_NEAR(p.probability("1"), 0.5, 1e-15);
    EXPECT_LT(max_abs_diff(z.output_state(plus, 0).matrix(), projector(ket0())), 1e-15);

    Rng rng(1);
    Apparatus id = scheme_of_instrument(Instrument::create(OutcomeSpace({"only"}), {Superoperator::identity(3)}));
    DensityOperator rho = random_state(3, rng);
    EXPECT_NEAR(id.distribution(rho)[0], 1.0, 1e-14);
    EXPECT_LT(max_abs_diff(id.output_state(rho, 0).matrix(), rho.matrix()), 1e-14);

    SharpObservable e = random_degenerate_observable(3, rng);
    StateFamily family = random_state_family(e.outcomes(), 3, rng);
    Apparatus mp = scheme_of_instrument(measure_and_prepare(Povm::from_observable(e), family));
    for (std::size_t x = 0; x < e.outcomes().size(); ++x) {
        EXPECT_LT(max_abs_diff(mp.output_state(rho, x).matrix(), family.state(x).matrix()), 1e-12);
    }
}

TEST(SchemeOfInstrument, NullOutcomeGivesMaximallyMixed) {
    DensityOperator zero = DensityOperator::pure(ket0());
    EXPECT_LT(max_abs_diff(luders_z().output_state(zero, 1).matrix(), ComplexMatrix::Identity(2, 2) / 2.0), 1e-15);
}

TEST(Collective, Examples) {
    CollectiveScheme c = collective_of(luders_z());
    DensityOperator plus = DensityOperator::pure(ket_plus());
    EXPECT_LT(max_abs_diff(c.reduction(std::vector<std::size_t>{0, 1}, plus).matrix(), ComplexMatrix::Identity(2, 2) / 2.0),
              1e-15);
    EXPECT_LT(max_abs_diff(c.reduction(std::vector<std::string>{"0"}, plus).matrix(), projector(ket0())), 1e-15);
    EXPECT_THROW(c.reduction(std::vector<std::size_t>{1}, DensityOperator::pure(ket0())), UndefinedReductionError);
}

TEST(Collective, ConsistencyOverRandomInstruments) {
    Rng rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t d = 2 + rng.index(3);
        CollectiveScheme c = collective_of(scheme_of_instrument(random_cp_instrument(d, {1, 2, 1}, rng)));
        EXPECT_LT(c.consistency_defect(random_state(d, rng)), 1e-10);
    }
}

TEST(JointDistribution, ZThenX) {
    JointDistribution j = joint_distribution({luders_z(), luders_x()}, DensityOperator::pure(ket0()));
    EXPECT_EQ(j.size(), 4u);
    EXPECT_NEAR(j.probability(std::vector<std::string>{"0", "+"}), 0.5, 1e-15);
    EXPECT_NEAR(j.probability(std::vector<std::string>{"0", "-"}), 0.5, 1e-15);
    EXPECT_NEAR(j.probability(std::vector<std::string>{"1", "+"}), 0.0, 1e-15);
    EXPECT_NEAR(j.probability(std::vector<std::string>{"1", "-"}), 0.0, 1e-15);
}

TEST(JointDistribution, RepeatedZIsRepeatable) {
    Rng rng(3);
    DensityOperator rho = random_state(2, rng);
    JointDistribution j = joint_distribution({luders_z(), luders_z()}, rho);
    EXPECT_NEAR(j.probability(Tuple{0, 1}), 0.0, 1e-15);
    EXPECT_NEAR(j.probability(Tuple{1, 0}), 0.0, 1e-15);
    EXPECT_NEAR(j.probability(Tuple{0, 0}), rho.matrix()(0, 0).real(), 1e-14);
    EXPECT_NEAR(j.probability(Tuple{0, 0}) + j.probability(Tuple{1, 1}), 1.0, 1e-14);
}

TEST(JointDistribution, SingleApparatusIsBorn) {
    Rng rng(4);
    Instrument x = random_cp_instrument(3, {1, 2, 2}, rng);
    DensityOperator rho = random_state(3, rng);
    JointDistribution j = joint_distribution({scheme_of_instrument(x)}, rho);
    OutcomeDistribution born = born_distribution(povm_of(x), rho);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(j.probabilities()[k], born[k], 1e-14);
}

TEST(JointDistribution, Errors) {
    EXPECT_THROW(joint_distribution({}, DensityOperator::pure(ket0())), ValidationError);
    EXPECT_THROW(joint_distribution({luders_z()}, DensityOperator::maximally_mixed(3)), DimensionError);
}

TEST(JointDistribution, IndexingRoundtrip) {
    JointDistribution j = joint_distribution({luders_z(), luders_x(), luders_z()}, DensityOperator::pure(ket1()));
    for (std::size_t flat = 0; flat < j.size(); ++flat) EXPECT_EQ(j.flat_index(j.tuple(flat)), flat);
    EXPECT_EQ(j.labels(j.flat_index({1, 0, 1})), (std::vector<std::string>{"1", "+", "1"}));
}

TEST(JointDistribution, RecursionMatchesDirectFormula) {
    Rng rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t d = 1 + rng.index(4), n = 1 + rng.index(3);
        std::vector<Instrument> seq;
        std::vector<Apparatus> apparatuses;
        for (std::size_t k = 0; k < n; ++k) {
            seq.push_back(random_cp_instrument(d, {1 + rng.index(2), 1 + rng.index(2)}, rng));
            apparatuses.push_back(scheme_of_instrument(seq.back()));
        }
        DensityOperator rho = random_state(d, rng);
        JointDistribution j = joint_distribution(apparatuses, rho);
        std::vector<double> direct = direct_joint(seq, rho.matrix());
        for (std::size_t f = 0; f < j.size(); ++f) EXPECT_NEAR(j.probabilities()[f], direct[f], 1e-10);
        for (std::size_t lead = 1; lead < n; ++lead) {
            JointDistribution shorter =
                joint_distribution(std::vector<Apparatus>(apparatuses.begin(), apparatuses.begin() + lead), rho);
            JointDistribution marginal = j.marginal(lead);
            for (std::size_t f = 0; f < shorter.size(); ++f) {
                EXPECT_NEAR(marginal.probabilities()[f], shorter.probabilities()[f], 1e-10);
            }
        }
    }
}

TEST(StatisticalEquivalence, NearlyEqualInstrumentsAgree) {
    Rng rng(6);
    Instrument x = random_cp_instrument(3, {2, 1}, rng);
    Instrument y = mixture(1.0 - 1e-13, x, random_cp_instrument(3, {1, 1}, rng));
    Apparatus a = scheme_of_instrument(x), b = scheme_of_instrument(y);
    for (int s = 0; s < 5; ++s) {
        DensityOperator rho = random_state(3, rng);
        for (std::size_t k = 0; k < 2; ++k) {
            EXPECT_NEAR(a.distribution(rho)[k], b.distribution(rho)[k], 1e-12);
            EXPECT_LT(max_abs_diff(a.output_state(rho, k).matrix(), b.output_state(rho, k).matrix()), 1e-11);
        }
    }
}

TEST(Mlpd, InstrumentBackedSequencesAreAffine) {
    Rng rng(7);
    for (std::size_t n = 1; n <= 3; ++n) {
        std::vector<Apparatus> seq;
        for (std::size_t k = 0; k < n; ++k) seq.push_back(scheme_of_instrument(random_cp_instrument(3, {1, 2, 1}, rng)));
        MlpdVerdict v = check_mlpd(seq, 50, 11 + n);
        EXPECT_TRUE(v.affine());
        EXPECT_EQ(v.trials_run, 50u);
    }
}

TEST(Mlpd, EigenbasisApparatusIsViolated) {
    MlpdVerdict v = check_mlpd({eigenbasis_apparatus(2)}, 100, 1);
    ASSERT_FALSE(v.affine());
    const auto& w = *v.witness;
    EXPECT_LE(v.trials_run, 100u);
    EXPECT_NEAR(w.deviation, std::abs(w.of_mixture - w.mixture_of), 1e-15);
    // Independent evaluation of both sides of the witness.
    Apparatus eig = eigenbasis_apparatus(2);
    DensityOperator mixed = DensityOperator::mixture(w.alpha, w.rho1, w.rho2);
    std::size_t x = eig.outcomes().index_of(w.tuple.front());
    double lhs = eig.distribution(mixed)[x];
    double rhs = w.alpha * eig.distribution(w.rho1)[x] + (1 - w.alpha) * eig.distribution(w.rho2)[x];
    EXPECT_NEAR(lhs, w.of_mixture, 1e-12);
    EXPECT_NEAR(rhs, w.mixture_of, 1e-12);
    EXPECT_GT(std::abs(lhs - rhs), 1e-9);
}

TEST(Mlpd, Deterministic) {
    MlpdVerdict a = check_mlpd({eigenbasis_apparatus(3)}, 100, 9);
    MlpdVerdict b = check_mlpd({eigenbasis_apparatus(3)}, 100, 9);
    ASSERT_FALSE(a.affine());
    EXPECT_EQ(a.trials_run, b.trials_run);
    EXPECT_EQ(a.witness->alpha, b.witness->alpha);
}

TEST(PovmFromAffineScheme, Examples) {
    Povm z = povm_from_affine_scheme(luders_z());
    EXPECT_LT(max_abs_diff(z.effect(0), projector(ket0())), 1e-12);
    EXPECT_LT(max_abs_diff(z.effect(1), projector(ket1())), 1e-12);

    Rng rng(8);
    Povm f = random_povm(3, 4, rng);
    Povm recovered = povm_from_affine_scheme(scheme_of_instrument(luders_instrument(f)));
    EXPECT_EQ(recovered.outcomes(), f.outcomes());
    for (std::size_t k = 0; k < 4; ++k) EXPECT_LT(max_abs_diff(recovered.effect(k), f.effect(k)), 1e-9);

    EXPECT_THROW(povm_from_affine_scheme(eigenbasis_apparatus(2)), ValidationError);
}

TEST(SampleTrajectory, DeterministicOutcome) {
    Trajectories t = sample_trajectory({luders_z()}, DensityOperator::pure(ket0()), 1000, 3);
    EXPECT_EQ(t.counts[0], 1000u);
    EXPECT_EQ(t.counts[1], 0u);
    ASSERT_TRUE(t.final_states[0].has_value());
    EXPECT_FALSE(t.final_states[1].has_value());
}

TEST(SampleTrajectory, ZThenXWithinFourSigma) {
    auto start = std::chrono::steady_clock::now();
    const std::uint64_t shots = 100000;
    Trajectories t = sample_trajectory({luders_z(), luders_x()}, DensityOperator::pure(ket0()), shots, 42);
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    EXPECT_LT(seconds, 10.0);
    for (std::size_t f : {0u, 1u}) {
        double sigma = std::sqrt(shots * 0.25);
        EXPECT_LT(std::abs(static_cast<double>(t.counts[f]) - 0.5 * shots), 4 * sigma);
    }
    EXPECT_EQ(t.counts[2] + t.counts[3], 0u);
}

TEST(SampleTrajectory, DeterministicGivenSeedAndRejectsZeroShots) {
    Rng rng(10);
    DensityOperator rho = random_state(2, rng);
    Trajectories a = sample_trajectory({luders_x(), luders_z()}, rho, 500, 5);
    Trajectories b = sample_trajectory({luders_x(), luders_z()}, rho, 500, 5);
    EXPECT_EQ(a.counts, b.counts);
    EXPECT_THROW(sample_trajectory({luders_z()}, rho, 0, 5), ValidationError);
}

}  // namespace
}  // namespace qinst
