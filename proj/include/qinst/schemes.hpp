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
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qinst/instruments.hpp"
#include "qinst/objects.hpp"

namespace qinst {

/// Outcome probabilities at or below this are treated as null events.
inline constexpr double kNullProbability = 1e-12;

/// A measuring apparatus described by its output distribution P and state
/// reduction Q. It is either backed by an instrument or wraps host-supplied
/// functions ("black box"). Black-box outputs are validated on every call;
/// the wrapped functions must be reentrant and free of side effects.
class Apparatus {
  public:
    /// Raw outcome probabilities, one per outcome in order.
    using DistributionFn = std::function<std::vector<double>(const DensityOperator&)>;
    /// Output state after the outcome with the given index.
    using ReductionFn = std::function<ComplexMatrix(const DensityOperator&, std::size_t)>;

    static Apparatus from_instrument(std::string label, Instrument instrument);
    static Apparatus black_box(std::string label, std::size_t dim, OutcomeSpace outcomes, DistributionFn distribution,
                               ReductionFn reduction);

    const std::string& label() const { return label_; }
    std::size_t dim() const;
    const OutcomeSpace& outcomes() const;
    /// The backing instrument, or nullptr for a black box.
    const Instrument* instrument() const { return std::get_if<Instrument>(&scheme_); }

    /// P(rho).
    OutcomeDistribution distribution(const DensityOperator& rho) const;

    /// Q(rho, x). For an instrument, X({x}) rho / Tr[X({x}) rho] when the
    /// trace exceeds kNullProbability, otherwise the maximally mixed state.
    DensityOperator output_state(const DensityOperator& rho, std::size_t outcome) const;

  private:
    struct BlackBox {
        std::size_t dim;
        OutcomeSpace outcomes;
        DistributionFn distribution;
        ReductionFn reduction;
    };

    Apparatus(std::string label, std::variant<Instrument, BlackBox> scheme)
        : label_(std::move(label)), scheme_(std::move(scheme)) {}

    void require_dim(const DensityOperator& rho) const;

    std::string label_;
    std::variant<Instrument, BlackBox> scheme_;
};

/// P(rho)(x) = Tr[X({x}) rho], Q as in Apparatus::output_state.
Apparatus scheme_of_instrument(const Instrument& x, std::string label = "x");

/// Black box that measures a state in its own eigenbasis: outcome k (in
/// ascending eigenvalue order) occurs with probability lambda_k and leaves
/// the k-th eigenvector. Its statistics are not affine in the input state.
Apparatus eigenbasis_apparatus(std::size_t dim, std::string label = "eig");

/// The collective scheme (P, R) of an apparatus:
///   R(D, rho) = sum_{x in D} P(rho)(x) Q(rho, x) / P(rho)(D).
class CollectiveScheme {
  public:
    explicit CollectiveScheme(Apparatus apparatus) : apparatus_(std::move(apparatus)) {}

    const Apparatus& apparatus() const { return apparatus_; }

    /// Throws UndefinedReductionError when P(rho)(D) <= kNullProbability.
    DensityOperator reduction(const std::vector<std::size_t>& subset, const DensityOperator& rho) const;
    DensityOperator reduction(const std::vector<std::string>& labels, const DensityOperator& rho) const;

    /// Largest entry of |sum_x P(rho)(x) R({x}, rho) - R(Lambda, rho)| over
    /// outcomes of nonzero probability.
    double consistency_defect(const DensityOperator& rho) const;

  private:
    Apparatus apparatus_;
};

CollectiveScheme collective_of(const Apparatus& a);

/// Joint distribution over a product of outcome spaces. Tuples are stored
/// row-major: the first apparatus is the most significant coordinate.
class JointDistribution {
  public:
    /// Entries in [-1e-12, 0) are clamped to zero; the total must be within 1e-9 of one.
    JointDistribution(std::vector<OutcomeSpace> spaces, std::vector<double> probabilities);

    const std::vector<OutcomeSpace>& spaces() const { return spaces_; }
    const std::vector<double>& probabilities() const { return probabilities_; }
    std::size_t size() const { return probabilities_.size(); }

    std::size_t flat_index(const std::vector<std::size_t>& tuple) const;
    std::vector<std::size_t> tuple(std::size_t flat) const;
    std::vector<std::string> labels(std::size_t flat) const;
    double probability(const std::vector<std::size_t>& tuple) const { return probabilities_.at(flat_index(tuple)); }
    double probability(const std::vector<std::string>& labels) const;

    /// Distribution of the first `leading` coordinates.
    JointDistribution marginal(std::size_t leading) const;

  private:
    std::vector<OutcomeSpace> spaces_;
    std::vector<double> probabilities_;
};

/// Successive-measurement statistics by the recursion
///   Pr{x1, ..., xn || rho} = Pr{x2, ..., xn || rho_{x1}} Pr{x1 || rho},
/// rho_{x1} being the output state of the first apparatus. Branches with
/// probability at most kNullProbability are dropped.
JointDistribution joint_distribution(const std::vector<Apparatus>& sequence, const DensityOperator& rho);

/// Result of a mixing-law test.
struct MlpdVerdict {
    struct Witness {
        DensityOperator rho1;
        DensityOperator rho2;
        double alpha;
        std::vector<std::string> tuple;
        double of_mixture;   // Pr{tuple || alpha rho1 + (1 - alpha) rho2}
        double mixture_of;   // alpha Pr{tuple || rho1} + (1 - alpha) Pr{tuple || rho2}
        double deviation;
    };

    std::optional<Witness> witness;
    std::size_t trials_run = 0;

    bool affine() const { return !witness.has_value(); }
};

/// Draws (rho1, rho2, alpha) triples and compares the joint distribution of
/// the mixture with the mixture of joint distributions. Returns the first
/// witness whose deviation exceeds tol.
MlpdVerdict check_mlpd(const std::vector<Apparatus>& sequence, std::size_t trials, std::uint64_t seed,
                       double tol = 1e-9);

/// Rebuilds the POVM of an apparatus from its output distribution on the
/// probe states |i>, (|i>+|j>)/sqrt2 and (|i>+i|j>)/sqrt2, then validates
/// Tr[F(x) rho] = P(rho)(x) within tol on 20 fresh random mixed states.
/// Throws ValidationError if the reconstruction is not a POVM or fails
/// validation (the scheme is not affine).
Povm povm_from_affine_scheme(const Apparatus& a, std::uint64_t seed = 2024, double tol = 1e-8);

/// Tally of sampled successive measurements.
struct Trajectories {
    std::vector<OutcomeSpace> spaces;
    std::vector<std::uint64_t> counts;                       // row-major, as in JointDistribution
    std::vector<std::optional<DensityOperator>> final_states; // first shot reaching each tuple
    std::uint64_t shots = 0;
};

/// Samples `shots` runs of the sequence from rho with one seeded RNG stream.
/// Throws ValidationError when shots == 0.
Trajectories sample_trajectory(const std::vector<Apparatus>& sequence, const DensityOperator& rho, std::uint64_t shots,
                               std::uint64_t seed);

}  // namespace qinst
