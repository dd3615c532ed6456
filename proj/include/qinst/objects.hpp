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
#include <optional>
#include <string>
#include <vector>

#include "qinst/matrix.hpp"
#include "qinst/superop.hpp"

namespace qinst {

/// Tolerance used by the invariants of states, observables and POVMs.
inline constexpr double kObjectTol = 1e-10;

/// Finite, ordered set of distinct outcome labels.
class OutcomeSpace {
  public:
    /// Throws ValidationError on an empty list or duplicate labels.
    explicit OutcomeSpace(std::vector<std::string> labels);

    /// "0", "1", ..., "n-1".
    static OutcomeSpace numbered(std::size_t n);

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    std::optional<std::size_t> find(const std::string& label) const;
    /// Throws ValidationError for unknown labels.
    std::size_t index_of(const std::string& label) const;

    friend bool operator==(const OutcomeSpace&, const OutcomeSpace&) = default;

  private:
    std::vector<std::string> labels_;
};

/// A density operator: Hermitian, positive semidefinite, unit trace.
class DensityOperator {
  public:
    /// Validates and symmetrizes `m`. Throws ValidationError on failure.
    explicit DensityOperator(const ComplexMatrix& m);

    static DensityOperator maximally_mixed(std::size_t d);
    /// |i><i|.
    static DensityOperator basis_state(std::size_t d, std::size_t i);
    /// |psi><psi| for a (not necessarily normalized) nonzero vector.
    static DensityOperator pure(const ComplexVector& psi);
    /// Convex combination weight * a + (1 - weight) * b.
    static DensityOperator mixture(double weight, const DensityOperator& a, const DensityOperator& b);

    std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
    const ComplexMatrix& matrix() const { return matrix_; }

  private:
    ComplexMatrix matrix_;
};

/// A finite projection-valued measure: E(x) orthogonal projections, mutually
/// orthogonal, summing to the identity. Zero projections are allowed.
class SharpObservable {
  public:
    /// Throws ValidationError if any invariant fails, DimensionError on shape
    /// mismatch.
    SharpObservable(OutcomeSpace outcomes, std::vector<ComplexMatrix> projections);

    /// Projections onto the columns of a unitary, one outcome per column.
    static SharpObservable from_basis(const ComplexMatrix& unitary, OutcomeSpace outcomes);
    /// Computational basis measurement, outcomes "0".."d-1".
    static SharpObservable computational(std::size_t d);
    /// The single-outcome observable {I}.
    static SharpObservable trivial(std::size_t d, std::string label = "0");

    std::size_t dim() const { return dim_; }
    const OutcomeSpace& outcomes() const { return outcomes_; }
    const std::vector<ComplexMatrix>& projections() const { return projections_; }
    const ComplexMatrix& projection(std::size_t i) const { return projections_.at(i); }
    /// E(Delta) for a set of outcome indices.
    ComplexMatrix projection_of(const std::vector<std::size_t>& subset) const;

  private:
    std::size_t dim_;
    OutcomeSpace outcomes_;
    std::vector<ComplexMatrix> projections_;
};

/// A finite POVM: positive effects summing to the identity.
class Povm {
  public:
    Povm(OutcomeSpace outcomes, std::vector<ComplexMatrix> effects);

    static Povm from_observable(const SharpObservable& e);

    std::size_t dim() const { return dim_; }
    const OutcomeSpace& outcomes() const { return outcomes_; }
    const std::vector<ComplexMatrix>& effects() const { return effects_; }
    const ComplexMatrix& effect(std::size_t i) const { return effects_.at(i); }

  private:
    std::size_t dim_;
    OutcomeSpace outcomes_;
    std::vector<ComplexMatrix> effects_;
};

/// Probability distribution over an outcome space.
class OutcomeDistribution {
  public:
    /// Entries in [-1e-12, 0) are clamped to zero; the total must be within
    /// 1e-9 of one and is then renormalized. Anything else throws
    /// ValidationError.
    OutcomeDistribution(OutcomeSpace outcomes, std::vector<double> probabilities);

    const OutcomeSpace& outcomes() const { return outcomes_; }
    const std::vector<double>& probabilities() const { return probabilities_; }
    double operator[](std::size_t i) const { return probabilities_.at(i); }
    double probability(const std::string& label) const { return probabilities_.at(outcomes_.index_of(label)); }
    /// Sum over a set of outcome indices.
    double probability_of(const std::vector<std::size_t>& subset) const;

  private:
    OutcomeSpace outcomes_;
    std::vector<double> probabilities_;
};

/// p(x) = Tr[E(x) rho].
OutcomeDistribution born_distribution(const SharpObservable& e, const DensityOperator& rho);
/// p(x) = Tr[F(x) rho].
OutcomeDistribution born_distribution(const Povm& f, const DensityOperator& rho);

/// Real part of Tr[a b].
double trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Rank of a projection: number of eigenvalues above 1/2.
std::size_t projection_rank(const ComplexMatrix& p);

/// In finite dimension the commutant of E is the direct sum of the full
/// matrix algebras on the ranges of the E(x); it is abelian iff every E(x)
/// has rank at most one.
bool is_nondegenerate(const SharpObservable& e);

/// rho -> sum_x E(x) rho E(x).
Superoperator luders_pinching(const SharpObservable& e);

}  // namespace qinst
