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
#include <optional>
#include <vector>

#include "qinst/matrix.hpp"

namespace qinst {

/// Column-stacking vectorization: vec(A)[i + j*d] = A(i, j).
ComplexVector vectorize(const ComplexMatrix& a);
ComplexMatrix unvectorize(const ComplexVector& v, std::size_t d);

/// Kraus operators {K_i} of the map rho -> sum_i K_i rho K_i^dagger.
struct KrausSet {
    std::vector<ComplexMatrix> operators;

    std::size_t dim() const { return operators.empty() ? 0 : static_cast<std::size_t>(operators.front().rows()); }
};

/// A linear map on d x d matrices, stored as its d^2 x d^2 natural matrix
/// acting on column-stacked operators, so vec(L(A)) = N vec(A).
///
/// With this convention the map A -> X A Y has natural matrix Y^T (x) X.
class Superoperator {
  public:
    /// Throws DimensionError unless `natural` is d^2 x d^2 for some d, and
    /// ValidationError on non-finite entries.
    static Superoperator from_natural(ComplexMatrix natural);
    static Superoperator from_kraus(const KrausSet& kraus);
    static Superoperator identity(std::size_t d);
    static Superoperator zero(std::size_t d);
    /// A -> X A Y.
    static Superoperator sandwich(const ComplexMatrix& left, const ComplexMatrix& right);
    /// A -> K A K^dagger.
    static Superoperator conjugation(const ComplexMatrix& k);
    /// A -> A^T. Positive but not completely positive.
    static Superoperator transpose_map(std::size_t d);
    /// A -> Tr[A] sigma.
    static Superoperator replacement(const ComplexMatrix& sigma);

    /// Tabulates any linear map by evaluating it on the matrix units.
    template <typename F>
    static Superoperator from_function(std::size_t d, F&& f) {
        auto n = static_cast<Eigen::Index>(d * d);
        ComplexMatrix natural(n, n);
        for (std::size_t j = 0; j < d; ++j) {
            for (std::size_t i = 0; i < d; ++i) {
                natural.col(static_cast<Eigen::Index>(i + j * d)) = vectorize(f(matrix_unit(d, i, j)));
            }
        }
        return from_natural(std::move(natural));
    }

    std::size_t dim() const { return dim_; }
    const ComplexMatrix& natural() const { return natural_; }

    /// L(a). Throws DimensionError unless a is dim x dim.
    ComplexMatrix operator()(const ComplexMatrix& a) const;

    Superoperator& operator+=(const Superoperator& other);
    friend Superoperator operator+(Superoperator a, const Superoperator& b) { return a += b; }
    friend Superoperator operator-(const Superoperator& a, const Superoperator& b);
    friend Superoperator operator*(Complex s, const Superoperator& a);
    friend Superoperator operator*(double s, const Superoperator& a) { return Complex(s, 0.0) * a; }

  private:
    Superoperator(std::size_t dim, ComplexMatrix natural) : dim_(dim), natural_(std::move(natural)) {}

    std::size_t dim_;
    ComplexMatrix natural_;
};

/// outer o inner.
Superoperator compose(const Superoperator& outer, const Superoperator& inner);

ComplexMatrix apply(const Superoperator& l, const ComplexMatrix& a);

/// The dual L* defined by Tr[(L* A) rho] = Tr[A (L rho)].
Superoperator dual(const Superoperator& l);

/// sum_ij L(|i><j|) (x) |i><j|, output factor first.
ComplexMatrix choi(const Superoperator& l);

double min_choi_eigenvalue(const Superoperator& l);

/// Kraus operators from the eigendecomposition of the Choi matrix, keeping
/// eigenvalues above 1e-10. Throws NotCompletelyPositiveError if the Choi
/// matrix fails is_psd at `tol`.
KrausSet kraus(const Superoperator& l, double tol = 1e-9);

bool is_completely_positive(const Superoperator& l, double tol = 1e-9);

/// L*(I) == I entrywise within tol.
bool is_trace_preserving(const Superoperator& l, double tol = 1e-9);

/// Largest entry of |L*(I) - I|.
double trace_preservation_defect(const Superoperator& l);

/// Frobenius distance of natural matrices.
double distance(const Superoperator& a, const Superoperator& b);

/// Outcome of a sampled positivity test. A witness is definitive; its absence
/// only means no violation was found.
class PositivityVerdict {
  public:
    struct Witness {
        ComplexMatrix state;  // rank-1 input state
        ComplexMatrix output;
        double min_eigenvalue;
    };

    static PositivityVerdict plausibly_positive() { return PositivityVerdict(std::nullopt); }
    static PositivityVerdict violated(Witness w) { return PositivityVerdict(std::move(w)); }

    bool is_violated() const { return witness_.has_value(); }
    const std::optional<Witness>& witness() const { return witness_; }

  private:
    explicit PositivityVerdict(std::optional<Witness> w) : witness_(std::move(w)) {}
    std::optional<Witness> witness_;
};

/// Applies l to `samples` random pure states and reports the first output
/// with an eigenvalue below -1e-9. Completely positive maps short-circuit.
PositivityVerdict is_positive_sampled(const Superoperator& l, std::size_t samples, std::uint64_t seed);

}  // namespace qinst
