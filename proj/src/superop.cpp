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

#include "qinst/superop.hpp"

#include <cmath>
#include <string>

#include "qinst/errors.hpp"
#include "qinst/random.hpp"

namespace qinst {

namespace {

constexpr double kKrausCutoff = 1e-10;
constexpr double kPositivityFloor = 1e-9;

std::size_t dim_from_natural(const ComplexMatrix& n) {
    if (n.rows() != n.cols()) {
        throw DimensionError("superoperator: natural matrix must be square");
    }
    auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n.rows()))));
    if (static_cast<Eigen::Index>(d * d) != n.rows()) {
        throw DimensionError("superoperator: natural matrix size " + std::to_string(n.rows()) +
                             " is not a perfect square");
    }
    return d;
}

void require_same_dim(const Superoperator& a, const Superoperator& b, const char* where) {
    if (a.dim() != b.dim()) {
        throw DimensionError(std::string(where) + ": dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                             std::to_string(b.dim()) + ")");
    }
}

}  // namespace

ComplexVector vectorize(const ComplexMatrix& a) {
    return Eigen::Map<const ComplexVector>(a.data(), a.size());
}

ComplexMatrix unvectorize(const ComplexVector& v, std::size_t d) {
    if (static_cast<std::size_t>(v.size()) != d * d) {
        throw DimensionError("unvectorize: length is not d^2");
    }
    auto n = static_cast<Eigen::Index>(d);
    return Eigen::Map<const ComplexMatrix>(v.data(), n, n);
}

Superoperator Superoperator::from_natural(ComplexMatrix natural) {
    std::size_t d = dim_from_natural(natural);
    if (!all_finite(natural)) {
        throw ValidationError("superoperator: non-finite entries");
    }
    return Superoperator(d, std::move(natural));
}

Superoperator Superoperator::from_kraus(const KrausSet& kraus) {
    if (kraus.operators.empty()) {
        throw ValidationError("Kraus set is empty");
    }
    std::size_t d = kraus.dim();
    auto n = static_cast<Eigen::Index>(d * d);
    ComplexMatrix natural = ComplexMatrix::Zero(n, n);
    for (const auto& k : kraus.operators) {
        if (k.rows() != static_cast<Eigen::Index>(d) || k.cols() != static_cast<Eigen::Index>(d)) {
            throw DimensionError("Kraus operators must all be square of the same size");
        }
        natural += tensor_product(k.conjugate(), k);
    }
    return from_natural(std::move(natural));
}

Superoperator Superoperator::identity(std::size_t d) {
    auto n = static_cast<Eigen::Index>(d * d);
    return Superoperator(d, ComplexMatrix::Identity(n, n));
}

Superoperator Superoperator::zero(std::size_t d) {
    auto n = static_cast<Eigen::Index>(d * d);
    return Superoperator(d, ComplexMatrix::Zero(n, n));
}

Superoperator Superoperator::sandwich(const ComplexMatrix& left, const ComplexMatrix& right) {
    if (left.rows() != left.cols() || right.rows() != right.cols() || left.rows() != right.rows()) {
        throw DimensionError("sandwich: operands must be square of equal size");
    }
    return from_natural(tensor_product(right.transpose(), left));
}

Superoperator Superoperator::conjugation(const ComplexMatrix& k) { return sandwich(k, k.adjoint()); }

Superoperator Superoperator::transpose_map(std::size_t d) {
    auto n = static_cast<Eigen::Index>(d * d);
    auto di = static_cast<Eigen::Index>(d);
    ComplexMatrix natural = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < di; ++i) {
        for (Eigen::Index j = 0; j < di; ++j) {
            natural(j + i * di, i + j * di) = 1.0;
        }
    }
    return Superoperator(d, std::move(natural));
}

Superoperator Superoperator::replacement(const ComplexMatrix& sigma) {
    if (sigma.rows() != sigma.cols()) {
        throw DimensionError("replacement: state must be square");
    }
    ComplexVector trace_row = vectorize(ComplexMatrix::Identity(sigma.rows(), sigma.cols()));
    return from_natural(vectorize(sigma) * trace_row.transpose());
}

ComplexMatrix Superoperator::operator()(const ComplexMatrix& a) const {
    auto d = static_cast<Eigen::Index>(dim_);
    if (a.rows() != d || a.cols() != d) {
        throw DimensionError("apply: operand is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                             ", superoperator acts on " + std::to_string(dim_) + "x" + std::to_string(dim_));
    }
    ComplexVector out = natural_ * vectorize(a);
    return unvectorize(out, dim_);
}

Superoperator& Superoperator::operator+=(const Superoperator& other) {
    require_same_dim(*this, other, "superoperator sum");
    natural_ += other.natural_;
    return *this;
}

Superoperator operator-(const Superoperator& a, const Superoperator& b) {
    require_same_dim(a, b, "superoperator difference");
    return Superoperator(a.dim_, a.natural_ - b.natural_);
}

Superoperator operator*(Complex s, const Superoperator& a) { return Superoperator(a.dim_, s * a.natural_); }

Superoperator compose(const Superoperator& outer, const Superoperator& inner) {
    require_same_dim(outer, inner, "compose");
    return Superoperator::from_natural(outer.natural() * inner.natural());
}

ComplexMatrix apply(const Superoperator& l, const ComplexMatrix& a) { return l(a); }

Superoperator dual(const Superoperator& l) {
    // vec(L* A) = P N^T P vec(A), with P the transposition permutation.
    const auto d = static_cast<Eigen::Index>(l.dim());
    const ComplexMatrix& n = l.natural();
    auto swap_index = [d](Eigen::Index p) { return (p / d) + (p % d) * d; };
    ComplexMatrix out(n.rows(), n.cols());
    for (Eigen::Index p = 0; p < n.rows(); ++p) {
        for (Eigen::Index q = 0; q < n.cols(); ++q) {
            out(p, q) = n(swap_index(q), swap_index(p));
        }
    }
    return Superoperator::from_natural(std::move(out));
}

ComplexMatrix choi(const Superoperator& l) {
    // Choi(a*d + b, c*d + e) = L(|b><e|)(a, c) = N(a + c*d, b + e*d).
    const auto d = static_cast<Eigen::Index>(l.dim());
    const ComplexMatrix& n = l.natural();
    ComplexMatrix out(d * d, d * d);
    for (Eigen::Index a = 0; a < d; ++a) {
        for (Eigen::Index b = 0; b < d; ++b) {
            for (Eigen::Index c = 0; c < d; ++c) {
                for (Eigen::Index e = 0; e < d; ++e) {
                    out(a * d + b, c * d + e) = n(a + c * d, b + e * d);
                }
            }
        }
    }
    return out;
}

double min_choi_eigenvalue(const Superoperator& l) { return min_eigenvalue(choi(l)); }

KrausSet kraus(const Superoperator& l, double tol) {
    ComplexMatrix c = choi(l);
    if (!is_psd(c, tol)) {
        double lowest = min_eigenvalue(c);
        throw NotCompletelyPositiveError(
            "map is not completely positive (min Choi eigenvalue " + std::to_string(lowest) + ")", lowest);
    }
    HermitianEigen eig = hermitian_eigen(c, tol);
    const auto d = static_cast<Eigen::Index>(l.dim());
    KrausSet out;
    // Largest eigenvalues first.
    for (Eigen::Index k = eig.values.size() - 1; k >= 0; --k) {
        double lambda = eig.values(k);
        if (lambda <= kKrausCutoff) break;
        ComplexMatrix op(d, d);
        for (Eigen::Index a = 0; a < d; ++a) {
            for (Eigen::Index b = 0; b < d; ++b) {
                op(a, b) = std::sqrt(lambda) * eig.vectors(a * d + b, k);
            }
        }
        out.operators.push_back(std::move(op));
    }
    if (out.operators.empty()) {
        out.operators.push_back(ComplexMatrix::Zero(d, d));
    }
    return out;
}

bool is_completely_positive(const Superoperator& l, double tol) { return is_psd(choi(l), tol); }

double trace_preservation_defect(const Superoperator& l) {
    auto d = static_cast<Eigen::Index>(l.dim());
    ComplexMatrix id = ComplexMatrix::Identity(d, d);
    return max_abs_diff(dual(l)(id), id);
}

bool is_trace_preserving(const Superoperator& l, double tol) { return trace_preservation_defect(l) <= tol; }

double distance(const Superoperator& a, const Superoperator& b) {
    require_same_dim(a, b, "distance");
    return (a.natural() - b.natural()).norm();
}

PositivityVerdict is_positive_sampled(const Superoperator& l, std::size_t samples, std::uint64_t seed) {
    if (is_completely_positive(l)) {
        return PositivityVerdict::plausibly_positive();
    }
    Rng rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
        ComplexMatrix state = random_pure_density(l.dim(), rng);
        ComplexMatrix out = l(state);
        double lowest = min_eigenvalue(out);
        if (lowest < -kPositivityFloor || hermiticity_defect(out) > kPositivityFloor) {
            return PositivityVerdict::violated({std::move(state), std::move(out), lowest});
        }
    }
    return PositivityVerdict::plausibly_positive();
}

}  // namespace qinst
