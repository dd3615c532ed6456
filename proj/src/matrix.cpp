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

#include <algorithm>
#include <cmath>
#include <string>

#include "qinst/errors.hpp"

namespace qinst {

namespace {

constexpr double kPsdAbsoluteFloor = 1e-12;
constexpr double kIsometryTol = 1e-10;
constexpr double kCompletionSkip = 1e-8;

void require_square(const ComplexMatrix& m, const char* where) {
    if (m.rows() != m.cols()) {
        throw DimensionError(std::string(where) + ": expected a square matrix, got " + std::to_string(m.rows()) +
                             "x" + std::to_string(m.cols()));
    }
}

ComplexMatrix symmetrized(const ComplexMatrix& m, double tol) {
    require_square(m, "hermitian_eigen");
    double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    double defect = hermiticity_defect(m);
    if (defect > tol * scale) {
        throw ValidationError("matrix is not Hermitian (asymmetry " + std::to_string(defect) + ")");
    }
    return (m + m.adjoint()) / 2.0;
}

}  // namespace

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix partial_trace_ancilla(const ComplexMatrix& m, std::size_t sys_dim, std::size_t anc_dim) {
    auto n = static_cast<Eigen::Index>(sys_dim * anc_dim);
    if (m.rows() != n || m.cols() != n) {
        throw DimensionError("partial_trace_ancilla: expected " + std::to_string(n) + "x" + std::to_string(n) +
                             " input, got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    auto ds = static_cast<Eigen::Index>(sys_dim);
    auto da = static_cast<Eigen::Index>(anc_dim);
    ComplexMatrix out = ComplexMatrix::Zero(ds, ds);
    for (Eigen::Index s = 0; s < ds; ++s) {
        for (Eigen::Index t = 0; t < ds; ++t) {
            Complex acc = 0.0;
            for (Eigen::Index a = 0; a < da; ++a) {
                acc += m(s * da + a, t * da + a);
            }
            out(s, t) = acc;
        }
    }
    return out;
}

ComplexMatrix partial_trace_system(const ComplexMatrix& m, std::size_t sys_dim, std::size_t anc_dim) {
    auto n = static_cast<Eigen::Index>(sys_dim * anc_dim);
    if (m.rows() != n || m.cols() != n) {
        throw DimensionError("partial_trace_system: dimension mismatch");
    }
    auto ds = static_cast<Eigen::Index>(sys_dim);
    auto da = static_cast<Eigen::Index>(anc_dim);
    ComplexMatrix out = ComplexMatrix::Zero(da, da);
    for (Eigen::Index s = 0; s < ds; ++s) {
        out += m.block(s * da, s * da, da, da);
    }
    return out;
}

double hermiticity_defect(const ComplexMatrix& m) {
    if (m.size() == 0) return 0.0;
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m, double tol) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(symmetrized(m, tol), Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

HermitianEigen hermitian_eigen(const ComplexMatrix& m, double tol) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(symmetrized(m, tol));
    return {solver.eigenvalues(), solver.eigenvectors()};
}

bool is_psd(const ComplexMatrix& m, double tol) {
    require_square(m, "is_psd");
    if (m.size() == 0) return true;
    double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if (!all_finite(m) || hermiticity_defect(m) > tol * scale) {
        return false;
    }
    ComplexMatrix h = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    const RealVector& ev = solver.eigenvalues();
    double radius = ev.cwiseAbs().maxCoeff();
    double threshold = std::max(tol * std::max(1.0, radius), kPsdAbsoluteFloor);
    return ev(0) >= -threshold;
}

double min_eigenvalue(const ComplexMatrix& m) {
    require_square(m, "min_eigenvalue");
    ComplexMatrix h = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
}

ComplexMatrix unitary_completion(const ComplexMatrix& v) {
    const Eigen::Index n = v.rows();
    const Eigen::Index k = v.cols();
    if (k > n) {
        throw DimensionError("unitary_completion: more columns than rows");
    }
    double defect = (v.adjoint() * v - ComplexMatrix::Identity(k, k)).norm();
    if (!all_finite(v) || defect > kIsometryTol) {
        throw ValidationError("unitary_completion: input is not an isometry (||V^dagger V - I|| = " +
                              std::to_string(defect) + ")");
    }

    ComplexMatrix u(n, n);
    u.leftCols(k) = v;
    Eigen::Index filled = k;
    for (Eigen::Index e = 0; e < n && filled < n; ++e) {
        ComplexVector candidate = ComplexVector::Unit(n, e);
        // Two passes of modified Gram-Schmidt keep the columns orthonormal to
        // machine precision.
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index c = 0; c < filled; ++c) {
                candidate -= u.col(c) * u.col(c).dot(candidate);
            }
        }
        double norm = candidate.norm();
        if (norm < kCompletionSkip) continue;
        u.col(filled++) = candidate / norm;
    }
    if (filled != n) {
        throw ValidationError("unitary_completion: failed to span the full space");
    }
    return u;
}

double unitarity_defect(const ComplexMatrix& u) {
    if (u.rows() != u.cols()) {
        throw DimensionError("unitarity_defect: non-square input");
    }
    return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).norm();
}

ComplexMatrix matrix_unit(std::size_t d, std::size_t i, std::size_t j) {
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
    return m;
}

bool all_finite(const ComplexMatrix& m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        const Complex& z = m.data()[i];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("max_abs_diff: shape mismatch");
    }
    if (a.size() == 0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace qinst
