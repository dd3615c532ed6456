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

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace qinst {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Kronecker product. Index (i, k) of the result is i * b.rows() + k, so the
/// first factor is the most significant one ("system first").
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Traces out the second (ancilla) factor of an operator on C^sys (x) C^anc.
ComplexMatrix partial_trace_ancilla(const ComplexMatrix& m, std::size_t sys_dim, std::size_t anc_dim);

/// Traces out the first (system) factor.
ComplexMatrix partial_trace_system(const ComplexMatrix& m, std::size_t sys_dim, std::size_t anc_dim);

/// Largest absolute entry of m - m^dagger.
double hermiticity_defect(const ComplexMatrix& m);

/// Ascending eigenvalues of a Hermitian matrix. The input is symmetrized first;
/// throws ValidationError if its asymmetry exceeds `tol * max(1, max |m_ij|)`.
RealVector hermitian_eigenvalues(const ComplexMatrix& m, double tol = 1e-9);

struct HermitianEigen {
    RealVector values;     // ascending
    ComplexMatrix vectors; // columns
};

HermitianEigen hermitian_eigen(const ComplexMatrix& m, double tol = 1e-9);

/// True iff m is Hermitian within tol and its smallest eigenvalue is at least
/// -max(tol * max(1, spectral radius), 1e-12). Throws DimensionError on
/// non-square input.
bool is_psd(const ComplexMatrix& m, double tol = 1e-10);

/// Smallest eigenvalue of the Hermitian part of m.
double min_eigenvalue(const ComplexMatrix& m);

/// Extends an isometry v (n x k, v^dagger v = I_k) to an n x n unitary whose
/// first k columns equal v. Remaining columns come from Gram-Schmidt over the
/// standard basis in index order.
ComplexMatrix unitary_completion(const ComplexMatrix& v);

/// Frobenius norm of U^dagger U - I.
double unitarity_defect(const ComplexMatrix& u);

/// |i><j| in dimension d.
ComplexMatrix matrix_unit(std::size_t d, std::size_t i, std::size_t j);

bool all_finite(const ComplexMatrix& m);

/// Largest absolute entry of a - b.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace qinst
