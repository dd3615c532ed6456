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

#include "qinst/check.hpp"
#include "qinst/instruments.hpp"
#include "qinst/objects.hpp"

namespace qinst {

/// An indirect measurement model (K, sigma, U, E): the system is coupled to
/// an ancilla prepared in sigma by the unitary U on system (x) ancilla, and the
/// probe observable E is then measured on the ancilla. Tensor ordering is
/// system first throughout.
class IndirectModel {
  public:
    /// Throws DimensionError on inconsistent sizes and ValidationError if the
    /// coupling is not unitary within 1e-10.
    IndirectModel(std::size_t sys_dim, DensityOperator ancilla_state, ComplexMatrix coupling, SharpObservable probe);

    std::size_t sys_dim() const { return sys_dim_; }
    std::size_t anc_dim() const { return ancilla_state_.dim(); }
    const DensityOperator& ancilla_state() const { return ancilla_state_; }
    const ComplexMatrix& coupling() const { return coupling_; }
    const SharpObservable& probe() const { return probe_; }

  private:
    std::size_t sys_dim_;
    DensityOperator ancilla_state_;
    ComplexMatrix coupling_;
    SharpObservable probe_;
};

/// X({x}) rho = Tr_K[(I (x) E(x)) U (rho (x) sigma) U^dagger].
Instrument instrument_of_model(const IndirectModel& m);

/// Builds a model with pure ancilla |0> realizing a completely positive
/// instrument. The ancilla has one basis vector per Kraus operator (at least
/// two); the coupling is the Gram-Schmidt completion of the isometry
/// psi (x) |0> -> sum_{x,i} K_{x,i} psi (x) |x,i>, and the probe projects onto
/// the Kraus slots of each outcome. Unused ancilla levels go to the
/// lexicographically smallest outcome label.
///
/// Throws NotCompletelyPositiveError if some X({x}) is not CP.
IndirectModel dilate(const Instrument& x, double tol = 1e-9);

/// Compares instrument_of_model(m) with x map by map (Frobenius distance of
/// natural matrices). Throws DimensionError on dimension or outcome mismatch.
CheckReport verify_realization(const IndirectModel& m, const Instrument& x, double tol = 1e-8);

}  // namespace qinst
