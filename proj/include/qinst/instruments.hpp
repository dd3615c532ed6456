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
#include <string>
#include <vector>

#include "qinst/check.hpp"
#include "qinst/objects.hpp"
#include "qinst/superop.hpp"

namespace qinst {

/// A finite instrument: one positive superoperator X({x}) per outcome whose
/// sum is trace preserving. Maps of outcome subsets are sums of the singleton
/// maps, so finite additivity holds by construction.
class Instrument {
  public:
    /// Validated construction. Throws DimensionError on shape mismatch and
    /// ValidationError if the total map is not trace preserving within `tol`
    /// or a sampled state exposes a non-positive member map.
    static Instrument create(OutcomeSpace outcomes, std::vector<Superoperator> maps, double tol = 1e-9);

    /// Construction without the normalization and positivity checks. Intended
    /// for diagnostics on malformed inputs; see validation_report().
    static Instrument unchecked(OutcomeSpace outcomes, std::vector<Superoperator> maps);

    std::size_t dim() const { return dim_; }
    const OutcomeSpace& outcomes() const { return outcomes_; }
    const std::vector<Superoperator>& maps() const { return maps_; }
    const Superoperator& map(std::size_t i) const { return maps_.at(i); }
    const Superoperator& map(const std::string& label) const { return maps_.at(outcomes_.index_of(label)); }
    /// X(Delta) for a set of outcome indices.
    Superoperator map_of(const std::vector<std::size_t>& subset) const;

    /// Normalization and per-map positivity, as named checks.
    CheckReport validation_report(double tol = 1e-9) const;

  private:
    Instrument(std::size_t dim, OutcomeSpace outcomes, std::vector<Superoperator> maps)
        : dim_(dim), outcomes_(std::move(outcomes)), maps_(std::move(maps)) {}

    std::size_t dim_;
    OutcomeSpace outcomes_;
    std::vector<Superoperator> maps_;
};

/// One density operator per outcome.
class StateFamily {
  public:
    StateFamily(OutcomeSpace outcomes, std::vector<DensityOperator> states);

    std::size_t dim() const { return states_.front().dim(); }
    const OutcomeSpace& outcomes() const { return outcomes_; }
    const std::vector<DensityOperator>& states() const { return states_; }
    const DensityOperator& state(std::size_t i) const { return states_.at(i); }

  private:
    OutcomeSpace outcomes_;
    std::vector<DensityOperator> states_;
};

/// Number of samples used when positivity of a non-CP member map is probed.
inline constexpr std::size_t kPositivitySamples = 256;
inline constexpr std::uint64_t kPositivitySeed = 0x5eed;

/// F(x) = X({x})*(I), unvalidated.
std::vector<ComplexMatrix> effects_of(const Instrument& x);

/// The POVM of the instrument.
Povm povm_of(const Instrument& x);

/// T = sum_x X({x}).
Superoperator total_operation(const Instrument& x);

/// True iff povm_of(x) equals E entrywise within tol. Outcomes are matched by
/// label; differing label sets count as incompatible.
bool is_e_compatible(const Instrument& x, const SharpObservable& e, double tol = 1e-9);

/// True iff X({x})*(A) = F(x) T*(A) for every x and every matrix unit A.
bool is_decomposable(const Instrument& x, double tol = 1e-9);

/// Largest violation of X({x})*(A) = F(x) T*(A) over x and matrix units.
double decomposability_defect(const Instrument& x);

/// Evaluates, for Delta over the singletons and the whole outcome space, the
/// identities
///   X(D) rho = T[E(D) rho] = T[rho E(D)] = T[E(D) rho E(D)]
///   X(D)* B  = E(D) T*(B)  = T*(B) E(D) = E(D) T*(B) E(D)
/// on the matrix-unit basis, plus the compatibility X(D)*(I) = E(D) itself.
/// Throws DimensionError if dimensions or outcome labels differ.
CheckReport check_decomposition_identities(const Instrument& x, const SharpObservable& e, double tol = 1e-9);

/// An operation T is E-compatible when T o Phi_E = T, Phi_E the Luders
/// pinching. Throws ValidationError if T is not trace preserving within tol.
bool is_e_compatible_operation(const Superoperator& t, const SharpObservable& e, double tol = 1e-9);

/// X({x}) rho = T[E(x) rho E(x)]. Throws IncompatibleError unless
/// is_e_compatible_operation(t, e, tol).
Instrument instrument_from_total_operation(const SharpObservable& e, const Superoperator& t, double tol = 1e-9);

/// T rho = sum_x rho_x Tr[E(x) rho]. Throws DegenerateObservableError if E is
/// degenerate and DimensionError if the outcome labels differ.
Superoperator operation_from_state_family(const SharpObservable& e, const StateFamily& family);

/// Inverse of operation_from_state_family: rho_x = T[E(x)] / Tr[E(x)] for
/// E(x) != 0, and the maximally mixed state on E-null outcomes.
StateFamily state_family_of_operation(const SharpObservable& e, const Superoperator& t, double tol = 1e-9);

/// X({x}) rho = Tr[E(x) rho] rho_x. Requires a nondegenerate E.
Instrument instrument_from_state_family(const SharpObservable& e, const StateFamily& family);

/// X({x}) rho = Tr[F(x) rho] rho_x for any POVM.
Instrument measure_and_prepare(const Povm& f, const StateFamily& family);

/// X({x}) rho = E(x) rho E(x).
Instrument luders_instrument(const SharpObservable& e);

/// X({x}) rho = sqrt(F(x)) rho sqrt(F(x)).
Instrument luders_instrument(const Povm& f);

/// weight * a + (1 - weight) * b over a shared outcome space.
Instrument mixture(double weight, const Instrument& a, const Instrument& b);

/// Every singleton map is completely positive.
bool is_instrument_cp(const Instrument& x, double tol = 1e-9);

/// Positive square root of a PSD matrix.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

}  // namespace qinst
