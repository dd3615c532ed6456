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

#include <algorithm>
#include <string>
#include <vector>

#include "qinst/errors.hpp"

namespace qinst {

namespace {

constexpr double kUnitaryTol = 1e-10;

}  // namespace

IndirectModel::IndirectModel(std::size_t sys_dim, DensityOperator ancilla_state, ComplexMatrix coupling,
                             SharpObservable probe)
    : sys_dim_(sys_dim),
      ancilla_state_(std::move(ancilla_state)),
      coupling_(std::move(coupling)),
      probe_(std::move(probe)) {
    if (sys_dim_ == 0) throw DimensionError("model: system dimension must be positive");
    if (probe_.dim() != ancilla_state_.dim()) {
        throw DimensionError("model: probe and ancilla state act on different dimensions");
    }
    auto total = static_cast<Eigen::Index>(sys_dim_ * anc_dim());
    if (coupling_.rows() != total || coupling_.cols() != total) {
        throw DimensionError("model: coupling must be " + std::to_string(total) + "x" + std::to_string(total));
    }
    if (!all_finite(coupling_)) throw ValidationError("model: coupling has non-finite entries");
    double defect = unitarity_defect(coupling_);
    if (defect > kUnitaryTol) {
        throw ValidationError("model: coupling is not unitary (||U^dagger U - I|| = " + std::to_string(defect) + ")");
    }
}

Instrument instrument_of_model(const IndirectModel& m) {
    const std::size_t ds = m.sys_dim();
    const std::size_t da = m.anc_dim();
    const ComplexMatrix& u = m.coupling();
    const ComplexMatrix& sigma = m.ancilla_state().matrix();
    const auto n_sys = static_cast<Eigen::Index>(ds);

    std::vector<Superoperator> maps;
    for (const auto& e : m.probe().projections()) {
        ComplexMatrix meter = tensor_product(ComplexMatrix::Identity(n_sys, n_sys), e);
        maps.push_back(Superoperator::from_function(ds, [&](const ComplexMatrix& rho) {
            ComplexMatrix joint = u * tensor_product(rho, sigma) * u.adjoint();
            return partial_trace_ancilla(meter * joint, ds, da);
        }));
    }
    return Instrument::create(m.probe().outcomes(), std::move(maps));
}

IndirectModel dilate(const Instrument& x, double tol) {
    const std::size_t ds = x.dim();
    const auto n_sys = static_cast<Eigen::Index>(ds);

    std::vector<KrausSet> per_outcome;
    std::size_t kraus_count = 0;
    for (std::size_t i = 0; i < x.maps().size(); ++i) {
        try {
            per_outcome.push_back(kraus(x.map(i), tol));
        } catch (const NotCompletelyPositiveError& err) {
            throw NotCompletelyPositiveError(
                "cannot dilate: X('" + x.outcomes().label(i) + "') is not completely positive (min Choi eigenvalue " +
                    std::to_string(err.min_choi_eigenvalue()) + ")",
                err.min_choi_eigenvalue());
        }
        kraus_count += per_outcome.back().operators.size();
    }
    const std::size_t da = std::max<std::size_t>(kraus_count, 2);
    const auto n_anc = static_cast<Eigen::Index>(da);

    // Isometry V: column j is sum_k (K_k e_j) (x) |k>, with k the global Kraus slot.
    ComplexMatrix v = ComplexMatrix::Zero(n_sys * n_anc, n_sys);
    std::vector<std::vector<Eigen::Index>> slots(x.maps().size());
    Eigen::Index slot = 0;
    for (std::size_t i = 0; i < per_outcome.size(); ++i) {
        for (const auto& k : per_outcome[i].operators) {
            for (Eigen::Index s = 0; s < n_sys; ++s) {
                for (Eigen::Index j = 0; j < n_sys; ++j) {
                    v(s * n_anc + slot, j) = k(s, j);
                }
            }
            slots[i].push_back(slot++);
        }
    }

    // Truncated Kraus tails leave V^dagger V off the identity by up to ~1e-10;
    // polish with V (V^dagger V)^(-1/2) before completing.
    HermitianEigen gram = hermitian_eigen(v.adjoint() * v);
    if (gram.values.minCoeff() <= 0.0) throw ValidationError("dilate: instrument is not trace preserving");
    RealVector inv_root = gram.values.cwiseSqrt().cwiseInverse();
    v = v * (gram.vectors * inv_root.cast<Complex>().asDiagonal() * gram.vectors.adjoint());

    // The completion puts V in the leading columns; move column j to the
    // position of e_j (x) |0> so that U(psi (x) |0>) = V psi.
    ComplexMatrix completed = unitary_completion(v);
    ComplexMatrix u(completed.rows(), completed.cols());
    std::vector<bool> taken(static_cast<std::size_t>(completed.cols()), false);
    for (Eigen::Index j = 0; j < n_sys; ++j) {
        u.col(j * n_anc) = completed.col(j);
        taken[static_cast<std::size_t>(j * n_anc)] = true;
    }
    Eigen::Index next = n_sys;
    for (Eigen::Index c = 0; c < u.cols(); ++c) {
        if (!taken[static_cast<std::size_t>(c)]) u.col(c) = completed.col(next++);
    }

    auto first = std::min_element(x.outcomes().labels().begin(), x.outcomes().labels().end());
    auto first_index = static_cast<std::size_t>(first - x.outcomes().labels().begin());
    for (Eigen::Index extra = slot; extra < n_anc; ++extra) slots[first_index].push_back(extra);

    std::vector<ComplexMatrix> projections;
    for (const auto& owned : slots) {
        ComplexMatrix p = ComplexMatrix::Zero(n_anc, n_anc);
        for (Eigen::Index k : owned) p(k, k) = 1.0;
        projections.push_back(std::move(p));
    }
    SharpObservable probe(x.outcomes(), std::move(projections));
    return IndirectModel(ds, DensityOperator::basis_state(da, 0), std::move(u), std::move(probe));
}

CheckReport verify_realization(const IndirectModel& m, const Instrument& x, double tol) {
    if (m.sys_dim() != x.dim()) throw DimensionError("verify_realization: dimension mismatch");
    const OutcomeSpace& model_outcomes = m.probe().outcomes();
    if (model_outcomes.size() != x.outcomes().size()) {
        throw DimensionError("verify_realization: outcome spaces differ");
    }
    Instrument realized = instrument_of_model(m);
    CheckReport report;
    for (std::size_t i = 0; i < x.outcomes().size(); ++i) {
        const std::string& label = x.outcomes().label(i);
        auto j = model_outcomes.find(label);
        if (!j) throw DimensionError("verify_realization: outcome '" + label + "' missing from the model");
        report.add(CheckResult::of("realization[" + label + "]", distance(realized.map(*j), x.map(i)), tol));
    }
    return report;
}

}  // namespace qinst
