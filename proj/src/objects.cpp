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

#include "qinst/objects.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "qinst/errors.hpp"

namespace qinst {

namespace {

void require_dim(const ComplexMatrix& m, std::size_t d, const std::string& what) {
    auto n = static_cast<Eigen::Index>(d);
    if (m.rows() != n || m.cols() != n) {
        throw DimensionError(what + " is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                             ", expected " + std::to_string(d) + "x" + std::to_string(d));
    }
}

std::size_t common_dim(const std::vector<ComplexMatrix>& ms, const OutcomeSpace& outcomes, const char* kind) {
    if (ms.size() != outcomes.size()) {
        throw DimensionError(std::string(kind) + ": " + std::to_string(ms.size()) + " operators for " +
                             std::to_string(outcomes.size()) + " outcomes");
    }
    auto d = static_cast<std::size_t>(ms.front().rows());
    for (std::size_t i = 0; i < ms.size(); ++i) {
        require_dim(ms[i], d, std::string(kind) + " operator '" + outcomes.label(i) + "'");
        if (!all_finite(ms[i])) {
            throw ValidationError(std::string(kind) + " operator '" + outcomes.label(i) + "' has non-finite entries");
        }
    }
    return d;
}

void require_sum_identity(const std::vector<ComplexMatrix>& ms, std::size_t d, const char* kind) {
    auto n = static_cast<Eigen::Index>(d);
    ComplexMatrix sum = ComplexMatrix::Zero(n, n);
    for (const auto& m : ms) sum += m;
    double defect = max_abs_diff(sum, ComplexMatrix::Identity(n, n));
    if (defect > kObjectTol) {
        throw ValidationError(std::string(kind) + ": operators do not sum to the identity (defect " +
                              std::to_string(defect) + ")");
    }
}

std::vector<double> raw_probabilities(const std::vector<ComplexMatrix>& ops, const DensityOperator& rho) {
    std::vector<double> p;
    p.reserve(ops.size());
    for (const auto& op : ops) {
        require_dim(rho.matrix(), static_cast<std::size_t>(op.rows()), "state");
        p.push_back(trace_product(op, rho.matrix()));
    }
    return p;
}

}  // namespace

// OutcomeSpace

OutcomeSpace::OutcomeSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) {
        throw ValidationError("outcome space must be nonempty");
    }
    std::set<std::string> seen;
    for (const auto& l : labels_) {
        if (!seen.insert(l).second) {
            throw ValidationError("duplicate outcome label '" + l + "'");
        }
    }
}

OutcomeSpace OutcomeSpace::numbered(std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    return OutcomeSpace(std::move(labels));
}

std::optional<std::size_t> OutcomeSpace::find(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t OutcomeSpace::index_of(const std::string& label) const {
    auto i = find(label);
    if (!i) throw ValidationError("unknown outcome label '" + label + "'");
    return *i;
}

// DensityOperator

DensityOperator::DensityOperator(const ComplexMatrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw DimensionError("density operator must be a nonempty square matrix");
    }
    if (!all_finite(m)) {
        throw ValidationError("density operator has non-finite entries");
    }
    double herm = hermiticity_defect(m);
    if (herm > kObjectTol) {
        throw ValidationError("density operator is not Hermitian (defect " + std::to_string(herm) + ")");
    }
    double tr_defect = std::abs(m.trace() - Complex(1.0, 0.0));
    if (tr_defect > kObjectTol) {
        throw ValidationError("density operator trace differs from 1 by " + std::to_string(tr_defect));
    }
    if (!is_psd(m, kObjectTol)) {
        throw ValidationError("density operator is not positive (min eigenvalue " +
                              std::to_string(min_eigenvalue(m)) + ")");
    }
    matrix_ = (m + m.adjoint()) / 2.0;
}

DensityOperator DensityOperator::maximally_mixed(std::size_t d) {
    auto n = static_cast<Eigen::Index>(d);
    return DensityOperator(ComplexMatrix::Identity(n, n) / static_cast<double>(d));
}

DensityOperator DensityOperator::basis_state(std::size_t d, std::size_t i) {
    if (i >= d) throw DimensionError("basis_state: index out of range");
    return DensityOperator(matrix_unit(d, i, i));
}

DensityOperator DensityOperator::pure(const ComplexVector& psi) {
    double norm = psi.norm();
    if (norm == 0.0) throw ValidationError("pure state from the zero vector");
    ComplexVector unit = psi / norm;
    return DensityOperator(unit * unit.adjoint());
}

DensityOperator DensityOperator::mixture(double weight, const DensityOperator& a, const DensityOperator& b) {
    if (a.dim() != b.dim()) throw DimensionError("mixture: dimension mismatch");
    if (weight < 0.0 || weight > 1.0) throw ValidationError("mixture weight outside [0, 1]");
    return DensityOperator(weight * a.matrix() + (1.0 - weight) * b.matrix());
}

// SharpObservable

SharpObservable::SharpObservable(OutcomeSpace outcomes, std::vector<ComplexMatrix> projections)
    : dim_(0), outcomes_(std::move(outcomes)), projections_(std::move(projections)) {
    dim_ = common_dim(projections_, outcomes_, "observable");
    for (std::size_t x = 0; x < projections_.size(); ++x) {
        const ComplexMatrix& p = projections_[x];
        double defect = std::max(hermiticity_defect(p), max_abs_diff(p * p, p));
        if (defect > kObjectTol) {
            throw ValidationError("E('" + outcomes_.label(x) + "') is not an orthogonal projection (defect " +
                                  std::to_string(defect) + ")");
        }
        for (std::size_t y = x + 1; y < projections_.size(); ++y) {
            double overlap = (p * projections_[y]).cwiseAbs().maxCoeff();
            if (overlap > kObjectTol) {
                throw ValidationError("E('" + outcomes_.label(x) + "') and E('" + outcomes_.label(y) +
                                      "') are not orthogonal");
            }
        }
    }
    require_sum_identity(projections_, dim_, "observable");
}

SharpObservable SharpObservable::from_basis(const ComplexMatrix& unitary, OutcomeSpace outcomes) {
    if (static_cast<std::size_t>(unitary.cols()) != outcomes.size()) {
        throw DimensionError("from_basis: one outcome per basis vector required");
    }
    std::vector<ComplexMatrix> projections;
    for (Eigen::Index c = 0; c < unitary.cols(); ++c) {
        projections.push_back(unitary.col(c) * unitary.col(c).adjoint());
    }
    return SharpObservable(std::move(outcomes), std::move(projections));
}

SharpObservable SharpObservable::computational(std::size_t d) {
    auto n = static_cast<Eigen::Index>(d);
    return from_basis(ComplexMatrix::Identity(n, n), OutcomeSpace::numbered(d));
}

SharpObservable SharpObservable::trivial(std::size_t d, std::string label) {
    auto n = static_cast<Eigen::Index>(d);
    return SharpObservable(OutcomeSpace({std::move(label)}), {ComplexMatrix::Identity(n, n)});
}

ComplexMatrix SharpObservable::projection_of(const std::vector<std::size_t>& subset) const {
    auto n = static_cast<Eigen::Index>(dim_);
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    for (std::size_t x : subset) out += projections_.at(x);
    return out;
}

// Povm

Povm::Povm(OutcomeSpace outcomes, std::vector<ComplexMatrix> effects)
    : dim_(0), outcomes_(std::move(outcomes)), effects_(std::move(effects)) {
    dim_ = common_dim(effects_, outcomes_, "POVM");
    for (std::size_t x = 0; x < effects_.size(); ++x) {
        if (!is_psd(effects_[x], kObjectTol)) {
            throw ValidationError("POVM effect '" + outcomes_.label(x) + "' is not positive semidefinite");
        }
        effects_[x] = (effects_[x] + effects_[x].adjoint()) / 2.0;
    }
    require_sum_identity(effects_, dim_, "POVM");
}

Povm Povm::from_observable(const SharpObservable& e) { return Povm(e.outcomes(), e.projections()); }

// OutcomeDistribution

OutcomeDistribution::OutcomeDistribution(OutcomeSpace outcomes, std::vector<double> probabilities)
    : outcomes_(std::move(outcomes)), probabilities_(std::move(probabilities)) {
    if (probabilities_.size() != outcomes_.size()) {
        throw DimensionError("distribution: one probability per outcome required");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < probabilities_.size(); ++i) {
        double& p = probabilities_[i];
        if (!std::isfinite(p) || p < -1e-12 || p > 1.0 + 1e-9) {
            throw ValidationError("probability of '" + outcomes_.label(i) + "' is " + std::to_string(p));
        }
        p = std::clamp(p, 0.0, 1.0);
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw ValidationError("probabilities sum to " + std::to_string(total));
    }
    for (double& p : probabilities_) p /= total;
}

double OutcomeDistribution::probability_of(const std::vector<std::size_t>& subset) const {
    double total = 0.0;
    for (std::size_t x : subset) total += probabilities_.at(x);
    return total;
}

// Free functions

double trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows() || a.rows() != b.cols()) {
        throw DimensionError("trace_product: shape mismatch");
    }
    // Tr[AB] = sum_ij A_ij B_ji
    return (a.array() * b.transpose().array()).sum().real();
}

OutcomeDistribution born_distribution(const SharpObservable& e, const DensityOperator& rho) {
    return OutcomeDistribution(e.outcomes(), raw_probabilities(e.projections(), rho));
}

OutcomeDistribution born_distribution(const Povm& f, const DensityOperator& rho) {
    return OutcomeDistribution(f.outcomes(), raw_probabilities(f.effects(), rho));
}

std::size_t projection_rank(const ComplexMatrix& p) {
    RealVector ev = hermitian_eigenvalues(p);
    return static_cast<std::size_t>((ev.array() > 0.5).count());
}

bool is_nondegenerate(const SharpObservable& e) {
    return std::all_of(e.projections().begin(), e.projections().end(),
                       [](const ComplexMatrix& p) { return projection_rank(p) <= 1; });
}

Superoperator luders_pinching(const SharpObservable& e) {
    Superoperator out = Superoperator::zero(e.dim());
    for (const auto& p : e.projections()) out += Superoperator::conjugation(p);
    return out;
}

}  // namespace qinst
