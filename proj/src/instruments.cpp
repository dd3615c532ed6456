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

#include "qinst/instruments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qinst/errors.hpp"

namespace qinst {

namespace {

std::size_t check_maps(const OutcomeSpace& outcomes, const std::vector<Superoperator>& maps) {
    if (maps.size() != outcomes.size()) {
        throw DimensionError("instrument: " + std::to_string(maps.size()) + " maps for " +
                             std::to_string(outcomes.size()) + " outcomes");
    }
    std::size_t d = maps.front().dim();
    for (const auto& m : maps) {
        if (m.dim() != d) throw DimensionError("instrument: member maps act on different dimensions");
    }
    return d;
}

ComplexMatrix identity(std::size_t d) {
    auto n = static_cast<Eigen::Index>(d);
    return ComplexMatrix::Identity(n, n);
}

void require_dims(std::size_t a, std::size_t b, const char* where) {
    if (a != b) {
        throw DimensionError(std::string(where) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                             std::to_string(b) + ")");
    }
}

/// Position in `e` of each outcome of `space`, matched by label.
std::vector<std::size_t> match_outcomes(const OutcomeSpace& space, const OutcomeSpace& reference, const char* where) {
    if (space.size() != reference.size()) {
        throw DimensionError(std::string(where) + ": outcome spaces differ");
    }
    std::vector<std::size_t> perm;
    for (const auto& label : space.labels()) {
        auto i = reference.find(label);
        if (!i) throw DimensionError(std::string(where) + ": outcome '" + label + "' has no counterpart");
        perm.push_back(*i);
    }
    return perm;
}

std::vector<std::size_t> all_indices(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

}  // namespace

// Instrument

Instrument Instrument::create(OutcomeSpace outcomes, std::vector<Superoperator> maps, double tol) {
    std::size_t d = check_maps(outcomes, maps);
    Instrument x(d, std::move(outcomes), std::move(maps));
    CheckReport report = x.validation_report(tol);
    for (const auto& c : report.checks) {
        if (!c.pass) {
            throw ValidationError("instrument check '" + c.name + "' failed (deviation " +
                                  std::to_string(c.max_deviation) + ")");
        }
    }
    return x;
}

Instrument Instrument::unchecked(OutcomeSpace outcomes, std::vector<Superoperator> maps) {
    std::size_t d = check_maps(outcomes, maps);
    return Instrument(d, std::move(outcomes), std::move(maps));
}

Superoperator Instrument::map_of(const std::vector<std::size_t>& subset) const {
    Superoperator out = Superoperator::zero(dim_);
    for (std::size_t i : subset) out += maps_.at(i);
    return out;
}

CheckReport Instrument::validation_report(double tol) const {
    CheckReport report;
    Superoperator total = map_of(all_indices(maps_.size()));
    report.add(CheckResult::of("normalization", trace_preservation_defect(total), tol));
    for (std::size_t i = 0; i < maps_.size(); ++i) {
        PositivityVerdict verdict = is_positive_sampled(maps_[i], kPositivitySamples, kPositivitySeed);
        double deviation = verdict.is_violated() ? -verdict.witness()->min_eigenvalue : 0.0;
        report.add({"positivity[" + outcomes_.label(i) + "]", std::max(deviation, 0.0), 1e-9, !verdict.is_violated()});
    }
    return report;
}

// StateFamily

StateFamily::StateFamily(OutcomeSpace outcomes, std::vector<DensityOperator> states)
    : outcomes_(std::move(outcomes)), states_(std::move(states)) {
    if (states_.size() != outcomes_.size()) {
        throw DimensionError("state family: one state per outcome required");
    }
    for (const auto& s : states_) {
        if (s.dim() != states_.front().dim()) throw DimensionError("state family: states of different dimensions");
    }
}

// Free functions

std::vector<ComplexMatrix> effects_of(const Instrument& x) {
    std::vector<ComplexMatrix> out;
    ComplexMatrix id = identity(x.dim());
    for (const auto& m : x.maps()) out.push_back(dual(m)(id));
    return out;
}

Povm povm_of(const Instrument& x) { return Povm(x.outcomes(), effects_of(x)); }

Superoperator total_operation(const Instrument& x) { return x.map_of(all_indices(x.outcomes().size())); }

bool is_e_compatible(const Instrument& x, const SharpObservable& e, double tol) {
    require_dims(x.dim(), e.dim(), "is_e_compatible");
    if (x.outcomes().size() != e.outcomes().size()) return false;
    std::vector<ComplexMatrix> effects = effects_of(x);
    for (std::size_t i = 0; i < effects.size(); ++i) {
        auto j = e.outcomes().find(x.outcomes().label(i));
        if (!j || max_abs_diff(effects[i], e.projection(*j)) > tol) return false;
    }
    return true;
}

double decomposability_defect(const Instrument& x) {
    // Comparing natural matrices is the same as comparing outputs on every
    // matrix unit, column by column.
    Superoperator t_dual = dual(total_operation(x));
    std::vector<ComplexMatrix> effects = effects_of(x);
    ComplexMatrix id = identity(x.dim());
    double worst = 0.0;
    for (std::size_t i = 0; i < effects.size(); ++i) {
        Superoperator lhs = dual(x.map(i));
        Superoperator rhs = compose(Superoperator::sandwich(effects[i], id), t_dual);
        worst = std::max(worst, max_abs_diff(lhs.natural(), rhs.natural()));
    }
    return worst;
}

bool is_decomposable(const Instrument& x, double tol) { return decomposability_defect(x) <= tol; }

CheckReport check_decomposition_identities(const Instrument& x, const SharpObservable& e, double tol) {
    require_dims(x.dim(), e.dim(), "check_decomposition_identities");
    std::vector<std::size_t> to_e = match_outcomes(x.outcomes(), e.outcomes(), "check_decomposition_identities");

    const std::size_t n = x.outcomes().size();
    std::vector<std::vector<std::size_t>> generators;
    for (std::size_t i = 0; i < n; ++i) generators.push_back({i});
    generators.push_back(all_indices(n));

    const ComplexMatrix id = identity(x.dim());
    const Superoperator t = total_operation(x);
    const Superoperator t_dual = dual(t);

    double compat = 0.0;
    double red_left = 0.0, red_right = 0.0, red_both = 0.0;
    double dual_left = 0.0, dual_right = 0.0, dual_both = 0.0;
    for (const auto& subset : generators) {
        std::vector<std::size_t> e_subset;
        for (std::size_t i : subset) e_subset.push_back(to_e[i]);
        const ComplexMatrix proj = e.projection_of(e_subset);
        const Superoperator x_delta = x.map_of(subset);
        const Superoperator x_delta_dual = dual(x_delta);

        const ComplexMatrix& lhs = x_delta.natural();
        red_left = std::max(red_left, max_abs_diff(lhs, compose(t, Superoperator::sandwich(proj, id)).natural()));
        red_right = std::max(red_right, max_abs_diff(lhs, compose(t, Superoperator::sandwich(id, proj)).natural()));
        red_both = std::max(red_both, max_abs_diff(lhs, compose(t, Superoperator::sandwich(proj, proj)).natural()));

        const ComplexMatrix& dlhs = x_delta_dual.natural();
        dual_left = std::max(dual_left, max_abs_diff(dlhs, compose(Superoperator::sandwich(proj, id), t_dual).natural()));
        dual_right =
            std::max(dual_right, max_abs_diff(dlhs, compose(Superoperator::sandwich(id, proj), t_dual).natural()));
        dual_both =
            std::max(dual_both, max_abs_diff(dlhs, compose(Superoperator::sandwich(proj, proj), t_dual).natural()));

        compat = std::max(compat, max_abs_diff(x_delta_dual(id), proj));
    }

    CheckReport report;
    report.add(CheckResult::of("povm equals observable", compat, tol));
    report.add(CheckResult::of("X(D)rho = T[E(D)rho]", red_left, tol));
    report.add(CheckResult::of("X(D)rho = T[rho E(D)]", red_right, tol));
    report.add(CheckResult::of("X(D)rho = T[E(D)rho E(D)]", red_both, tol));
    report.add(CheckResult::of("X(D)*B = E(D)T*(B)", dual_left, tol));
    report.add(CheckResult::of("X(D)*B = T*(B)E(D)", dual_right, tol));
    report.add(CheckResult::of("X(D)*B = E(D)T*(B)E(D)", dual_both, tol));
    return report;
}

bool is_e_compatible_operation(const Superoperator& t, const SharpObservable& e, double tol) {
    require_dims(t.dim(), e.dim(), "is_e_compatible_operation");
    double defect = trace_preservation_defect(t);
    if (defect > tol) {
        throw ValidationError("operation is not trace preserving (defect " + std::to_string(defect) + ")");
    }
    return distance(compose(t, luders_pinching(e)), t) <= tol;
}

Instrument instrument_from_total_operation(const SharpObservable& e, const Superoperator& t, double tol) {
    if (!is_e_compatible_operation(t, e, tol)) {
        throw IncompatibleError("operation is not compatible with the observable (T o Phi_E != T)");
    }
    std::vector<Superoperator> maps;
    for (const auto& p : e.projections()) {
        maps.push_back(compose(t, Superoperator::conjugation(p)));
    }
    return Instrument::create(e.outcomes(), std::move(maps), tol);
}

Superoperator operation_from_state_family(const SharpObservable& e, const StateFamily& family) {
    if (!is_nondegenerate(e)) {
        throw DegenerateObservableError("observable has a projection of rank greater than one");
    }
    require_dims(family.dim(), e.dim(), "operation_from_state_family");
    std::vector<std::size_t> to_family = match_outcomes(e.outcomes(), family.outcomes(), "operation_from_state_family");
    auto n = static_cast<Eigen::Index>(e.dim() * e.dim());
    ComplexMatrix natural = ComplexMatrix::Zero(n, n);
    for (std::size_t x = 0; x < e.outcomes().size(); ++x) {
        // Tr[E rho] = vec(E^T) . vec(rho)
        natural += vectorize(family.state(to_family[x]).matrix()) * vectorize(e.projection(x).transpose()).transpose();
    }
    return Superoperator::from_natural(std::move(natural));
}

StateFamily state_family_of_operation(const SharpObservable& e, const Superoperator& t, double tol) {
    if (!is_e_compatible_operation(t, e, tol)) {
        throw IncompatibleError("operation is not compatible with the observable (T o Phi_E != T)");
    }
    std::vector<DensityOperator> states;
    for (const auto& p : e.projections()) {
        ComplexMatrix out = t(p);
        double weight = p.trace().real();
        if (weight < 0.5) {
            states.push_back(DensityOperator::maximally_mixed(e.dim()));
        } else {
            states.emplace_back(out / weight);
        }
    }
    return StateFamily(e.outcomes(), std::move(states));
}

Instrument measure_and_prepare(const Povm& f, const StateFamily& family) {
    require_dims(family.dim(), f.dim(), "measure_and_prepare");
    std::vector<std::size_t> to_family = match_outcomes(f.outcomes(), family.outcomes(), "measure_and_prepare");
    std::vector<Superoperator> maps;
    for (std::size_t x = 0; x < f.outcomes().size(); ++x) {
        ComplexVector state = vectorize(family.state(to_family[x]).matrix());
        maps.push_back(Superoperator::from_natural(state * vectorize(f.effect(x).transpose()).transpose()));
    }
    return Instrument::create(f.outcomes(), std::move(maps));
}

Instrument instrument_from_state_family(const SharpObservable& e, const StateFamily& family) {
    if (!is_nondegenerate(e)) {
        throw DegenerateObservableError("observable has a projection of rank greater than one");
    }
    return measure_and_prepare(Povm::from_observable(e), family);
}

Instrument luders_instrument(const SharpObservable& e) {
    std::vector<Superoperator> maps;
    for (const auto& p : e.projections()) maps.push_back(Superoperator::conjugation(p));
    return Instrument::create(e.outcomes(), std::move(maps));
}

Instrument luders_instrument(const Povm& f) {
    std::vector<Superoperator> maps;
    for (const auto& effect : f.effects()) maps.push_back(Superoperator::conjugation(psd_sqrt(effect)));
    return Instrument::create(f.outcomes(), std::move(maps));
}

Instrument mixture(double weight, const Instrument& a, const Instrument& b) {
    if (!(a.outcomes() == b.outcomes())) throw DimensionError("mixture: outcome spaces differ");
    require_dims(a.dim(), b.dim(), "mixture");
    if (weight < 0.0 || weight > 1.0) throw ValidationError("mixture weight outside [0, 1]");
    std::vector<Superoperator> maps;
    for (std::size_t i = 0; i < a.maps().size(); ++i) {
        maps.push_back(weight * a.map(i) + (1.0 - weight) * b.map(i));
    }
    return Instrument::create(a.outcomes(), std::move(maps));
}

bool is_instrument_cp(const Instrument& x, double tol) {
    return std::all_of(x.maps().begin(), x.maps().end(),
                       [tol](const Superoperator& m) { return is_completely_positive(m, tol); });
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
    HermitianEigen eig = hermitian_eigen(m);
    RealVector roots = eig.values.cwiseMax(0.0).cwiseSqrt();
    return eig.vectors * roots.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

}  // namespace qinst
