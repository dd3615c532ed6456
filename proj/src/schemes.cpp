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

#include "qinst/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qinst/errors.hpp"
#include "qinst/random.hpp"

namespace qinst {

namespace {

void require_sequence(const std::vector<Apparatus>& sequence, std::size_t dim) {
    if (sequence.empty()) throw ValidationError("apparatus sequence is empty");
    for (const auto& a : sequence) {
        if (a.dim() != dim) {
            throw DimensionError("apparatus '" + a.label() + "' acts on dimension " + std::to_string(a.dim()) +
                                 ", state has dimension " + std::to_string(dim));
        }
    }
}

std::vector<OutcomeSpace> spaces_of(const std::vector<Apparatus>& sequence) {
    std::vector<OutcomeSpace> spaces;
    for (const auto& a : sequence) spaces.push_back(a.outcomes());
    return spaces;
}

std::size_t product_size(const std::vector<OutcomeSpace>& spaces) {
    std::size_t n = 1;
    for (const auto& s : spaces) n *= s.size();
    return n;
}

void recurse(const std::vector<Apparatus>& sequence, std::size_t level, const DensityOperator& rho, double weight,
             std::size_t prefix, std::vector<double>& out) {
    const Apparatus& a = sequence[level];
    OutcomeDistribution dist = a.distribution(rho);
    const std::size_t n = a.outcomes().size();
    for (std::size_t x = 0; x < n; ++x) {
        double p = dist[x];
        std::size_t index = prefix * n + x;
        if (level + 1 == sequence.size()) {
            out[index] += weight * p;
        } else if (p > kNullProbability) {
            recurse(sequence, level + 1, a.output_state(rho, x), weight * p, index, out);
        }
    }
}

}  // namespace

// Apparatus

Apparatus Apparatus::from_instrument(std::string label, Instrument instrument) {
    return Apparatus(std::move(label), std::move(instrument));
}

Apparatus Apparatus::black_box(std::string label, std::size_t dim, OutcomeSpace outcomes, DistributionFn distribution,
                               ReductionFn reduction) {
    if (!distribution || !reduction) throw ValidationError("black-box apparatus needs both P and Q");
    return Apparatus(std::move(label),
                     BlackBox{dim, std::move(outcomes), std::move(distribution), std::move(reduction)});
}

std::size_t Apparatus::dim() const {
    if (const auto* x = instrument()) return x->dim();
    return std::get<BlackBox>(scheme_).dim;
}

const OutcomeSpace& Apparatus::outcomes() const {
    if (const auto* x = instrument()) return x->outcomes();
    return std::get<BlackBox>(scheme_).outcomes;
}

void Apparatus::require_dim(const DensityOperator& rho) const {
    if (rho.dim() != dim()) {
        throw DimensionError("apparatus '" + label_ + "' acts on dimension " + std::to_string(dim()) +
                             ", state has dimension " + std::to_string(rho.dim()));
    }
}

OutcomeDistribution Apparatus::distribution(const DensityOperator& rho) const {
    require_dim(rho);
    if (const auto* x = instrument()) {
        std::vector<double> p;
        for (const auto& m : x->maps()) p.push_back(m(rho.matrix()).trace().real());
        return OutcomeDistribution(x->outcomes(), std::move(p));
    }
    const auto& box = std::get<BlackBox>(scheme_);
    return OutcomeDistribution(box.outcomes, box.distribution(rho));
}

DensityOperator Apparatus::output_state(const DensityOperator& rho, std::size_t outcome) const {
    require_dim(rho);
    if (outcome >= outcomes().size()) throw ValidationError("outcome index out of range");
    if (const auto* x = instrument()) {
        ComplexMatrix out = x->map(outcome)(rho.matrix());
        double p = out.trace().real();
        if (p <= kNullProbability) return DensityOperator::maximally_mixed(dim());
        return DensityOperator(out / p);
    }
    const auto& box = std::get<BlackBox>(scheme_);
    return DensityOperator(box.reduction(rho, outcome));
}

Apparatus scheme_of_instrument(const Instrument& x, std::string label) {
    return Apparatus::from_instrument(std::move(label), x);
}

Apparatus eigenbasis_apparatus(std::size_t dim, std::string label) {
    auto distribution = [](const DensityOperator& rho) {
        RealVector ev = hermitian_eigenvalues(rho.matrix());
        return std::vector<double>(ev.data(), ev.data() + ev.size());
    };
    auto reduction = [](const DensityOperator& rho, std::size_t k) -> ComplexMatrix {
        HermitianEigen eig = hermitian_eigen(rho.matrix());
        ComplexVector v = eig.vectors.col(static_cast<Eigen::Index>(k));
        return v * v.adjoint();
    };
    return Apparatus::black_box(std::move(label), dim, OutcomeSpace::numbered(dim), distribution, reduction);
}

// CollectiveScheme

DensityOperator CollectiveScheme::reduction(const std::vector<std::size_t>& subset, const DensityOperator& rho) const {
    OutcomeDistribution p = apparatus_.distribution(rho);
    double total = p.probability_of(subset);
    if (total <= kNullProbability) {
        throw UndefinedReductionError("collective reduction is undefined on an outcome set of probability zero");
    }
    auto n = static_cast<Eigen::Index>(rho.dim());
    ComplexMatrix acc = ComplexMatrix::Zero(n, n);
    for (std::size_t x : subset) {
        if (p[x] > kNullProbability) acc += p[x] * apparatus_.output_state(rho, x).matrix();
    }
    return DensityOperator(acc / total);
}

DensityOperator CollectiveScheme::reduction(const std::vector<std::string>& labels, const DensityOperator& rho) const {
    std::vector<std::size_t> subset;
    for (const auto& l : labels) subset.push_back(apparatus_.outcomes().index_of(l));
    return reduction(subset, rho);
}

double CollectiveScheme::consistency_defect(const DensityOperator& rho) const {
    const std::size_t n = apparatus_.outcomes().size();
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    OutcomeDistribution p = apparatus_.distribution(rho);
    auto d = static_cast<Eigen::Index>(rho.dim());
    ComplexMatrix acc = ComplexMatrix::Zero(d, d);
    for (std::size_t x = 0; x < n; ++x) {
        if (p[x] > kNullProbability) acc += p[x] * reduction(std::vector<std::size_t>{x}, rho).matrix();
    }
    return max_abs_diff(acc, reduction(all, rho).matrix());
}

CollectiveScheme collective_of(const Apparatus& a) { return CollectiveScheme(a); }

// JointDistribution

JointDistribution::JointDistribution(std::vector<OutcomeSpace> spaces, std::vector<double> probabilities)
    : spaces_(std::move(spaces)), probabilities_(std::move(probabilities)) {
    if (spaces_.empty()) throw ValidationError("joint distribution needs at least one outcome space");
    if (probabilities_.size() != product_size(spaces_)) {
        throw DimensionError("joint distribution: wrong number of probabilities");
    }
    double total = 0.0;
    for (double& p : probabilities_) {
        if (!std::isfinite(p) || p < -1e-12) throw ValidationError("joint distribution has a negative entry");
        p = std::max(p, 0.0);
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw ValidationError("joint distribution sums to " + std::to_string(total));
    }
}

std::size_t JointDistribution::flat_index(const std::vector<std::size_t>& tuple) const {
    if (tuple.size() != spaces_.size()) throw DimensionError("tuple length does not match the joint distribution");
    std::size_t flat = 0;
    for (std::size_t k = 0; k < tuple.size(); ++k) {
        if (tuple[k] >= spaces_[k].size()) throw DimensionError("tuple entry out of range");
        flat = flat * spaces_[k].size() + tuple[k];
    }
    return flat;
}

std::vector<std::size_t> JointDistribution::tuple(std::size_t flat) const {
    std::vector<std::size_t> out(spaces_.size());
    for (std::size_t k = spaces_.size(); k-- > 0;) {
        out[k] = flat % spaces_[k].size();
        flat /= spaces_[k].size();
    }
    return out;
}

std::vector<std::string> JointDistribution::labels(std::size_t flat) const {
    std::vector<std::size_t> t = tuple(flat);
    std::vector<std::string> out;
    for (std::size_t k = 0; k < t.size(); ++k) out.push_back(spaces_[k].label(t[k]));
    return out;
}

double JointDistribution::probability(const std::vector<std::string>& labels) const {
    if (labels.size() != spaces_.size()) throw DimensionError("tuple length does not match the joint distribution");
    std::vector<std::size_t> t;
    for (std::size_t k = 0; k < labels.size(); ++k) t.push_back(spaces_[k].index_of(labels[k]));
    return probability(t);
}

JointDistribution JointDistribution::marginal(std::size_t leading) const {
    if (leading == 0 || leading > spaces_.size()) throw DimensionError("marginal: invalid number of coordinates");
    std::vector<OutcomeSpace> kept(spaces_.begin(), spaces_.begin() + static_cast<std::ptrdiff_t>(leading));
    std::size_t block = probabilities_.size() / product_size(kept);
    std::vector<double> out(probabilities_.size() / block, 0.0);
    for (std::size_t i = 0; i < probabilities_.size(); ++i) out[i / block] += probabilities_[i];
    return JointDistribution(std::move(kept), std::move(out));
}

// Successive measurements

JointDistribution joint_distribution(const std::vector<Apparatus>& sequence, const DensityOperator& rho) {
    require_sequence(sequence, rho.dim());
    std::vector<OutcomeSpace> spaces = spaces_of(sequence);
    std::vector<double> probs(product_size(spaces), 0.0);
    recurse(sequence, 0, rho, 1.0, 0, probs);
    return JointDistribution(std::move(spaces), std::move(probs));
}

MlpdVerdict check_mlpd(const std::vector<Apparatus>& sequence, std::size_t trials, std::uint64_t seed, double tol) {
    if (trials == 0) throw ValidationError("check_mlpd needs at least one trial");
    if (sequence.empty()) throw ValidationError("apparatus sequence is empty");
    const std::size_t d = sequence.front().dim();
    require_sequence(sequence, d);

    Rng rng(seed);
    MlpdVerdict verdict;
    for (std::size_t t = 0; t < trials; ++t) {
        DensityOperator rho1(random_mixed_density(d, rng));
        DensityOperator rho2(random_mixed_density(d, rng));
        double alpha = rng.uniform(0.05, 0.95);
        DensityOperator mixed = DensityOperator::mixture(alpha, rho1, rho2);

        JointDistribution j1 = joint_distribution(sequence, rho1);
        JointDistribution j2 = joint_distribution(sequence, rho2);
        JointDistribution jm = joint_distribution(sequence, mixed);
        verdict.trials_run = t + 1;
        for (std::size_t i = 0; i < jm.size(); ++i) {
            double lhs = jm.probabilities()[i];
            double rhs = alpha * j1.probabilities()[i] + (1.0 - alpha) * j2.probabilities()[i];
            double deviation = std::abs(lhs - rhs);
            if (deviation > tol) {
                verdict.witness = MlpdVerdict::Witness{rho1, rho2, alpha, jm.labels(i), lhs, rhs, deviation};
                return verdict;
            }
        }
    }
    return verdict;
}

Povm povm_from_affine_scheme(const Apparatus& a, std::uint64_t seed, double tol) {
    const std::size_t d = a.dim();
    const std::size_t n = a.outcomes().size();
    const auto dn = static_cast<Eigen::Index>(d);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    std::vector<ComplexMatrix> effects(n, ComplexMatrix::Zero(dn, dn));
    std::vector<OutcomeDistribution> diagonal;
    for (std::size_t i = 0; i < d; ++i) {
        diagonal.push_back(a.distribution(DensityOperator::basis_state(d, i)));
        for (std::size_t x = 0; x < n; ++x) {
            effects[x](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = diagonal.back()[x];
        }
    }
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) {
            ComplexVector plus = ComplexVector::Zero(dn);
            plus(static_cast<Eigen::Index>(i)) = inv_sqrt2;
            plus(static_cast<Eigen::Index>(j)) = inv_sqrt2;
            ComplexVector plus_i = plus;
            plus_i(static_cast<Eigen::Index>(j)) = Complex(0.0, inv_sqrt2);
            OutcomeDistribution p_re = a.distribution(DensityOperator::pure(plus));
            OutcomeDistribution p_im = a.distribution(DensityOperator::pure(plus_i));
            for (std::size_t x = 0; x < n; ++x) {
                // <+|F|+> = (F_ii + F_jj)/2 + Re F_ij,  <+i|F|+i> = (F_ii + F_jj)/2 - Im F_ij
                double mean = 0.5 * (diagonal[i][x] + diagonal[j][x]);
                Complex fij(p_re[x] - mean, mean - p_im[x]);
                effects[x](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = fij;
                effects[x](static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = std::conj(fij);
            }
        }
    }

    std::optional<Povm> povm;
    try {
        povm.emplace(a.outcomes(), effects);
    } catch (const ValidationError& err) {
        throw ValidationError(std::string("reconstructed effects do not form a POVM: ") + err.what());
    }

    Rng rng(seed);
    for (int trial = 0; trial < 20; ++trial) {
        DensityOperator rho(random_mixed_density(d, rng));
        OutcomeDistribution observed = a.distribution(rho);
        for (std::size_t x = 0; x < n; ++x) {
            double predicted = trace_product(povm->effect(x), rho.matrix());
            double deviation = std::abs(predicted - observed[x]);
            if (deviation > tol) {
                throw ValidationError("apparatus '" + a.label() + "' is not affine: outcome '" + a.outcomes().label(x) +
                                      "' deviates from the reconstructed POVM by " + std::to_string(deviation));
            }
        }
    }
    return *povm;
}

Trajectories sample_trajectory(const std::vector<Apparatus>& sequence, const DensityOperator& rho, std::uint64_t shots,
                               std::uint64_t seed) {
    if (shots == 0) throw ValidationError("sample_trajectory needs at least one shot");
    require_sequence(sequence, rho.dim());

    Trajectories out;
    out.spaces = spaces_of(sequence);
    out.counts.assign(product_size(out.spaces), 0);
    out.final_states.assign(out.counts.size(), std::nullopt);
    out.shots = shots;

    Rng rng(seed);
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        DensityOperator state = rho;
        std::size_t flat = 0;
        for (const auto& a : sequence) {
            OutcomeDistribution p = a.distribution(state);
            double u = rng.uniform();
            std::size_t x = 0;
            double cumulative = p[0];
            while (u >= cumulative && x + 1 < p.probabilities().size()) cumulative += p[++x];
            // Rounding can land on a null outcome at the tail; step back to the last non-null one.
            while (p[x] <= 0.0 && x > 0) --x;
            flat = flat * a.outcomes().size() + x;
            state = a.output_state(state, x);
        }
        ++out.counts[flat];
        if (!out.final_states[flat]) out.final_states[flat] = state;
    }
    return out;
}

}  // namespace qinst
