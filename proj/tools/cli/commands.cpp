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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>

#include <CLI11.hpp>

#include "qinst/dilation.hpp"
#include "qinst/errors.hpp"
#include "qinst/instruments.hpp"
#include "qinst/schemes.hpp"

namespace qinst::cli {

namespace {

using io::Json;

constexpr double kZScoreLimit = 4.0;

Report guarded(const std::string& command, const std::function<void(Report&)>& body) {
    Report report;
    report.command = command;
    try {
        body(report);
        if (report.exit_code == kPass && !report.pass()) report.exit_code = kSemanticFailure;
    } catch (const ParseError& err) {
        report.error = err.what();
        report.exit_code = kIoFailure;
    } catch (const nlohmann::json::exception& err) {
        report.error = err.what();
        report.exit_code = kIoFailure;
    } catch (const Error& err) {
        report.error = err.what();
        report.exit_code = kSemanticFailure;
    }
    return report;
}

double negativity(const ComplexMatrix& m) { return std::max(0.0, -min_eigenvalue(m)); }

ComplexMatrix identity(Eigen::Index d) { return ComplexMatrix::Identity(d, d); }

void check_effect_family(Report& r, const std::vector<ComplexMatrix>& ops, bool projective, double tol) {
    auto d = ops.front().rows();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    double herm = 0.0, neg = 0.0, idem = 0.0, orth = 0.0;
    for (std::size_t i = 0; i < ops.size(); ++i) {
        if (ops[i].rows() != d || ops[i].cols() != d) throw DimensionError("operators of different sizes");
        sum += ops[i];
        herm = std::max(herm, hermiticity_defect(ops[i]));
        neg = std::max(neg, negativity(ops[i]));
        idem = std::max(idem, max_abs_diff(ops[i] * ops[i], ops[i]));
        for (std::size_t k = i + 1; k < ops.size(); ++k) orth = std::max(orth, (ops[i] * ops[k]).cwiseAbs().maxCoeff());
    }
    r.checks.push_back(CheckResult::of("hermitian", herm, tol));
    r.checks.push_back(CheckResult::of("positive", neg, tol));
    r.checks.push_back(CheckResult::of("sums to identity", max_abs_diff(sum, identity(d)), tol));
    if (projective) {
        r.checks.push_back(CheckResult::of("idempotent", idem, tol));
        r.checks.push_back(CheckResult::of("mutually orthogonal", orth, tol));
    }
}

void check_state_matrix(Report& r, const ComplexMatrix& m, double tol, const std::string& prefix = "") {
    if (m.rows() != m.cols()) throw DimensionError("state must be square");
    r.checks.push_back(CheckResult::of(prefix + "hermitian", hermiticity_defect(m), tol));
    r.checks.push_back(CheckResult::of(prefix + "unit trace", std::abs(m.trace() - Complex(1.0, 0.0)), tol));
    r.checks.push_back(CheckResult::of(prefix + "positive", negativity(m), tol));
}

bool is_projective(const std::vector<ComplexMatrix>& effects, double tol) {
    return std::all_of(effects.begin(), effects.end(),
                       [tol](const ComplexMatrix& f) { return max_abs_diff(f * f, f) <= tol; });
}

void check_instrument(Report& r, const Instrument& x, double tol) {
    CheckReport validity = x.validation_report(tol);
    r.checks.insert(r.checks.end(), validity.checks.begin(), validity.checks.end());
    if (!validity.pass()) return;

    std::vector<ComplexMatrix> effects = effects_of(x);
    Povm povm(x.outcomes(), effects);
    r.payload["povm"] = io::to_json(povm);

    Json cp = Json::object();
    bool all_cp = true;
    for (std::size_t i = 0; i < x.maps().size(); ++i) {
        double lowest = min_choi_eigenvalue(x.map(i));
        cp[x.outcomes().label(i)] = lowest;
        all_cp = all_cp && is_completely_positive(x.map(i), tol);
    }
    r.payload["min_choi_eigenvalue"] = std::move(cp);
    r.payload["completely_positive"] = all_cp;
    r.payload["decomposable"] = is_decomposable(x, tol);

    bool projective = is_projective(effects, tol);
    r.payload["projective"] = projective;
    if (projective) {
        // Observable-measuring instruments must satisfy the decomposition identities.
        SharpObservable e(x.outcomes(), effects);
        r.payload["nondegenerate"] = is_nondegenerate(e);
        CheckReport identities = check_decomposition_identities(x, e, tol);
        r.checks.insert(r.checks.end(), identities.checks.begin(), identities.checks.end());
    }
}

void check_document(Report& r, const Json& doc, double tol) {
    if (!doc.is_object()) throw ParseError("document must be a JSON object");
    if (doc.contains("maps")) {
        r.payload["kind"] = "instrument";
        check_instrument(r, io::instrument_from_json(doc, false), tol);
    } else if (doc.contains("instrument")) {
        r.payload["kind"] = "apparatus";
        check_instrument(r, io::instrument_from_json(doc.at("instrument"), false), tol);
    } else if (doc.contains("projections")) {
        r.payload["kind"] = "observable";
        std::vector<ComplexMatrix> ops;
        for (const auto& [label, m] : doc.at("projections").items()) ops.push_back(io::matrix_from_json(m));
        if (ops.empty()) throw ParseError("observable has no projections");
        check_effect_family(r, ops, true, tol);
        if (r.pass()) {
            SharpObservable e = io::observable_from_json(doc);
            r.payload["nondegenerate"] = is_nondegenerate(e);
            Json ranks = Json::object();
            for (std::size_t i = 0; i < e.outcomes().size(); ++i) ranks[e.outcomes().label(i)] = projection_rank(e.projection(i));
            r.payload["ranks"] = std::move(ranks);
        }
    } else if (doc.contains("effects")) {
        r.payload["kind"] = "povm";
        std::vector<ComplexMatrix> ops;
        for (const auto& [label, m] : doc.at("effects").items()) ops.push_back(io::matrix_from_json(m));
        if (ops.empty()) throw ParseError("POVM has no effects");
        check_effect_family(r, ops, false, tol);
        if (r.pass()) io::povm_from_json(doc);
    } else if (doc.contains("unitary")) {
        r.payload["kind"] = "model";
        ComplexMatrix u = io::matrix_from_json(doc.at("unitary"));
        r.checks.push_back(CheckResult::of("coupling unitary", unitarity_defect(u), std::max(tol, 1e-10)));
        check_state_matrix(r, io::matrix_from_json(doc.at("ancilla_state")), tol, "ancilla state ");
        if (r.pass()) {
            IndirectModel m = io::model_from_json(doc);
            Instrument x = instrument_of_model(m);
            r.payload["instrument"] = io::to_json(x);
            r.payload["completely_positive"] = is_instrument_cp(x, tol);
        }
    } else if (doc.contains("kraus") || doc.contains("natural")) {
        r.payload["kind"] = "superoperator";
        Superoperator l = io::superop_from_json(doc);
        r.payload["dim"] = l.dim();
        r.payload["completely_positive"] = is_completely_positive(l, tol);
        r.payload["trace_preserving"] = is_trace_preserving(l, tol);
        r.payload["min_choi_eigenvalue"] = min_choi_eigenvalue(l);
    } else if (doc.contains("states")) {
        r.payload["kind"] = "state_family";
        for (const auto& [label, m] : doc.at("states").items()) {
            check_state_matrix(r, io::matrix_from_json(m), tol, "state[" + label + "] ");
        }
        if (r.pass()) io::state_family_from_json(doc);
    } else if (doc.contains("rows")) {
        r.payload["kind"] = "state";
        check_state_matrix(r, io::matrix_from_json(doc), tol);
    } else {
        throw ParseError("unrecognized document kind");
    }
}

std::vector<Apparatus> load_sequence(const std::vector<std::string>& paths) {
    if (paths.empty()) throw ValidationError("at least one instrument file is required");
    std::vector<Apparatus> sequence;
    for (const auto& path : paths) {
        Json doc = io::read_file(path);
        if (doc.is_object() && doc.contains("instrument")) {
            sequence.push_back(io::apparatus_from_json(doc));
        } else {
            sequence.push_back(Apparatus::from_instrument(path, io::instrument_from_json(doc)));
        }
    }
    return sequence;
}

double normalization_defect(const JointDistribution& j) {
    double total = 0.0;
    for (double p : j.probabilities()) total += p;
    return std::abs(total - 1.0);
}

}  // namespace

bool Report::pass() const {
    return error.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

io::Json Report::to_json() const {
    Json checks_json = Json::array();
    for (const auto& c : checks) {
        checks_json.push_back(
            Json{{"name", c.name}, {"max_deviation", c.max_deviation}, {"tolerance", c.tolerance}, {"pass", c.pass}});
    }
    Json out{{"command", command}, {"pass", pass()}, {"checks", std::move(checks_json)}};
    if (!error.empty()) out["error"] = error;
    if (!payload.empty()) out["payload"] = payload;
    return out;
}

Report cmd_check(const std::string& path, double tol) {
    return guarded("check", [&](Report& r) { check_document(r, io::read_file(path), tol); });
}

Report cmd_povm(const std::string& path, double tol) {
    return guarded("povm", [&](Report& r) {
        Json doc = io::read_file(path);
        const Json& body = doc.is_object() && doc.contains("instrument") ? doc.at("instrument") : doc;
        Instrument x = io::instrument_from_json(body, false);
        CheckReport validity = x.validation_report(tol);
        r.checks = validity.checks;
        if (!validity.pass()) return;
        r.payload["povm"] = io::to_json(povm_of(x));
    });
}

Report cmd_dilate(const std::string& path, const std::string& out_path, double tol) {
    return guarded("dilate", [&](Report& r) {
        Instrument x = io::instrument_from_json(io::read_file(path));
        double worst = 0.0;
        for (const auto& m : x.maps()) worst = std::min(worst, min_choi_eigenvalue(m));
        r.checks.push_back(CheckResult::of("completely positive", std::max(0.0, -worst), tol));
        r.payload["min_choi_eigenvalue"] = worst;
        if (!is_instrument_cp(x, tol)) {
            r.error = "instrument is not completely positive (min Choi eigenvalue " + std::to_string(worst) +
                      "), no unitary realization exists";
            r.exit_code = kSemanticFailure;
            return;
        }
        IndirectModel model = dilate(x, tol);
        CheckReport roundtrip = verify_realization(model, x, tol);
        r.checks.insert(r.checks.end(), roundtrip.checks.begin(), roundtrip.checks.end());
        r.checks.push_back(CheckResult::of("coupling unitary", unitarity_defect(model.coupling()), 1e-10));
        r.payload["roundtrip_deviation"] = roundtrip.max_deviation();
        r.payload["anc_dim"] = model.anc_dim();
        Json model_json = io::to_json(model);
        if (!out_path.empty()) {
            io::write_file(out_path, model_json);
            r.payload["output"] = out_path;
        } else {
            r.payload["model"] = std::move(model_json);
        }
    });
}

Report cmd_simulate(const std::vector<std::string>& instrument_paths, const std::string& state_path,
                    std::uint64_t shots, std::uint64_t seed, double tol) {
    return guarded("simulate", [&](Report& r) {
        std::vector<Apparatus> sequence = load_sequence(instrument_paths);
        DensityOperator rho = io::state_from_json(io::read_file(state_path));
        if (shots == 0) throw ValidationError("shots must be positive");
        JointDistribution exact = joint_distribution(sequence, rho);
        Trajectories sampled = sample_trajectory(sequence, rho, shots, seed);

        Json tallies = Json::array();
        double worst_z = 0.0;
        const auto n = static_cast<double>(shots);
        for (std::size_t i = 0; i < exact.size(); ++i) {
            double p = exact.probabilities()[i];
            double count = static_cast<double>(sampled.counts[i]);
            double sd = std::sqrt(n * p * (1.0 - p));
            double z = sd > 0.0 ? (count - n * p) / sd : (std::abs(count - n * p) < 0.5 ? 0.0 : HUGE_VAL);
            worst_z = std::max(worst_z, std::abs(z));
            Json entry{{"outcomes", exact.labels(i)},
                       {"probability", p},
                       {"count", sampled.counts[i]},
                       {"frequency", count / n}};
            entry["z"] = std::isfinite(z) ? Json(z) : Json(nullptr);
            tallies.push_back(std::move(entry));
        }
        r.checks.push_back(CheckResult::of("joint normalization", normalization_defect(exact), tol));
        r.checks.push_back(CheckResult::of("max |z|", worst_z, kZScoreLimit));
        r.payload["shots"] = shots;
        r.payload["seed"] = seed;
        r.payload["joint"] = io::to_json(exact);
        r.payload["tallies"] = std::move(tallies);
    });
}

Report cmd_joint(const std::vector<std::string>& instrument_paths, const std::string& state_path, double tol) {
    return guarded("joint", [&](Report& r) {
        std::vector<Apparatus> sequence = load_sequence(instrument_paths);
        DensityOperator rho = io::state_from_json(io::read_file(state_path));
        JointDistribution exact = joint_distribution(sequence, rho);
        r.checks.push_back(CheckResult::of("joint normalization", normalization_defect(exact), tol));
        r.payload["joint"] = io::to_json(exact);
    });
}

Report cmd_mlpd(const std::vector<std::string>& instrument_paths, std::uint64_t trials, std::uint64_t seed,
                double tol) {
    return guarded("mlpd", [&](Report& r) {
        std::vector<Apparatus> sequence = load_sequence(instrument_paths);
        if (trials == 0) throw ValidationError("trials must be positive");
        MlpdVerdict verdict = check_mlpd(sequence, trials, seed, tol);
        double deviation = verdict.witness ? verdict.witness->deviation : 0.0;
        r.checks.push_back(CheckResult::of("mixing law", deviation, tol));
        r.payload["verdict"] = verdict.affine() ? "affine" : "violated";
        r.payload["trials"] = verdict.trials_run;
        r.payload["seed"] = seed;
        if (verdict.witness) {
            const auto& w = *verdict.witness;
            r.payload["witness"] = Json{{"rho1", io::to_json(w.rho1)},
                                        {"rho2", io::to_json(w.rho2)},
                                        {"alpha", w.alpha},
                                        {"outcomes", w.tuple},
                                        {"probability_of_mixture", w.of_mixture},
                                        {"mixture_of_probabilities", w.mixture_of},
                                        {"deviation", w.deviation}};
        } else {
            r.payload["note"] = "instrument-backed schemes are affine in the input state";
        }
    });
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"qinst: validate, dilate and simulate finite quantum instruments"};
    app.require_subcommand(1);

    double tol = kDefaultTol;
    std::uint64_t seed = 1;
    std::uint64_t shots = 10000;
    std::uint64_t trials = 100;
    std::string out_path;
    std::string state_path;
    std::string single_path;
    std::vector<std::string> paths;

    auto add_tol = [&](CLI::App* sub) { sub->add_option("--tol", tol, "numerical tolerance")->capture_default_str(); };

    auto* check = app.add_subcommand("check", "validate a state, observable, POVM, superoperator, instrument or model");
    check->add_option("file", single_path)->required();
    add_tol(check);

    auto* povm = app.add_subcommand("povm", "extract the POVM of an instrument");
    povm->add_option("file", single_path)->required();
    add_tol(povm);

    auto* dil = app.add_subcommand("dilate", "build an indirect measurement model for a CP instrument");
    dil->add_option("file", single_path)->required();
    dil->add_option("-o", out_path, "output model file");
    add_tol(dil);

    auto* sim = app.add_subcommand("simulate", "sample successive measurements and compare with the exact joint");
    sim->add_option("instruments", paths)->required();
    sim->add_option("--state", state_path, "input state file")->required();
    sim->add_option("--shots", shots)->capture_default_str();
    sim->add_option("--seed", seed)->capture_default_str();
    add_tol(sim);

    auto* joint = app.add_subcommand("joint", "exact joint distribution of successive measurements");
    joint->add_option("instruments", paths)->required();
    joint->add_option("--state", state_path, "input state file")->required();
    add_tol(joint);

    auto* mlpd = app.add_subcommand("mlpd", "test the mixing law on random mixtures");
    mlpd->add_option("instruments", paths)->required();
    mlpd->add_option("--trials", trials)->capture_default_str();
    mlpd->add_option("--seed", seed)->capture_default_str();
    add_tol(mlpd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kPass : kIoFailure;
    }

    Report report;
    if (*check) {
        report = cmd_check(single_path, tol);
    } else if (*povm) {
        report = cmd_povm(single_path, tol);
    } else if (*dil) {
        report = cmd_dilate(single_path, out_path, tol);
    } else if (*sim) {
        report = cmd_simulate(paths, state_path, shots, seed, tol);
    } else if (*joint) {
        report = cmd_joint(paths, state_path, tol);
    } else {
        report = cmd_mlpd(paths, trials, seed, tol);
    }

    out << report.to_json().dump(2) << '\n';
    std::size_t failed = static_cast<std::size_t>(
        std::count_if(report.checks.begin(), report.checks.end(), [](const CheckResult& c) { return !c.pass; }));
    err << report.command << ": " << (report.pass() ? "PASS" : "FAIL") << " (" << report.checks.size() << " checks, "
        << failed << " failed)";
    if (!report.error.empty()) err << ": " << report.error;
    err << '\n';
    return report.exit_code;
}

}  // namespace qinst::cli
