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

#include "qinst/io.hpp"

#include <fstream>
#include <sstream>

#include "qinst/errors.hpp"

namespace qinst::io {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) throw ParseError(std::string("expected an object containing '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
    return *it;
}

std::size_t count_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
        throw ParseError(std::string("field '") + key + "' must be a nonnegative integer");
    }
    return v.get<std::size_t>();
}

OutcomeSpace outcomes_from_json(const Json& j) {
    const Json& arr = field(j, "outcomes");
    if (!arr.is_array()) throw ParseError("'outcomes' must be an array");
    std::vector<std::string> labels;
    for (const auto& l : arr) {
        if (l.is_string()) {
            labels.push_back(l.get<std::string>());
        } else if (l.is_number_integer()) {
            labels.push_back(std::to_string(l.get<long long>()));
        } else {
            throw ParseError("outcome labels must be strings or integers");
        }
    }
    return OutcomeSpace(std::move(labels));
}

Json outcomes_to_json(const OutcomeSpace& s) { return Json(s.labels()); }

/// Values of a label-keyed object, in outcome order.
std::vector<Json> per_outcome(const Json& j, const char* key, const OutcomeSpace& outcomes) {
    const Json& obj = field(j, key);
    if (!obj.is_object()) throw ParseError(std::string("'") + key + "' must be an object keyed by outcome label");
    if (obj.size() != outcomes.size()) {
        throw ParseError(std::string("'") + key + "' must have exactly one entry per outcome");
    }
    std::vector<Json> out;
    for (const auto& label : outcomes.labels()) {
        auto it = obj.find(label);
        if (it == obj.end()) throw ParseError(std::string("'") + key + "' has no entry for outcome '" + label + "'");
        out.push_back(*it);
    }
    return out;
}

void require_dim_field(const Json& j, std::size_t actual) {
    if (j.contains("dim") && count_field(j, "dim") != actual) {
        throw DimensionError("declared dim " + std::to_string(count_field(j, "dim")) + " does not match operator size " +
                             std::to_string(actual));
    }
}

}  // namespace

Json to_json(const ComplexMatrix& m) {
    Json data = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index k = 0; k < m.cols(); ++k) data.push_back({m(i, k).real(), m(i, k).imag()});
    }
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
    std::size_t rows = count_field(j, "rows");
    std::size_t cols = count_field(j, "cols");
    const Json& data = field(j, "data");
    if (!data.is_array() || data.size() != rows * cols) {
        throw ParseError("matrix 'data' must hold rows*cols entries");
    }
    ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t idx = 0; idx < data.size(); ++idx) {
        const Json& z = data[idx];
        Complex value;
        if (z.is_number()) {
            value = z.get<double>();
        } else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
            value = Complex(z[0].get<double>(), z[1].get<double>());
        } else {
            throw ParseError("matrix entries must be [re, im] pairs");
        }
        m(static_cast<Eigen::Index>(idx / cols), static_cast<Eigen::Index>(idx % cols)) = value;
    }
    if (!all_finite(m)) throw ParseError("matrix has non-finite entries");
    return m;
}

Json to_json(const DensityOperator& rho) { return to_json(rho.matrix()); }

DensityOperator state_from_json(const Json& j) { return DensityOperator(matrix_from_json(j)); }

Json to_json(const SharpObservable& e) {
    Json projections = Json::object();
    for (std::size_t i = 0; i < e.outcomes().size(); ++i) projections[e.outcomes().label(i)] = to_json(e.projection(i));
    return Json{{"dim", e.dim()}, {"outcomes", outcomes_to_json(e.outcomes())}, {"projections", std::move(projections)}};
}

SharpObservable observable_from_json(const Json& j) {
    OutcomeSpace outcomes = outcomes_from_json(j);
    std::vector<ComplexMatrix> projections;
    for (const auto& m : per_outcome(j, "projections", outcomes)) projections.push_back(matrix_from_json(m));
    SharpObservable e(std::move(outcomes), std::move(projections));
    require_dim_field(j, e.dim());
    return e;
}

Json to_json(const Povm& f) {
    Json effects = Json::object();
    for (std::size_t i = 0; i < f.outcomes().size(); ++i) effects[f.outcomes().label(i)] = to_json(f.effect(i));
    return Json{{"dim", f.dim()}, {"outcomes", outcomes_to_json(f.outcomes())}, {"effects", std::move(effects)}};
}

Povm povm_from_json(const Json& j) {
    OutcomeSpace outcomes = outcomes_from_json(j);
    std::vector<ComplexMatrix> effects;
    for (const auto& m : per_outcome(j, "effects", outcomes)) effects.push_back(matrix_from_json(m));
    Povm f(std::move(outcomes), std::move(effects));
    require_dim_field(j, f.dim());
    return f;
}

Json to_json(const Superoperator& l) {
    if (is_completely_positive(l)) {
        Json ops = Json::array();
        for (const auto& k : kraus(l).operators) ops.push_back(to_json(k));
        return Json{{"kraus", std::move(ops)}};
    }
    return Json{{"natural", to_json(l.natural())}};
}

Superoperator superop_from_json(const Json& j) {
    if (j.is_object() && j.contains("kraus")) {
        const Json& arr = j.at("kraus");
        if (!arr.is_array() || arr.empty()) throw ParseError("'kraus' must be a nonempty array of matrices");
        KrausSet set;
        for (const auto& m : arr) set.operators.push_back(matrix_from_json(m));
        return Superoperator::from_kraus(set);
    }
    if (j.is_object() && j.contains("natural")) {
        return Superoperator::from_natural(matrix_from_json(j.at("natural")));
    }
    throw ParseError("superoperator must have a 'kraus' or 'natural' field");
}

Json to_json(const Instrument& x) {
    Json maps = Json::object();
    for (std::size_t i = 0; i < x.outcomes().size(); ++i) maps[x.outcomes().label(i)] = to_json(x.map(i));
    return Json{{"dim", x.dim()}, {"outcomes", outcomes_to_json(x.outcomes())}, {"maps", std::move(maps)}};
}

Instrument instrument_from_json(const Json& j, bool validate) {
    OutcomeSpace outcomes = outcomes_from_json(j);
    std::vector<Superoperator> maps;
    for (const auto& m : per_outcome(j, "maps", outcomes)) maps.push_back(superop_from_json(m));
    Instrument x = validate ? Instrument::create(std::move(outcomes), std::move(maps))
                            : Instrument::unchecked(std::move(outcomes), std::move(maps));
    require_dim_field(j, x.dim());
    return x;
}

Json to_json(const StateFamily& f) {
    Json states = Json::object();
    for (std::size_t i = 0; i < f.outcomes().size(); ++i) states[f.outcomes().label(i)] = to_json(f.state(i));
    return Json{{"outcomes", outcomes_to_json(f.outcomes())}, {"states", std::move(states)}};
}

StateFamily state_family_from_json(const Json& j) {
    OutcomeSpace outcomes = outcomes_from_json(j);
    std::vector<DensityOperator> states;
    for (const auto& m : per_outcome(j, "states", outcomes)) states.push_back(state_from_json(m));
    return StateFamily(std::move(outcomes), std::move(states));
}

Json to_json(const IndirectModel& m) {
    return Json{{"sys_dim", m.sys_dim()},
                {"anc_dim", m.anc_dim()},
                {"ancilla_state", to_json(m.ancilla_state())},
                {"unitary", to_json(m.coupling())},
                {"probe", to_json(m.probe())}};
}

IndirectModel model_from_json(const Json& j) {
    std::size_t sys_dim = count_field(j, "sys_dim");
    std::size_t anc_dim = count_field(j, "anc_dim");
    DensityOperator sigma = state_from_json(field(j, "ancilla_state"));
    if (sigma.dim() != anc_dim) throw DimensionError("ancilla_state does not match anc_dim");
    return IndirectModel(sys_dim, std::move(sigma), matrix_from_json(field(j, "unitary")),
                         observable_from_json(field(j, "probe")));
}

Json to_json(const Apparatus& a) {
    const Instrument* x = a.instrument();
    if (!x) throw ValidationError("black-box apparatus '" + a.label() + "' has no serialized form");
    return Json{{"label", a.label()}, {"instrument", to_json(*x)}};
}

Apparatus apparatus_from_json(const Json& j) {
    const Json& label = field(j, "label");
    if (!label.is_string()) throw ParseError("'label' must be a string");
    return Apparatus::from_instrument(label.get<std::string>(), instrument_from_json(field(j, "instrument")));
}

Json to_json(const OutcomeDistribution& p) {
    Json out = Json::object();
    for (std::size_t i = 0; i < p.outcomes().size(); ++i) out[p.outcomes().label(i)] = p[i];
    return out;
}

Json to_json(const JointDistribution& p) {
    Json entries = Json::array();
    for (std::size_t i = 0; i < p.size(); ++i) {
        entries.push_back(Json{{"outcomes", p.labels(i)}, {"probability", p.probabilities()[i]}});
    }
    return entries;
}

Json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return Json::parse(buffer.str());
    } catch (const Json::parse_error& err) {
        throw ParseError("'" + path + "' is not valid JSON: " + err.what());
    }
}

void write_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
    if (!out) throw ParseError("failed writing '" + path + "'");
}

}  // namespace qinst::io
