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

#include <string>

#include <nlohmann/json.hpp>

#include "qinst/dilation.hpp"
#include "qinst/instruments.hpp"
#include "qinst/objects.hpp"
#include "qinst/schemes.hpp"
#include "qinst/superop.hpp"

// JSON encodings. Matrices are {"rows": n, "cols": m, "data": [[re, im], ...]}
// in row-major order; every other document is built from matrix objects.
// Readers throw ParseError on schema problems and ValidationError /
// DimensionError when the decoded value violates its invariants.

namespace qinst::io {

using Json = nlohmann::ordered_json;

Json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json to_json(const DensityOperator& rho);
DensityOperator state_from_json(const Json& j);

Json to_json(const SharpObservable& e);
SharpObservable observable_from_json(const Json& j);

Json to_json(const Povm& f);
Povm povm_from_json(const Json& j);

/// {"kraus": [...]} when completely positive, else {"natural": matrix}.
Json to_json(const Superoperator& l);
/// Accepts either form.
Superoperator superop_from_json(const Json& j);

Json to_json(const Instrument& x);
/// With validate = false the instrument is built unchecked.
Instrument instrument_from_json(const Json& j, bool validate = true);

Json to_json(const StateFamily& f);
StateFamily state_family_from_json(const Json& j);

Json to_json(const IndirectModel& m);
IndirectModel model_from_json(const Json& j);

/// Instrument-backed apparatuses only.
Json to_json(const Apparatus& a);
Apparatus apparatus_from_json(const Json& j);

Json to_json(const OutcomeDistribution& p);
Json to_json(const JointDistribution& p);

/// Reads and parses a file; throws ParseError if it cannot be read or is not JSON.
Json read_file(const std::string& path);
/// Throws ParseError if the file cannot be written.
void write_file(const std::string& path, const Json& j);

}  // namespace qinst::io
