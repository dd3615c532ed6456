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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qinst/check.hpp"
#include "qinst/io.hpp"

namespace qinst::cli {

inline constexpr double kDefaultTol = 1e-9;

enum ExitCode : int { kPass = 0, kSemanticFailure = 1, kIoFailure = 2 };

/// Machine-readable outcome of one command. `pass` is the conjunction of the
/// checks; `error` is set when the command aborted.
struct Report {
    std::string command;
    std::vector<CheckResult> checks;
    io::Json payload = io::Json::object();
    std::string error;
    int exit_code = kPass;

    bool pass() const;
    io::Json to_json() const;
};

Report cmd_check(const std::string& path, double tol = kDefaultTol);
Report cmd_povm(const std::string& path, double tol = kDefaultTol);
/// Writes the model to out_path when it is nonempty.
Report cmd_dilate(const std::string& path, const std::string& out_path, double tol = kDefaultTol);
Report cmd_simulate(const std::vector<std::string>& instrument_paths, const std::string& state_path,
                    std::uint64_t shots, std::uint64_t seed, double tol = kDefaultTol);
Report cmd_joint(const std::vector<std::string>& instrument_paths, const std::string& state_path,
                 double tol = kDefaultTol);
Report cmd_mlpd(const std::vector<std::string>& instrument_paths, std::uint64_t trials, std::uint64_t seed,
                double tol = kDefaultTol);

/// Parses arguments, runs the command, prints the JSON report to `out` and a
/// one-line summary to `err`. Returns the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace qinst::cli
