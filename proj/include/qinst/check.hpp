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

#include <algorithm>
#include <string>
#include <vector>

namespace qinst {

/// One named numerical check: the observed deviation against its tolerance.
struct CheckResult {
    std::string name;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool pass = true;

    static CheckResult of(std::string name, double deviation, double tolerance) {
        return {std::move(name), deviation, tolerance, deviation <= tolerance};
    }
};

struct CheckReport {
    std::vector<CheckResult> checks;

    bool pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
    }
    double max_deviation() const {
        double m = 0.0;
        for (const auto& c : checks) m = std::max(m, c.max_deviation);
        return m;
    }
    void add(CheckResult c) { checks.push_back(std::move(c)); }
    void append(const CheckReport& other) { checks.insert(checks.end(), other.checks.begin(), other.checks.end()); }
};

}  // namespace qinst
