// activeris - active/passive RIS signal models and beamforming optimization
// Copyright (C) 2026 The activeris authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace activeris::validation {

enum class Suite { All, Identities, Optimizer, Qcqp, Asymptotics };

std::string_view to_string(Suite suite);
Suite parse_suite(std::string_view text);

struct Check {
    std::string suite;
    std::string name;
    bool passed = false;
    double measured = 0.0;  // worst observed value
    double threshold = 0.0; // limit it was compared against
    std::string detail;
};

struct Report {
    std::vector<Check> checks;
    std::vector<std::pair<std::string, double>> suite_seconds;

    bool passed() const;
    // {"passed": bool, "suites": {name: seconds}, "checks": [...]}
    std::string to_json() const;
};

struct Options {
    std::uint64_t seed = 1;
    int identity_instances = 1000;
    int optimizer_instances = 50;
    int tiny_instances = 20;
    int qcqp_instances = 100;
    int monte_carlo_trials = 1000;
    // Mutation fixture: flips the sign of the square-root term in the rho
    // update. The optimizer suite must fail with this set.
    bool inject_rho_sign_error = false;
};

std::vector<Check> identities_suite(const Options& options);
std::vector<Check> optimizer_suite(const Options& options);
std::vector<Check> qcqp_suite(const Options& options);
std::vector<Check> asymptotics_suite(const Options& options);

Report run(Suite suite, const Options& options = {});

} // namespace activeris::validation
