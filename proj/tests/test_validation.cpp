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

#include <doctest.h>

#include <chrono>
#include <json.hpp>

#include "activeris/types.hpp"
#include "activeris/validation.hpp"

using namespace activeris;
using namespace activeris::validation;

TEST_SUITE("validation")
{
    TEST_CASE("suite names")
    {
        for (auto s : {Suite::All, Suite::Identities, Suite::Optimizer, Suite::Qcqp, Suite::Asymptotics})
            CHECK(parse_suite(to_string(s)) == s);
        CHECK_THROWS_AS(parse_suite("everything"), ConfigError);
    }

    TEST_CASE("identity suite passes quickly and reports JSON")
    {
        const auto start = std::chrono::steady_clock::now();
        const Report r = run(Suite::Identities);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        CHECK(secs < 60.0);
        CHECK(r.passed());
        REQUIRE(!r.checks.empty());
        const auto j = nlohmann::json::parse(r.to_json());
        CHECK(j.at("passed").get<bool>());
        CHECK(j.at("checks").size() == r.checks.size());
    }

    TEST_CASE("reduced optimizer suite passes and the mutation is caught")
    {
        Options opt;
        opt.optimizer_instances = 4;
        opt.tiny_instances = 2;
        CHECK(Report{optimizer_suite(opt), {}}.passed());
        opt.inject_rho_sign_error = true;
        const Report bad{optimizer_suite(opt), {}};
        CHECK(!bad.passed());
    }
}
