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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "activeris/activeris.h"

TEST_CASE("version and status strings")
{
    CHECK(std::string(aris_version()).size() > 0);
    CHECK(std::string(aris_status_string(ARIS_OK)) != std::string(aris_status_string(ARIS_ERR_IO)));
}

TEST_CASE("quantities and enums")
{
    double v = 0.0;
    REQUIRE(aris_parse_quantity("30 dBm", &v) == ARIS_OK);
    CHECK(v == doctest::Approx(1.0));
    REQUIRE(aris_parse_quantity("10dBW", &v) == ARIS_OK);
    CHECK(v == doctest::Approx(10.0));
    REQUIRE(aris_parse_quantity("-70 dB", &v) == ARIS_OK);
    CHECK(v == doctest::Approx(1e-7));
    CHECK(aris_parse_quantity("ten watts", &v) != ARIS_OK);
    CHECK(std::string(aris_last_error()).size() > 0);
    CHECK(aris_parse_quantity(nullptr, &v) == ARIS_ERR_INVALID_ARGUMENT);

    aris_method m;
    REQUIRE(aris_method_parse("active_ris", &m) == ARIS_OK);
    CHECK(m == ARIS_METHOD_ACTIVE_RIS);
    CHECK(std::string(aris_method_name(ARIS_METHOD_NO_RIS)) == "no_ris");
    CHECK(aris_method_parse("x", &m) == ARIS_ERR_CONFIG);
    aris_suite s;
    REQUIRE(aris_suite_parse("qcqp", &s) == ARIS_OK);
    CHECK(s == ARIS_SUITE_QCQP);
}

TEST_CASE("scenario handles")
{
    aris_scenario* sc = nullptr;
    CHECK(aris_scenario_builtin(5, &sc) == ARIS_ERR_CONFIG);
    CHECK(sc == nullptr);
    CHECK(aris_scenario_parse("trials = 0\n", &sc) == ARIS_ERR_CONFIG);
    CHECK(std::string(aris_last_error()).find("trials") != std::string::npos);
    CHECK(aris_scenario_load("/nonexistent.cfg", &sc) != ARIS_OK);

    REQUIRE(aris_scenario_builtin(1, &sc) == ARIS_OK);
    CHECK(aris_scenario_set_seed(sc, 99) == ARIS_OK);
    std::uint64_t seed = 0;
    CHECK(aris_scenario_get_seed(sc, &seed) == ARIS_OK);
    CHECK(seed == 99);
    CHECK(aris_scenario_set_trials(sc, 0) == ARIS_ERR_INVALID_ARGUMENT);
    CHECK(aris_scenario_set_trials(sc, 2) == ARIS_OK);
    int trials = 0;
    CHECK(aris_scenario_get_trials(sc, &trials) == ARIS_OK);
    CHECK(trials == 2);
    CHECK(aris_scenario_set_powers_dbw(sc, nullptr, 0) == ARIS_ERR_INVALID_ARGUMENT);

    size_t needed = 0;
    CHECK(aris_scenario_format(sc, nullptr, 0, &needed) == ARIS_OK);
    std::vector<char> buf(needed);
    CHECK(aris_scenario_format(sc, buf.data(), buf.size(), nullptr) == ARIS_OK);
    CHECK(std::string(buf.data()).find("seed = 99") != std::string::npos);

    aris_scenario* copy = nullptr;
    REQUIRE(aris_scenario_parse(buf.data(), &copy) == ARIS_OK);
    CHECK(aris_scenario_get_seed(copy, &seed) == ARIS_OK);
    CHECK(seed == 99);
    aris_scenario_free(copy);
    aris_scenario_free(sc);
    aris_scenario_free(nullptr);
}

namespace {
void count_progress(int, int, void* user) { ++*static_cast<int*>(user); }
} // namespace

TEST_CASE("small sweep through the C API")
{
    aris_scenario* sc = nullptr;
    REQUIRE(aris_scenario_parse("scenario = 2\nris_elements = 8\ntrials = 2\nmax_outer_iters = 30\n"
                                "total_power_dbw = 10\nthreads = 1\n",
                                &sc) == ARIS_OK);
    aris_sweep* sw = nullptr;
    int calls = 0;
    REQUIRE(aris_sweep_run(sc, count_progress, &calls, &sw) == ARIS_OK);
    CHECK(calls == 2);
    REQUIRE(aris_sweep_row_count(sw) == 3);
    aris_result_row row;
    CHECK(aris_sweep_row(sw, 0, &row) == ARIS_OK);
    CHECK(row.trials == 2);
    CHECK(row.total_power_dbw == 10.0);
    CHECK(aris_sweep_row(sw, 3, &row) == ARIS_ERR_INVALID_ARGUMENT);
    double gain = 0.0;
    CHECK(aris_sweep_relative_gain(sw, ARIS_METHOD_ACTIVE_RIS, 10.0, &gain) == ARIS_OK);
    CHECK(std::isfinite(gain));
    CHECK(aris_sweep_relative_gain(sw, ARIS_METHOD_ACTIVE_RIS, 3.0, &gain) == ARIS_ERR_DOMAIN);

    const std::string path = "c_api_sweep_test.csv";
    REQUIRE(aris_sweep_write_csv(sw, path.c_str()) == ARIS_OK);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "method,total_power_dbw,mean_sum_rate_bps,stderr,trials,converged_fraction");
    in.close();
    std::remove(path.c_str());
    CHECK(aris_sweep_write_csv(sw, "/nonexistent/dir/out.csv") == ARIS_ERR_IO);
    aris_sweep_free(sw);
    aris_scenario_free(sc);
}

TEST_CASE("asymptotic formulas")
{
    aris_asymptotic_config passive, active;
    aris_asymptotic_reference(&passive, &active);
    double p = 0.0, a = 0.0;
    REQUIRE(aris_passive_snr(&passive, &p) == ARIS_OK);
    REQUIRE(aris_active_snr(&active, &a) == ARIS_OK);
    CHECK(10 * std::log10(p) == doctest::Approx(9.0).epsilon(0.02));
    CHECK(10 * std::log10(a) == doctest::Approx(49.0).epsilon(0.01));
    double n = 0.0;
    REQUIRE(aris_breakeven_elements(&active, passive.bs_power, &n) == ARIS_OK);
    CHECK(n == doctest::Approx(2.5e6).epsilon(0.01));
    double bs = 0.0, ris = 0.0;
    REQUIRE(aris_active_snr_limits(&active, &bs, &ris) == ARIS_OK);
    CHECK(a < bs);
    CHECK(a < ris);
    active.n_elements = 0;
    CHECK(aris_active_snr(&active, &a) == ARIS_ERR_DOMAIN);
    CHECK(aris_passive_snr(nullptr, &p) == ARIS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("validation report")
{
    aris_report* r = nullptr;
    REQUIRE(aris_validate(ARIS_SUITE_IDENTITIES, 1, 0, &r) == ARIS_OK);
    CHECK(aris_report_passed(r) == 1);
    REQUIRE(aris_report_check_count(r) > 0);
    aris_check c;
    CHECK(aris_report_check(r, 0, &c) == ARIS_OK);
    CHECK(std::string(c.suite) == "identities");
    CHECK(c.passed == 1);
    CHECK(std::string(aris_report_json(r)).find("\"passed\"") != std::string::npos);
    CHECK(aris_report_check(r, 100000, &c) == ARIS_ERR_INVALID_ARGUMENT);
    aris_report_free(r);
}
