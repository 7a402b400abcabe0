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

#include "activeris/activeris.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iostream>
#include <new>
#include <string>

#include "activeris/asymptotics.hpp"
#include "activeris/baselines.hpp"
#include "activeris/scenario.hpp"
#include "activeris/units.hpp"
#include "activeris/validation.hpp"

struct aris_scenario {
    activeris::ScenarioSpec spec;
};

struct aris_sweep {
    std::vector<activeris::ResultRow> rows;
};

struct aris_report {
    activeris::validation::Report report;
    std::string json;
};

namespace {

thread_local std::string g_last_error;

aris_status fail(aris_status status, std::string message)
{
    g_last_error = std::move(message);
    return status;
}

// Runs `fn`, mapping exceptions to status codes.
template <class Fn>
aris_status guarded(Fn&& fn)
{
    try {
        g_last_error.clear();
        return fn();
    } catch (const activeris::ConfigError& e) {
        return fail(ARIS_ERR_CONFIG, e.what());
    } catch (const activeris::InfeasibleAmplificationError& e) {
        return fail(ARIS_ERR_INFEASIBLE, e.what());
    } catch (const activeris::RegularizationError& e) {
        return fail(ARIS_ERR_NUMERICAL, e.what());
    } catch (const activeris::DomainError& e) {
        return fail(ARIS_ERR_DOMAIN, e.what());
    } catch (const std::bad_alloc&) {
        return fail(ARIS_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(ARIS_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(ARIS_ERR_INTERNAL, "unknown error");
    }
}

#define ARIS_REQUIRE(cond, msg)                                                                    \
    do {                                                                                           \
        if (!(cond))                                                                               \
            return fail(ARIS_ERR_INVALID_ARGUMENT, msg);                                           \
    } while (0)

activeris::BaselineKind to_kind(aris_method m)
{
    switch (m) {
    case ARIS_METHOD_NO_RIS:
        return activeris::BaselineKind::NoRis;
    case ARIS_METHOD_PASSIVE_RIS:
        return activeris::BaselineKind::PassiveRis;
    case ARIS_METHOD_ACTIVE_RIS:
        return activeris::BaselineKind::ActiveRis;
    }
    throw activeris::DomainError("unknown method");
}

aris_method to_method(activeris::BaselineKind k)
{
    switch (k) {
    case activeris::BaselineKind::NoRis:
        return ARIS_METHOD_NO_RIS;
    case activeris::BaselineKind::PassiveRis:
        return ARIS_METHOD_PASSIVE_RIS;
    case activeris::BaselineKind::ActiveRis:
        break;
    }
    return ARIS_METHOD_ACTIVE_RIS;
}

activeris::asymptotics::AsymptoticConfig to_cfg(const aris_asymptotic_config& c)
{
    activeris::asymptotics::AsymptoticConfig out;
    out.n_elements = c.n_elements;
    out.bs_power = c.bs_power;
    out.ris_power = c.ris_power;
    out.var_f = c.var_f;
    out.var_g = c.var_g;
    out.sigma2 = c.sigma2;
    out.sigma_v2 = c.sigma_v2;
    return out;
}

aris_asymptotic_config from_cfg(const activeris::asymptotics::AsymptoticConfig& c)
{
    return {c.n_elements, c.bs_power, c.ris_power, c.var_f, c.var_g, c.sigma2, c.sigma_v2};
}

// Opens `path` for writing ("-" is stdout) and hands the stream to `fn`.
template <class Fn>
aris_status with_output(const char* path, Fn&& fn)
{
    if (std::strcmp(path, "-") == 0) {
        fn(std::cout);
        std::cout.flush();
        return std::cout ? ARIS_OK : fail(ARIS_ERR_IO, "write to stdout failed");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        return fail(ARIS_ERR_IO, std::string("cannot open '") + path + "' for writing");
    fn(out);
    out.close();
    if (!out)
        return fail(ARIS_ERR_IO, std::string("write to '") + path + "' failed");
    return ARIS_OK;
}

} // namespace

extern "C" {

const char* aris_version(void)
{
    return "0.1.0";
}

const char* aris_status_string(aris_status status)
{
    switch (status) {
    case ARIS_OK:
        return "ok";
    case ARIS_ERR_INVALID_ARGUMENT:
        return "invalid argument";
    case ARIS_ERR_DOMAIN:
        return "domain error";
    case ARIS_ERR_CONFIG:
        return "configuration error";
    case ARIS_ERR_INFEASIBLE:
        return "infeasible amplification";
    case ARIS_ERR_NUMERICAL:
        return "numerical error";
    case ARIS_ERR_IO:
        return "i/o error";
    case ARIS_ERR_INTERNAL:
        return "internal error";
    }
    return "unknown status";
}

const char* aris_last_error(void)
{
    return g_last_error.c_str();
}

aris_status aris_parse_quantity(const char* text, double* out)
{
    ARIS_REQUIRE(text && out, "null argument");
    return guarded([&] {
        *out = activeris::units::parse_quantity(text);
        return ARIS_OK;
    });
}

aris_status aris_method_parse(const char* text, aris_method* out)
{
    ARIS_REQUIRE(text && out, "null argument");
    return guarded([&] {
        *out = to_method(activeris::parse_baseline_kind(text));
        return ARIS_OK;
    });
}

const char* aris_method_name(aris_method method)
{
    switch (method) {
    case ARIS_METHOD_NO_RIS:
        return "no_ris";
    case ARIS_METHOD_PASSIVE_RIS:
        return "passive_ris";
    case ARIS_METHOD_ACTIVE_RIS:
        return "active_ris";
    }
    return "unknown";
}

aris_status aris_suite_parse(const char* text, aris_suite* out)
{
    ARIS_REQUIRE(text && out, "null argument");
    return guarded([&] {
        using activeris::validation::Suite;
        switch (activeris::validation::parse_suite(text)) {
        case Suite::All:
            *out = ARIS_SUITE_ALL;
            break;
        case Suite::Identities:
            *out = ARIS_SUITE_IDENTITIES;
            break;
        case Suite::Optimizer:
            *out = ARIS_SUITE_OPTIMIZER;
            break;
        case Suite::Qcqp:
            *out = ARIS_SUITE_QCQP;
            break;
        case Suite::Asymptotics:
            *out = ARIS_SUITE_ASYMPTOTICS;
            break;
        }
        return ARIS_OK;
    });
}

aris_status aris_scenario_builtin(int which, aris_scenario** out)
{
    ARIS_REQUIRE(out, "null output handle");
    *out = nullptr;
    return guarded([&] {
        *out = new aris_scenario{activeris::ScenarioSpec::builtin(which)};
        return ARIS_OK;
    });
}

aris_status aris_scenario_parse(const char* text, aris_scenario** out)
{
    ARIS_REQUIRE(text && out, "null argument");
    *out = nullptr;
    return guarded([&] {
        *out = new aris_scenario{activeris::parse_scenario(text)};
        return ARIS_OK;
    });
}

aris_status aris_scenario_load(const char* path, aris_scenario** out)
{
    ARIS_REQUIRE(path && out, "null argument");
    *out = nullptr;
    return guarded([&] {
        *out = new aris_scenario{activeris::load_scenario(path)};
        return ARIS_OK;
    });
}

void aris_scenario_free(aris_scenario* scenario)
{
    delete scenario;
}

aris_status aris_scenario_set_seed(aris_scenario* scenario, uint64_t seed)
{
    ARIS_REQUIRE(scenario, "null scenario");
    scenario->spec.seed = seed;
    return ARIS_OK;
}

aris_status aris_scenario_set_trials(aris_scenario* scenario, int trials)
{
    ARIS_REQUIRE(scenario, "null scenario");
    ARIS_REQUIRE(trials >= 1, "trials must be >= 1");
    scenario->spec.trials = trials;
    return ARIS_OK;
}

aris_status aris_scenario_set_threads(aris_scenario* scenario, int threads)
{
    ARIS_REQUIRE(scenario, "null scenario");
    ARIS_REQUIRE(threads >= 0, "threads must be >= 0");
    scenario->spec.threads = threads;
    return ARIS_OK;
}

aris_status aris_scenario_set_powers_dbw(aris_scenario* scenario, const double* values,
                                         size_t count)
{
    ARIS_REQUIRE(scenario && values && count > 0, "empty power list");
    for (size_t i = 0; i < count; ++i)
        ARIS_REQUIRE(std::isfinite(values[i]), "powers must be finite");
    scenario->spec.total_power_dbw.assign(values, values + count);
    return ARIS_OK;
}

aris_status aris_scenario_get_seed(const aris_scenario* scenario, uint64_t* out)
{
    ARIS_REQUIRE(scenario && out, "null argument");
    *out = scenario->spec.seed;
    return ARIS_OK;
}

aris_status aris_scenario_get_trials(const aris_scenario* scenario, int* out)
{
    ARIS_REQUIRE(scenario && out, "null argument");
    *out = scenario->spec.trials;
    return ARIS_OK;
}

aris_status aris_scenario_format(const aris_scenario* scenario, char* buffer, size_t capacity,
                                 size_t* needed)
{
    ARIS_REQUIRE(scenario, "null scenario");
    ARIS_REQUIRE(buffer || capacity == 0, "null buffer with non-zero capacity");
    return guarded([&] {
        const std::string text = activeris::format_scenario(scenario->spec);
        if (needed)
            *needed = text.size() + 1;
        if (capacity > 0) {
            const size_t n = std::min(capacity - 1, text.size());
            std::memcpy(buffer, text.data(), n);
            buffer[n] = '\0';
        }
        return ARIS_OK;
    });
}

aris_status aris_sweep_run(const aris_scenario* scenario, aris_progress_fn progress, void* user,
                           aris_sweep** out)
{
    ARIS_REQUIRE(scenario && out, "null argument");
    *out = nullptr;
    return guarded([&] {
        activeris::ProgressFn fn;
        if (progress)
            fn = [progress, user](int done, int total) { progress(done, total, user); };
        *out = new aris_sweep{activeris::run_sweep(scenario->spec, fn)};
        return ARIS_OK;
    });
}

void aris_sweep_free(aris_sweep* sweep)
{
    delete sweep;
}

size_t aris_sweep_row_count(const aris_sweep* sweep)
{
    return sweep ? sweep->rows.size() : 0;
}

aris_status aris_sweep_row(const aris_sweep* sweep, size_t index, aris_result_row* out)
{
    ARIS_REQUIRE(sweep && out, "null argument");
    ARIS_REQUIRE(index < sweep->rows.size(), "row index out of range");
    const auto& r = sweep->rows[index];
    *out = {to_method(r.method), r.total_power_dbw, r.mean_sum_rate_bps, r.stderr_bps, r.trials,
            r.converged_fraction};
    return ARIS_OK;
}

aris_status aris_sweep_relative_gain(const aris_sweep* sweep, aris_method method,
                                     double total_power_dbw, double* out)
{
    ARIS_REQUIRE(sweep && out, "null argument");
    return guarded([&] {
        const auto gain = activeris::relative_gain(sweep->rows, to_kind(method), total_power_dbw);
        if (!gain)
            return fail(ARIS_ERR_DOMAIN, "no rows for that method and power");
        *out = *gain;
        return ARIS_OK;
    });
}

aris_status aris_sweep_write_csv(const aris_sweep* sweep, const char* path)
{
    ARIS_REQUIRE(sweep && path, "null argument");
    return guarded([&] {
        return with_output(path, [&](std::ostream& os) { activeris::write_sweep_csv(os, sweep->rows); });
    });
}

void aris_asymptotic_reference(aris_asymptotic_config* passive, aris_asymptotic_config* active)
{
    const auto study = activeris::AsymptoticsStudy::reference();
    const auto cfgs = activeris::asymptotics::equal_total_power(study.base, study.total_power,
                                                                study.split_fraction);
    if (passive)
        *passive = from_cfg(cfgs.passive);
    if (active)
        *active = from_cfg(cfgs.active);
}

aris_status aris_passive_snr(const aris_asymptotic_config* cfg, double* out)
{
    ARIS_REQUIRE(cfg && out, "null argument");
    return guarded([&] {
        *out = activeris::asymptotics::passive_asymptotic_snr(to_cfg(*cfg));
        return ARIS_OK;
    });
}

aris_status aris_active_snr(const aris_asymptotic_config* cfg, double* out)
{
    ARIS_REQUIRE(cfg && out, "null argument");
    return guarded([&] {
        *out = activeris::asymptotics::active_asymptotic_snr(to_cfg(*cfg));
        return ARIS_OK;
    });
}

aris_status aris_active_snr_limits(const aris_asymptotic_config* cfg, double* bs_limit,
                                   double* ris_limit)
{
    ARIS_REQUIRE(cfg && bs_limit && ris_limit, "null argument");
    return guarded([&] {
        const auto c = to_cfg(*cfg);
        *bs_limit = activeris::asymptotics::active_snr_limit_bs(c);
        *ris_limit = activeris::asymptotics::active_snr_limit_ris(c);
        return ARIS_OK;
    });
}

aris_status aris_breakeven_elements(const aris_asymptotic_config* active, double bs_power_passive,
                                    double* out)
{
    ARIS_REQUIRE(active && out, "null argument");
    return guarded([&] {
        *out = activeris::asymptotics::breakeven_elements(to_cfg(*active), bs_power_passive);
        return ARIS_OK;
    });
}

aris_status aris_asymptotics_write_csv(const int* n_grid, size_t count, int trials, uint64_t seed,
                                       const char* path)
{
    ARIS_REQUIRE(path, "null path");
    ARIS_REQUIRE(trials >= 1, "trials must be >= 1");
    ARIS_REQUIRE(!n_grid || count > 0, "empty element grid");
    return guarded([&] {
        auto study = activeris::AsymptoticsStudy::reference();
        if (n_grid)
            study.n_grid.assign(n_grid, n_grid + count);
        study.trials = trials;
        study.seed = seed;
        const auto rows = activeris::run_asymptotics(study);
        return with_output(path, [&](std::ostream& os) { activeris::write_asymptotics_csv(os, rows); });
    });
}

aris_status aris_validate(aris_suite suite, uint64_t seed, int inject_mutation, aris_report** out)
{
    ARIS_REQUIRE(out, "null output handle");
    *out = nullptr;
    return guarded([&] {
        using activeris::validation::Suite;
        Suite s = Suite::All;
        switch (suite) {
        case ARIS_SUITE_ALL:
            break;
        case ARIS_SUITE_IDENTITIES:
            s = Suite::Identities;
            break;
        case ARIS_SUITE_OPTIMIZER:
            s = Suite::Optimizer;
            break;
        case ARIS_SUITE_QCQP:
            s = Suite::Qcqp;
            break;
        case ARIS_SUITE_ASYMPTOTICS:
            s = Suite::Asymptotics;
            break;
        default:
            return fail(ARIS_ERR_INVALID_ARGUMENT, "unknown suite");
        }
        activeris::validation::Options options;
        options.seed = seed;
        options.inject_rho_sign_error = inject_mutation != 0;
        auto* r = new aris_report{activeris::validation::run(s, options), {}};
        r->json = r->report.to_json();
        *out = r;
        return ARIS_OK;
    });
}

void aris_report_free(aris_report* report)
{
    delete report;
}

int aris_report_passed(const aris_report* report)
{
    return report && report->report.passed() ? 1 : 0;
}

size_t aris_report_check_count(const aris_report* report)
{
    return report ? report->report.checks.size() : 0;
}

aris_status aris_report_check(const aris_report* report, size_t index, aris_check* out)
{
    ARIS_REQUIRE(report && out, "null argument");
    ARIS_REQUIRE(index < report->report.checks.size(), "check index out of range");
    const auto& c = report->report.checks[index];
    *out = {c.suite.c_str(), c.name.c_str(), c.passed ? 1 : 0, c.measured, c.threshold,
            c.detail.c_str()};
    return ARIS_OK;
}

const char* aris_report_json(const aris_report* report)
{
    return report ? report->json.c_str() : "";
}

} // extern "C"
