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

// Command-line front end. Talks to the library only through the C API.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "activeris/activeris.h"

namespace {

constexpr const char* kSeedEnv = "ACTIVERIS_SEED";

struct Failure {
    int code;
};

void check(aris_status status, const std::string& what)
{
    if (status == ARIS_OK)
        return;
    std::fprintf(stderr, "activeris: %s: %s (%s)\n", what.c_str(), aris_last_error(),
                 aris_status_string(status));
    throw Failure{2};
}

double quantity(const std::string& text, const std::string& what)
{
    double v = 0.0;
    check(aris_parse_quantity(text.c_str(), &v), "bad value for " + what);
    return v;
}

std::uint64_t parse_seed(const std::string& text, const std::string& source)
{
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(text, &used, 0);
        if (used == text.size() && text.find('-') == std::string::npos)
            return v;
    } catch (const std::exception&) {
    }
    std::fprintf(stderr, "activeris: %s: '%s' is not a non-negative integer seed\n",
                 source.c_str(), text.c_str());
    throw Failure{2};
}

// --seed wins over the environment, which wins over the config.
std::optional<std::uint64_t> seed_override(const std::string& flag)
{
    if (!flag.empty())
        return parse_seed(flag, "--seed");
    if (const char* env = std::getenv(kSeedEnv); env && *env)
        return parse_seed(env, kSeedEnv);
    return std::nullopt;
}

struct Handle {
    aris_scenario* scenario = nullptr;
    aris_sweep* sweep = nullptr;
    aris_report* report = nullptr;
    ~Handle()
    {
        aris_scenario_free(scenario);
        aris_sweep_free(sweep);
        aris_report_free(report);
    }
};

void progress(int done, int total, void*)
{
    std::fprintf(stderr, "\rtrials %d/%d", done, total);
    if (done == total)
        std::fprintf(stderr, "\n");
    std::fflush(stderr);
}

struct SweepArgs {
    std::string out;
    std::string seed;
    int trials = 0;
    int threads = -1;
    std::vector<std::string> powers;
    bool quiet = false;
};

void add_sweep_flags(CLI::App* cmd, SweepArgs& a)
{
    cmd->add_option("--out,-o", a.out, "CSV output path ('-' for stdout)")->required();
    cmd->add_option("--seed", a.seed, std::string("RNG seed (overrides ") + kSeedEnv + ")");
    cmd->add_option("--trials", a.trials, "channel realizations per power")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--threads", a.threads, "worker threads, 0 = all cores")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--power", a.powers,
                    "total powers to sweep, e.g. 10dBW 20W (bare numbers are W)")
        ->delimiter(',');
    cmd->add_flag("--quiet,-q", a.quiet, "no progress output");
}

int run_sweep(Handle& h, const SweepArgs& a)
{
    if (const auto seed = seed_override(a.seed))
        check(aris_scenario_set_seed(h.scenario, *seed), "seed");
    if (a.trials > 0)
        check(aris_scenario_set_trials(h.scenario, a.trials), "trials");
    if (a.threads >= 0)
        check(aris_scenario_set_threads(h.scenario, a.threads), "threads");
    if (!a.powers.empty()) {
        std::vector<double> dbw;
        for (const auto& p : a.powers) {
            const double w = quantity(p, "--power");
            if (!(w > 0.0)) {
                std::fprintf(stderr, "activeris: --power values must be positive\n");
                return 2;
            }
            dbw.push_back(10.0 * std::log10(w));
        }
        check(aris_scenario_set_powers_dbw(h.scenario, dbw.data(), dbw.size()), "powers");
    }
    check(aris_sweep_run(h.scenario, a.quiet ? nullptr : progress, nullptr, &h.sweep), "sweep");
    check(aris_sweep_write_csv(h.sweep, a.out.c_str()), "writing CSV");
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"activeris: active and passive RIS beamforming simulations"};
    app.set_version_flag("--version", std::string(aris_version()));
    app.require_subcommand(1);

    SweepArgs sim_args;
    std::string config;
    auto* simulate = app.add_subcommand("simulate", "power sweep from a scenario config file");
    simulate->add_option("--config,-c", config, "scenario config file")
        ->required()
        ->check(CLI::ExistingFile);
    add_sweep_flags(simulate, sim_args);

    SweepArgs sweep_args;
    int scenario = 0;
    auto* sweep = app.add_subcommand("sweep", "power sweep of a built-in scenario");
    sweep->add_option("--scenario,-s", scenario, "1 = weak direct link, 2 = strong direct link")
        ->required()
        ->check(CLI::IsMember({1, 2}));
    add_sweep_flags(sweep, sweep_args);

    std::string asym_out;
    std::string asym_seed;
    int asym_trials = 1000;
    std::vector<int> n_grid;
    auto* asym = app.add_subcommand("asymptotics", "analytic and Monte Carlo SNR versus N");
    asym->add_option("--out,-o", asym_out, "CSV output path ('-' for stdout)")->required();
    asym->add_option("--trials", asym_trials, "Monte Carlo trials per point")
        ->check(CLI::PositiveNumber);
    asym->add_option("--n", n_grid, "element counts (default 64,256,1024,4096)")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    asym->add_option("--seed", asym_seed, std::string("RNG seed (overrides ") + kSeedEnv + ")");

    std::string total = "2W", split = "0.5", noise = "-70dBm", ris_noise = "-70dBm";
    std::string var_f = "-70dB", var_g = "-70dB";
    auto* breakeven = app.add_subcommand(
        "breakeven", "RIS size at which a passive RIS matches the active one");
    breakeven->add_option("--total-power", total, "power shared by BS and RIS")
        ->capture_default_str();
    breakeven->add_option("--split", split, "fraction of the total given to the BS (active)")
        ->capture_default_str();
    breakeven->add_option("--noise", noise, "user noise power")->capture_default_str();
    breakeven->add_option("--ris-noise", ris_noise, "RIS amplifier noise power")
        ->capture_default_str();
    breakeven->add_option("--pathloss-ris-user", var_f, "RIS-user channel gain")
        ->capture_default_str();
    breakeven->add_option("--pathloss-bs-ris", var_g, "BS-RIS channel gain")->capture_default_str();

    std::string suite_name = "all";
    std::string json_out;
    std::string val_seed;
    bool mutate = false;
    auto* validate = app.add_subcommand("validate", "run the built-in property suites");
    validate->add_option("--suite", suite_name, "all, identities, optimizer, qcqp or asymptotics")
        ->check(CLI::IsMember({"all", "identities", "optimizer", "qcqp", "asymptotics"}))
        ->capture_default_str();
    validate->add_option("--json", json_out, "write the machine-readable report here ('-' = stdout)");
    validate->add_option("--seed", val_seed, std::string("RNG seed (overrides ") + kSeedEnv + ")");
    validate->add_flag("--inject-rho-sign-error", mutate,
                       "mutation fixture: the optimizer suite must fail");

    CLI11_PARSE(app, argc, argv);

    try {
        Handle h;
        if (*simulate) {
            check(aris_scenario_load(config.c_str(), &h.scenario), "loading " + config);
            return run_sweep(h, sim_args);
        }
        if (*sweep) {
            check(aris_scenario_builtin(scenario, &h.scenario), "scenario");
            return run_sweep(h, sweep_args);
        }
        if (*asym) {
            const std::uint64_t seed = seed_override(asym_seed).value_or(1);
            check(aris_asymptotics_write_csv(n_grid.empty() ? nullptr : n_grid.data(),
                                             n_grid.size(), asym_trials, seed, asym_out.c_str()),
                  "asymptotics");
            return 0;
        }
        if (*breakeven) {
            const double p = quantity(total, "--total-power");
            const double s = quantity(split, "--split");
            if (!(s > 0.0 && s < 1.0) || !(p > 0.0)) {
                std::fprintf(stderr, "activeris: need total power > 0 and 0 < split < 1\n");
                return 2;
            }
            aris_asymptotic_config active{};
            aris_asymptotic_reference(nullptr, &active);
            active.bs_power = s * p;
            active.ris_power = (1.0 - s) * p;
            active.sigma2 = quantity(noise, "--noise");
            active.sigma_v2 = quantity(ris_noise, "--ris-noise");
            active.var_f = quantity(var_f, "--pathloss-ris-user");
            active.var_g = quantity(var_g, "--pathloss-bs-ris");
            double n = 0.0;
            check(aris_breakeven_elements(&active, p, &n), "breakeven");
            std::printf("breakeven_elements %.6g\n", n);
            return 0;
        }
        if (*validate) {
            aris_suite suite = ARIS_SUITE_ALL;
            check(aris_suite_parse(suite_name.c_str(), &suite), "suite");
            const std::uint64_t seed = seed_override(val_seed).value_or(1);
            check(aris_validate(suite, seed, mutate ? 1 : 0, &h.report), "validate");
            for (size_t i = 0; i < aris_report_check_count(h.report); ++i) {
                aris_check c{};
                check(aris_report_check(h.report, i, &c), "report");
                std::printf("%s %s/%s measured=%.3g limit=%.3g  %s\n", c.passed ? "PASS" : "FAIL",
                            c.suite, c.name, c.measured, c.threshold, c.detail);
            }
            if (!json_out.empty()) {
                if (json_out == "-") {
                    std::printf("%s\n", aris_report_json(h.report));
                } else if (FILE* f = std::fopen(json_out.c_str(), "w")) {
                    std::fprintf(f, "%s\n", aris_report_json(h.report));
                    std::fclose(f);
                } else {
                    std::fprintf(stderr, "activeris: cannot write %s\n", json_out.c_str());
                    return 2;
                }
            }
            const bool ok = aris_report_passed(h.report) != 0;
            std::printf("%s\n", ok ? "all checks passed" : "validation FAILED");
            return ok ? 0 : 1;
        }
    } catch (const Failure& f) {
        return f.code;
    }
    return 0;
}
