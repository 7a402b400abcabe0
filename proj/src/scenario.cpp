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

#include "activeris/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "activeris/units.hpp"

namespace activeris {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

double parse_number(std::string_view text)
{
    const std::string_view s = trim(text);
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+')
        ++first;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (s.empty() || ec != std::errc() || ptr != last)
        throw ConfigError("expected a number, got '" + std::string(s) + "'");
    return v;
}

long long parse_integer(std::string_view text)
{
    const double v = parse_number(text);
    if (!std::isfinite(v) || v != std::floor(v) || std::abs(v) > 9.0e15)
        throw ConfigError("expected an integer, got '" + std::string(trim(text)) + "'");
    return static_cast<long long>(v);
}

// A power in watts, or in dBW when the text carries no unit and `bare_is_dbw`.
double parse_power(std::string_view text, bool bare_is_dbw)
{
    const std::string_view s = trim(text);
    const double v = units::parse_quantity(s);
    if (bare_is_dbw && !s.empty() && !std::isalpha(static_cast<unsigned char>(s.back())))
        return units::dbw_to_watt(v);
    return v;
}

Point2 parse_point(std::string_view text)
{
    const auto parts = split(text, ',');
    if (parts.size() != 2)
        throw ConfigError("expected 'x,y', got '" + std::string(trim(text)) + "'");
    return {parse_number(parts[0]), parse_number(parts[1])};
}

PathLossModel parse_pathloss(std::string_view text)
{
    const std::string_view s = trim(text);
    if (s == "strong")
        return PathLossModel::strong();
    if (s == "weak")
        return PathLossModel::weak();
    const auto parts = split(s, ',');
    if (parts.size() != 2)
        throw ConfigError("path loss must be strong, weak or 'intercept,slope': '" +
                          std::string(s) + "'");
    return {parse_number(parts[0]), parse_number(parts[1])};
}

// "a:step:b" (inclusive) or a comma list.
std::vector<double> parse_dbw_list(std::string_view text)
{
    const std::string_view s = trim(text);
    if (s.find(':') != std::string_view::npos) {
        const auto parts = split(s, ':');
        if (parts.size() != 3)
            throw ConfigError("range must be start:step:stop, got '" + std::string(s) + "'");
        const double a = parse_number(parts[0]);
        const double step = parse_number(parts[1]);
        const double b = parse_number(parts[2]);
        if (!(step > 0.0) || b < a)
            throw ConfigError("range needs step > 0 and stop >= start: '" + std::string(s) + "'");
        std::vector<double> out;
        const auto count = static_cast<long long>(std::floor((b - a) / step + 1e-9));
        if (count > 100000)
            throw ConfigError("power range too long");
        for (long long i = 0; i <= count; ++i)
            out.push_back(a + static_cast<double>(i) * step);
        return out;
    }
    std::vector<double> out;
    for (auto item : split(s, ',')) {
        // dB values are kept as written; only absolute units pass through watts.
        item = trim(item);
        if (item.size() >= 3 && item.substr(item.size() - 3) == "dBW")
            out.push_back(parse_number(item.substr(0, item.size() - 3)));
        else if (!item.empty() && !std::isalpha(static_cast<unsigned char>(item.back())))
            out.push_back(parse_number(item));
        else
            out.push_back(units::watt_to_dbw(parse_power(item, false)));
    }
    return out;
}

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_csv(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string format_pathloss(const PathLossModel& m)
{
    if (m.intercept_db == PathLossModel::strong().intercept_db &&
        m.slope_db_per_decade == PathLossModel::strong().slope_db_per_decade)
        return "strong";
    if (m.intercept_db == PathLossModel::weak().intercept_db &&
        m.slope_db_per_decade == PathLossModel::weak().slope_db_per_decade)
        return "weak";
    return fmt(m.intercept_db) + "," + fmt(m.slope_db_per_decade);
}

void apply_key(ScenarioSpec& spec, std::string_view key, std::string_view value)
{
    if (key == "name")
        spec.name = std::string(value);
    else if (key == "bs_position")
        spec.geometry.bs_position = parse_point(value);
    else if (key == "ris_position")
        spec.geometry.ris_position = parse_point(value);
    else if (key == "user_center")
        spec.geometry.user_center = parse_point(value);
    else if (key == "user_radius")
        spec.geometry.user_radius = parse_number(value);
    else if (key == "num_users" || key == "users") {
        spec.dims.users = static_cast<int>(parse_integer(value));
        spec.geometry.num_users = spec.dims.users;
    } else if (key == "bs_antennas")
        spec.dims.bs_antennas = static_cast<int>(parse_integer(value));
    else if (key == "ris_elements")
        spec.dims.ris_elements = static_cast<int>(parse_integer(value));
    else if (key == "kappa")
        spec.kappa = parse_number(value);
    else if (key == "pathloss_bs_user")
        spec.pathloss.bs_user = parse_pathloss(value);
    else if (key == "pathloss_bs_ris")
        spec.pathloss.bs_ris = parse_pathloss(value);
    else if (key == "pathloss_ris_user")
        spec.pathloss.ris_user = parse_pathloss(value);
    else if (key == "noise_power")
        spec.noise_power = parse_power(value, false);
    else if (key == "ris_noise_power")
        spec.ris_noise_power = parse_power(value, false);
    else if (key == "total_power") {
        spec.total_power_dbw.clear();
        for (auto item : split(value, ','))
            spec.total_power_dbw.push_back(units::watt_to_dbw(parse_power(item, false)));
    } else if (key == "total_power_dbw")
        spec.total_power_dbw = parse_dbw_list(value);
    else if (key == "split_fraction")
        spec.split_fraction = parse_number(value);
    else if (key == "trials")
        spec.trials = static_cast<int>(parse_integer(value));
    else if (key == "seed") {
        const long long s = parse_integer(value);
        if (s < 0)
            throw ConfigError("seed must be non-negative");
        spec.seed = static_cast<std::uint64_t>(s);
    } else if (key == "methods") {
        spec.methods.clear();
        for (auto item : split(value, ','))
            spec.methods.push_back(parse_baseline_kind(item));
    } else if (key == "max_outer_iters")
        spec.max_outer_iters = static_cast<int>(parse_integer(value));
    else if (key == "rel_tol")
        spec.rel_tol = parse_number(value);
    else if (key == "restarts")
        spec.restarts = static_cast<int>(parse_integer(value));
    else if (key == "threads")
        spec.threads = static_cast<int>(parse_integer(value));
    else
        throw ConfigError("unknown key '" + std::string(key) + "'");
}

} // namespace

std::vector<double> default_power_grid_dbw()
{
    std::vector<double> grid;
    for (int p = -10; p <= 20; p += 2)
        grid.push_back(p);
    return grid;
}

void ScenarioSpec::validate() const
{
    auto fail = [](const std::string& msg) { throw ConfigError(msg); };
    if (trials < 1)
        fail("trials must be >= 1");
    if (dims.bs_antennas < 1 || dims.ris_elements < 1 || dims.users < 1)
        fail("dimensions must be positive");
    if (geometry.num_users != dims.users)
        fail("geometry and dimensions disagree on the number of users");
    if (!(geometry.user_radius >= 0.0) || !std::isfinite(geometry.user_radius))
        fail("user_radius must be finite and non-negative");
    if (!(kappa >= 0.0) || !std::isfinite(kappa))
        fail("kappa must be finite and non-negative");
    if (!(noise_power > 0.0) || !std::isfinite(noise_power))
        fail("noise_power must be positive");
    if (!(ris_noise_power >= 0.0) || !std::isfinite(ris_noise_power))
        fail("ris_noise_power must be non-negative");
    if (total_power_dbw.empty())
        fail("power sweep is empty");
    for (double p : total_power_dbw)
        if (!std::isfinite(p))
            fail("sweep values must be finite positive powers");
    if (!(split_fraction > 0.0 && split_fraction < 1.0))
        fail("split_fraction must lie in (0, 1)");
    if (methods.empty())
        fail("no methods selected");
    if (max_outer_iters < 1)
        fail("max_outer_iters must be >= 1");
    if (!(rel_tol > 0.0))
        fail("rel_tol must be positive");
    if (restarts < 1)
        fail("restarts must be >= 1");
    if (threads < 0)
        fail("threads must be >= 0");
}

ScenarioSpec ScenarioSpec::builtin(int scenario)
{
    ScenarioSpec spec;
    spec.total_power_dbw = default_power_grid_dbw();
    if (scenario == 1) {
        spec.name = "scenario1";
        spec.pathloss = PathLossAssignment::scenario1();
    } else if (scenario == 2) {
        spec.name = "scenario2";
        spec.pathloss = PathLossAssignment::scenario2();
    } else {
        throw ConfigError("unknown built-in scenario " + std::to_string(scenario));
    }
    return spec;
}

ScenarioSpec parse_scenario(std::string_view text)
{
    ScenarioSpec spec;
    spec.total_power_dbw = default_power_grid_dbw();
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view l = line;
        if (const auto hash = l.find('#'); hash != std::string_view::npos)
            l = l.substr(0, hash);
        l = trim(l);
        if (l.empty())
            continue;
        const auto eq = l.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string_view key = trim(l.substr(0, eq));
        const std::string_view value = trim(l.substr(eq + 1));
        try {
            if (key == "scenario") {
                // Start from a built-in and override the rest.
                const long long n = value == "scenario1" ? 1 : value == "scenario2" ? 2
                                                                                    : parse_integer(value);
                spec = ScenarioSpec::builtin(static_cast<int>(n));
            } else {
                apply_key(spec, key, value);
            }
        } catch (const Error& e) {
            throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    spec.validate();
    return spec;
}

ScenarioSpec load_scenario(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

std::string format_scenario(const ScenarioSpec& spec)
{
    std::ostringstream out;
    auto point = [](Point2 p) { return fmt(p.x) + "," + fmt(p.y); };
    out << "name = " << spec.name << "\n"
        << "bs_position = " << point(spec.geometry.bs_position) << "\n"
        << "ris_position = " << point(spec.geometry.ris_position) << "\n"
        << "user_center = " << point(spec.geometry.user_center) << "\n"
        << "user_radius = " << fmt(spec.geometry.user_radius) << "\n"
        << "num_users = " << spec.dims.users << "\n"
        << "bs_antennas = " << spec.dims.bs_antennas << "\n"
        << "ris_elements = " << spec.dims.ris_elements << "\n"
        << "kappa = " << fmt(spec.kappa) << "\n"
        << "pathloss_bs_user = " << format_pathloss(spec.pathloss.bs_user) << "\n"
        << "pathloss_bs_ris = " << format_pathloss(spec.pathloss.bs_ris) << "\n"
        << "pathloss_ris_user = " << format_pathloss(spec.pathloss.ris_user) << "\n"
        << "noise_power = " << fmt(spec.noise_power) << " W\n"
        << "ris_noise_power = " << fmt(spec.ris_noise_power) << " W\n"
        << "total_power_dbw = ";
    for (std::size_t i = 0; i < spec.total_power_dbw.size(); ++i)
        out << (i ? ", " : "") << fmt(spec.total_power_dbw[i]) << " dBW";
    out << "\nsplit_fraction = " << fmt(spec.split_fraction) << "\n"
        << "trials = " << spec.trials << "\n"
        << "seed = " << spec.seed << "\n"
        << "methods = ";
    for (std::size_t i = 0; i < spec.methods.size(); ++i)
        out << (i ? ", " : "") << to_string(spec.methods[i]);
    out << "\nmax_outer_iters = " << spec.max_outer_iters << "\n"
        << "rel_tol = " << fmt(spec.rel_tol) << "\n"
        << "restarts = " << spec.restarts << "\n"
        << "threads = " << spec.threads << "\n";
    return out.str();
}

ChannelSet scenario_channels(const ScenarioSpec& spec, int trial)
{
    Rng rng = make_stream(spec.seed, {0x6368616eULL, static_cast<std::uint64_t>(trial)});
    const FadingSpec fading{spec.kappa, spec.seed};
    return gen_channel_set(spec.geometry, fading, spec.pathloss, spec.dims, rng);
}

std::vector<ResultRow> run_sweep(const ScenarioSpec& spec, const ProgressFn& progress)
{
    spec.validate();
    const int n_power = static_cast<int>(spec.total_power_dbw.size());
    const int n_method = static_cast<int>(spec.methods.size());
    const int n_trials = spec.trials;

    struct Outcome {
        double rate = 0.0;
        bool ok = false;
        bool converged = false;
    };
    // Indexed [trial][power][method]; each slot written by exactly one task.
    std::vector<Outcome> outcomes(static_cast<std::size_t>(n_trials) * n_power * n_method);
    auto slot = [&](int t, int p, int m) -> Outcome& {
        return outcomes[(static_cast<std::size_t>(t) * n_power + p) * n_method + m];
    };

    const LinkNoise noise{spec.noise_power};
    std::atomic<int> next{0};
    std::atomic<int> done{0};
    std::mutex progress_mutex;

    // One task per trial: the channel draw is shared by every power and method.
    auto worker = [&]() {
        for (int t = next.fetch_add(1); t < n_trials; t = next.fetch_add(1)) {
            ChannelSet channels;
            bool have_channels = true;
            try {
                channels = scenario_channels(spec, t);
            } catch (const Error&) {
                have_channels = false;
            }
            for (int p = 0; p < n_power && have_channels; ++p) {
                const double total = units::dbw_to_watt(spec.total_power_dbw[p]);
                fp::AlgoOptions options;
                options.max_outer_iters = spec.max_outer_iters;
                options.rel_tol = spec.rel_tol;
                options.restarts = spec.restarts;
                options.seed = make_stream(spec.seed, {0x6f707469ULL, static_cast<std::uint64_t>(t),
                                                       static_cast<std::uint64_t>(p)})();
                for (int m = 0; m < n_method; ++m) {
                    Outcome& out = slot(t, p, m);
                    try {
                        const fp::Solution s =
                            optimize_system(spec.methods[m], channels, total, spec.split_fraction,
                                            noise, spec.ris_noise_power, options);
                        if (std::isfinite(s.sum_rate_bps)) {
                            out.rate = s.sum_rate_bps;
                            out.ok = true;
                            out.converged = s.converged;
                        }
                    } catch (const Error&) {
                        // Recorded as a failed trial.
                    }
                }
            }
            const int d = done.fetch_add(1) + 1;
            if (progress) {
                std::lock_guard lock(progress_mutex);
                progress(d, n_trials);
            }
        }
    };

    int n_threads = spec.threads > 0 ? spec.threads
                                     : static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::clamp(n_threads, 1, n_trials);
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int i = 0; i < n_threads; ++i)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }

    // Aggregation runs in trial order, so the result does not depend on scheduling.
    std::vector<ResultRow> rows;
    for (int p = 0; p < n_power; ++p) {
        for (int m = 0; m < n_method; ++m) {
            ResultRow row;
            row.method = spec.methods[m];
            row.total_power_dbw = spec.total_power_dbw[p];
            double sum = 0.0;
            int ok = 0;
            int converged = 0;
            for (int t = 0; t < n_trials; ++t) {
                const Outcome& o = slot(t, p, m);
                if (!o.ok)
                    continue;
                sum += o.rate;
                ++ok;
                converged += o.converged ? 1 : 0;
            }
            row.trials = ok;
            row.converged_fraction = static_cast<double>(converged) / n_trials;
            if (ok > 0) {
                row.mean_sum_rate_bps = sum / ok;
                if (ok > 1) {
                    double ss = 0.0;
                    for (int t = 0; t < n_trials; ++t) {
                        const Outcome& o = slot(t, p, m);
                        if (o.ok)
                            ss += (o.rate - row.mean_sum_rate_bps) * (o.rate - row.mean_sum_rate_bps);
                    }
                    row.stderr_bps = std::sqrt(ss / (ok - 1) / ok);
                }
            }
            rows.push_back(row);
        }
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<ResultRow>& rows)
{
    out << kSweepCsvHeader << "\n";
    for (const auto& r : rows)
        out << to_string(r.method) << ',' << fmt_csv(r.total_power_dbw) << ','
            << fmt_csv(r.mean_sum_rate_bps) << ',' << fmt_csv(r.stderr_bps) << ',' << r.trials
            << ',' << fmt_csv(r.converged_fraction) << "\n";
}

std::string sweep_csv(const std::vector<ResultRow>& rows)
{
    std::ostringstream out;
    write_sweep_csv(out, rows);
    return out.str();
}

std::optional<double> relative_gain(const std::vector<ResultRow>& rows, BaselineKind method,
                                    double total_power_dbw)
{
    const ResultRow* base = nullptr;
    const ResultRow* target = nullptr;
    for (const auto& r : rows) {
        if (std::abs(r.total_power_dbw - total_power_dbw) > 1e-9 || r.trials == 0)
            continue;
        if (r.method == BaselineKind::NoRis)
            base = &r;
        if (r.method == method)
            target = &r;
    }
    if (!base || !target || !(base->mean_sum_rate_bps > 0.0))
        return std::nullopt;
    return (target->mean_sum_rate_bps - base->mean_sum_rate_bps) / base->mean_sum_rate_bps;
}

AsymptoticsStudy AsymptoticsStudy::reference()
{
    AsymptoticsStudy s;
    s.base.var_f = units::db_to_linear(-70.0);
    s.base.var_g = units::db_to_linear(-70.0);
    s.base.sigma2 = units::dbm_to_watt(-70.0);
    s.base.sigma_v2 = units::dbm_to_watt(-70.0);
    s.total_power = 2.0;
    s.split_fraction = 0.5;
    return s;
}

std::vector<AsymptoticRow> run_asymptotics(const AsymptoticsStudy& study)
{
    using namespace asymptotics;
    require(study.trials >= 1, "trials must be >= 1");
    require(!study.n_grid.empty(), "element grid is empty");
    std::vector<AsymptoticRow> rows;
    ComparisonConfigs cfgs = equal_total_power(study.base, study.total_power, study.split_fraction);
    for (int n : study.n_grid) {
        require(n >= 1, "element counts must be positive");
        cfgs.passive.n_elements = n;
        cfgs.active.n_elements = n;
        cfgs.passive.validate();
        cfgs.active.validate();
        Rng rng_p = make_stream(study.seed, {static_cast<std::uint64_t>(n), 0});
        Rng rng_a = make_stream(study.seed, {static_cast<std::uint64_t>(n), 1});
        rows.push_back({"passive_analytic", n, passive_asymptotic_snr(cfgs.passive)});
        rows.push_back({"active_analytic", n, active_asymptotic_snr(cfgs.active)});
        rows.push_back({"passive_monte_carlo", n,
                        monte_carlo_su_siso_snr(RisKind::Passive, cfgs.passive, study.trials, rng_p)});
        rows.push_back({"active_monte_carlo", n,
                        monte_carlo_su_siso_snr(RisKind::Active, cfgs.active, study.trials, rng_a)});
        rows.push_back({"active_limit_bs", n, active_snr_limit_bs(cfgs.active)});
        if (cfgs.active.sigma_v2 > 0.0)
            rows.push_back({"active_limit_ris", n, active_snr_limit_ris(cfgs.active)});
    }
    rows.push_back({"breakeven_elements", std::nullopt,
                    breakeven_elements(cfgs.active, cfgs.passive.bs_power)});
    return rows;
}

void write_asymptotics_csv(std::ostream& out, const std::vector<AsymptoticRow>& rows)
{
    out << kAsymptoticsCsvHeader << "\n";
    for (const auto& r : rows) {
        out << r.quantity << ',';
        if (r.n_elements)
            out << *r.n_elements;
        out << ',' << fmt_csv(r.value) << ',' << fmt_csv(units::linear_to_db(r.value)) << "\n";
    }
}

} // namespace activeris
