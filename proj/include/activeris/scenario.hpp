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
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "activeris/asymptotics.hpp"
#include "activeris/baselines.hpp"
#include "activeris/channel.hpp"
#include "activeris/fp_optimizer.hpp"

namespace activeris {

/// Everything needed to reproduce one power sweep.
///
/// Text form: one `key = value` per line, `#` starts a comment. Powers accept
/// unit suffixes (W, mW, dBW, dBm), path-loss models are `strong`, `weak` or
/// `<intercept_db>,<slope_db_per_decade>`, points are `x,y` in meters. See
/// README.md for the key list.
struct ScenarioSpec {
    std::string name = "custom";
    Geometry geometry;
    PathLossAssignment pathloss;
    Dimensions dims;
    double kappa = 1.0;
    double noise_power = 1e-10;     // sigma^2 [W]
    double ris_noise_power = 1e-10; // sigma_v^2 [W]
    std::vector<double> total_power_dbw;
    double split_fraction = 0.5;
    int trials = 100;
    std::uint64_t seed = 1;
    std::vector<BaselineKind> methods{BaselineKind::NoRis, BaselineKind::PassiveRis,
                                      BaselineKind::ActiveRis};
    int max_outer_iters = 500;
    double rel_tol = 1e-4;
    int restarts = 1;
    // Worker threads for the trial loop; 0 picks the hardware concurrency.
    int threads = 0;

    void validate() const;

    // The two reference scenarios: 1 = weak direct link, 2 = strong direct link.
    static ScenarioSpec builtin(int scenario);
};

// Default sweep grid: -10 dBW to 20 dBW in 2 dB steps.
std::vector<double> default_power_grid_dbw();

ScenarioSpec parse_scenario(std::string_view text);
ScenarioSpec load_scenario(const std::string& path);
std::string format_scenario(const ScenarioSpec& spec);

struct ResultRow {
    BaselineKind method = BaselineKind::NoRis;
    double total_power_dbw = 0.0;
    double mean_sum_rate_bps = 0.0;
    double stderr_bps = 0.0;
    int trials = 0; // trials that produced a solution
    double converged_fraction = 0.0;
};

// Channel realization of trial `trial`; shared by every method and power.
ChannelSet scenario_channels(const ScenarioSpec& spec, int trial);

using ProgressFn = std::function<void(int done, int total)>;

// Rows are ordered by power, then by the order of spec.methods.
std::vector<ResultRow> run_sweep(const ScenarioSpec& spec, const ProgressFn& progress = {});

inline constexpr std::string_view kSweepCsvHeader =
    "method,total_power_dbw,mean_sum_rate_bps,stderr,trials,converged_fraction";

void write_sweep_csv(std::ostream& out, const std::vector<ResultRow>& rows);
std::string sweep_csv(const std::vector<ResultRow>& rows);

// Relative gain (method - no_ris) / no_ris at one power, if both rows exist.
std::optional<double> relative_gain(const std::vector<ResultRow>& rows, BaselineKind method,
                                    double total_power_dbw);

struct AsymptoticsStudy {
    asymptotics::AsymptoticConfig base; // variances and noise powers
    double total_power = 2.0;           // W, shared by both systems
    double split_fraction = 0.5;
    std::vector<int> n_grid{64, 256, 1024, 4096};
    int trials = 1000;
    std::uint64_t seed = 1;

    // P_BS-P = 2 W, P_BS-A = P_A = 1 W, sigma^2 = sigma_v^2 = -70 dBm,
    // var_f = var_g = -70 dB.
    static AsymptoticsStudy reference();
};

struct AsymptoticRow {
    std::string quantity;
    std::optional<int> n_elements;
    double value = 0.0; // linear
};

// For each N: analytic and Monte Carlo SNR of both systems plus the two
// active-RIS bounds. A final row holds the break-even element count.
std::vector<AsymptoticRow> run_asymptotics(const AsymptoticsStudy& study);

inline constexpr std::string_view kAsymptoticsCsvHeader = "quantity,n_elements,value_linear,value_db";

void write_asymptotics_csv(std::ostream& out, const std::vector<AsymptoticRow>& rows);

} // namespace activeris
