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

#include "activeris/channel.hpp"

namespace activeris::asymptotics {

// Single-user SISO link through an N-element RIS with the direct path
// ignored and Rayleigh hops f ~ CN(0, var_f I), g ~ CN(0, var_g I).
struct AsymptoticConfig {
    int n_elements = 256;
    double bs_power = 1.0;  // W
    double ris_power = 1.0; // W, active only
    double var_f = 1e-7;    // RIS-user per-entry variance (linear)
    double var_g = 1e-7;    // BS-RIS per-entry variance (linear)
    double sigma2 = 1e-10;  // user noise [W]
    double sigma_v2 = 1e-10; // active-RIS noise [W]

    void validate() const;
};

enum class RisKind { Passive, Active };

// N^2 P_BS pi^2 var_f var_g / (16 sigma^2)
double passive_asymptotic_snr(const AsymptoticConfig& cfg);

// N P_BS P_A pi^2 var_f var_g / (16 (P_A sigma_v^2 var_f + P_BS sigma^2 var_g + sigma^2 sigma_v^2))
double active_asymptotic_snr(const AsymptoticConfig& cfg);

// Bound as P_BS -> infinity: N P_A pi^2 var_f / (16 sigma^2).
double active_snr_limit_bs(const AsymptoticConfig& cfg);
// Bound as P_A -> infinity: N P_BS pi^2 var_g / (16 sigma_v^2).
double active_snr_limit_ris(const AsymptoticConfig& cfg);

// Smallest N at which a passive RIS driven by `bs_power_passive` matches the
// active system described by `cfg_active` (cfg_active.bs_power is P_BS-A).
double breakeven_elements(const AsymptoticConfig& cfg_active, double bs_power_passive);

// Mean linear SNR over `trials` phase-aligned realizations. The active
// surface uses one common amplitude p per realization, chosen so that
// P_BS p^2 ||g||^2 + p^2 N sigma_v^2 = P_A.
double monte_carlo_su_siso_snr(RisKind kind, const AsymptoticConfig& cfg, int trials, Rng& rng);

// Same, but with a fixed common amplitude `amplitude` for the active surface.
double monte_carlo_su_siso_snr_fixed_amplitude(const AsymptoticConfig& cfg, double amplitude,
                                               int trials, Rng& rng);

struct ComparisonConfigs {
    AsymptoticConfig passive;
    AsymptoticConfig active;
};

// Splits a total power budget between BS and RIS for the active system
// (fraction `split` to the BS) and gives it all to the BS for the passive one.
ComparisonConfigs equal_total_power(const AsymptoticConfig& base, double total_power,
                                    double split = 0.5);

} // namespace activeris::asymptotics
