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

#include "activeris/asymptotics.hpp"

#include <cmath>

namespace activeris::asymptotics {

void AsymptoticConfig::validate() const
{
    require(n_elements >= 1, "N must be at least 1");
    require(bs_power > 0.0 && ris_power > 0.0, "powers must be positive");
    require(var_f > 0.0 && var_g > 0.0, "channel variances must be positive");
    require(sigma2 > 0.0, "user noise power must be positive");
    require(sigma_v2 >= 0.0, "RIS noise power must be non-negative");
}

double passive_asymptotic_snr(const AsymptoticConfig& cfg)
{
    cfg.validate();
    const double n = cfg.n_elements;
    return n * n * cfg.bs_power * kPi * kPi * cfg.var_f * cfg.var_g / (16.0 * cfg.sigma2);
}

double active_asymptotic_snr(const AsymptoticConfig& cfg)
{
    cfg.validate();
    const double n = cfg.n_elements;
    const double denom = cfg.ris_power * cfg.sigma_v2 * cfg.var_f +
                         cfg.bs_power * cfg.sigma2 * cfg.var_g + cfg.sigma2 * cfg.sigma_v2;
    return n * cfg.bs_power * cfg.ris_power * kPi * kPi * cfg.var_f * cfg.var_g / (16.0 * denom);
}

double active_snr_limit_bs(const AsymptoticConfig& cfg)
{
    cfg.validate();
    return cfg.n_elements * cfg.ris_power * kPi * kPi * cfg.var_f / (16.0 * cfg.sigma2);
}

double active_snr_limit_ris(const AsymptoticConfig& cfg)
{
    cfg.validate();
    require(cfg.sigma_v2 > 0.0, "RIS noise power must be positive for this bound");
    return cfg.n_elements * cfg.bs_power * kPi * kPi * cfg.var_g / (16.0 * cfg.sigma_v2);
}

double breakeven_elements(const AsymptoticConfig& cfg_active, double bs_power_passive)
{
    cfg_active.validate();
    require(bs_power_passive > 0.0, "passive BS power must be positive");
    const auto& c = cfg_active;
    const double denom = c.ris_power * c.sigma_v2 * c.var_f + c.bs_power * c.sigma2 * c.var_g +
                         c.sigma2 * c.sigma_v2;
    return (c.bs_power / bs_power_passive) * c.ris_power * c.sigma2 / denom;
}

namespace {

struct Hops {
    double aligned_amplitude = 0.0; // sum_n |f_n| |g_n|
    double g_power = 0.0;           // ||g||^2
    double f_power = 0.0;           // ||f||^2
};

// Draws f and g and returns the quantities the phase-aligned SNR depends on.
// With theta_n = -(arg f_n + arg g_n) every reflected term adds in phase.
Hops draw_aligned(const AsymptoticConfig& cfg, Rng& rng)
{
    const CMatrix f = gen_rayleigh(cfg.n_elements, 1, cfg.var_f, rng);
    const CMatrix g = gen_rayleigh(cfg.n_elements, 1, cfg.var_g, rng);
    Hops h;
    cdouble combined(0.0, 0.0);
    for (int n = 0; n < cfg.n_elements; ++n) {
        const cdouble fn = f(n, 0);
        const cdouble gn = g(n, 0);
        const double theta = -(std::arg(fn) + std::arg(gn));
        combined += fn * std::polar(1.0, theta) * gn;
    }
    h.aligned_amplitude = std::abs(combined);
    h.g_power = g.squaredNorm();
    h.f_power = f.squaredNorm();
    return h;
}

} // namespace

double monte_carlo_su_siso_snr(RisKind kind, const AsymptoticConfig& cfg, int trials, Rng& rng)
{
    cfg.validate();
    require(trials >= 1, "at least one trial is required");
    double total = 0.0;
    for (int t = 0; t < trials; ++t) {
        const Hops h = draw_aligned(cfg, rng);
        const double coherent = h.aligned_amplitude * h.aligned_amplitude;
        if (kind == RisKind::Passive) {
            total += cfg.bs_power * coherent / cfg.sigma2;
        } else {
            const double p2 = cfg.ris_power /
                              (cfg.bs_power * h.g_power + cfg.n_elements * cfg.sigma_v2);
            total += cfg.bs_power * p2 * coherent / (p2 * cfg.sigma_v2 * h.f_power + cfg.sigma2);
        }
    }
    return total / trials;
}

double monte_carlo_su_siso_snr_fixed_amplitude(const AsymptoticConfig& cfg, double amplitude,
                                               int trials, Rng& rng)
{
    cfg.validate();
    require(trials >= 1, "at least one trial is required");
    require(amplitude >= 0.0, "amplitude must be non-negative");
    const double p2 = amplitude * amplitude;
    double total = 0.0;
    for (int t = 0; t < trials; ++t) {
        const Hops h = draw_aligned(cfg, rng);
        total += cfg.bs_power * p2 * h.aligned_amplitude * h.aligned_amplitude /
                 (p2 * cfg.sigma_v2 * h.f_power + cfg.sigma2);
    }
    return total / trials;
}

ComparisonConfigs equal_total_power(const AsymptoticConfig& base, double total_power, double split)
{
    require(total_power > 0.0, "total power must be positive");
    require(split > 0.0 && split < 1.0, "split fraction must lie in (0, 1)");
    ComparisonConfigs out{base, base};
    out.passive.bs_power = total_power;
    out.active.bs_power = split * total_power;
    out.active.ris_power = (1.0 - split) * total_power;
    return out;
}

} // namespace activeris::asymptotics
