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

#include "activeris/baselines.hpp"

namespace activeris {

std::string_view to_string(BaselineKind kind)
{
    switch (kind) {
    case BaselineKind::NoRis:
        return "no_ris";
    case BaselineKind::PassiveRis:
        return "passive_ris";
    case BaselineKind::ActiveRis:
        return "active_ris";
    }
    return "unknown";
}

BaselineKind parse_baseline_kind(std::string_view text)
{
    if (text == "no_ris" || text == "none")
        return BaselineKind::NoRis;
    if (text == "passive_ris" || text == "passive")
        return BaselineKind::PassiveRis;
    if (text == "active_ris" || text == "active")
        return BaselineKind::ActiveRis;
    throw ConfigError("unknown method '" + std::string(text) + "'");
}

BudgetSplit split_power_budget(double total, BaselineKind kind, double split_fraction)
{
    require(total > 0.0, "total power must be positive");
    if (kind != BaselineKind::ActiveRis)
        return {total, 0.0};
    require(split_fraction > 0.0 && split_fraction < 1.0, "split fraction must lie in (0, 1)");
    return {split_fraction * total, (1.0 - split_fraction) * total};
}

namespace {

fp::Solution run_kind(fp::RisMode mode, const ChannelSet& channels, double bs_budget,
                      double ris_budget, const LinkNoise& noise, double sigma_v2,
                      const fp::AlgoOptions& options)
{
    // The same stream for every mode, so all systems start from the same precoder.
    Rng rng = make_stream(options.seed);
    return fp::run(channels, bs_budget, ris_budget, noise, sigma_v2, mode, options, rng);
}

} // namespace

fp::Solution optimize_no_ris(const ChannelSet& channels, double bs_budget, const LinkNoise& noise,
                             const fp::AlgoOptions& options)
{
    return run_kind(fp::RisMode::None, channels, bs_budget, 0.0, noise, 0.0, options);
}

fp::Solution optimize_passive(const ChannelSet& channels, double bs_budget,
                              const LinkNoise& noise, const fp::AlgoOptions& options)
{
    return run_kind(fp::RisMode::Passive, channels, bs_budget, 0.0, noise, 0.0, options);
}

fp::Solution optimize_active(const ChannelSet& channels, double bs_budget, double ris_budget,
                             const LinkNoise& noise, double sigma_v2,
                             const fp::AlgoOptions& options)
{
    return run_kind(fp::RisMode::Active, channels, bs_budget, ris_budget, noise, sigma_v2, options);
}

fp::Solution optimize_system(BaselineKind kind, const ChannelSet& channels, double total_power,
                             double split_fraction, const LinkNoise& noise, double sigma_v2,
                             const fp::AlgoOptions& options)
{
    const BudgetSplit budget = split_power_budget(total_power, kind, split_fraction);
    switch (kind) {
    case BaselineKind::NoRis:
        return optimize_no_ris(channels, budget.bs, noise, options);
    case BaselineKind::PassiveRis:
        return optimize_passive(channels, budget.bs, noise, options);
    case BaselineKind::ActiveRis:
        break;
    }
    return optimize_active(channels, budget.bs, budget.ris, noise, sigma_v2, options);
}

} // namespace activeris
