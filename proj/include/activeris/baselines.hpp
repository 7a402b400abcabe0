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

#include <string>
#include <string_view>

#include "activeris/fp_optimizer.hpp"

namespace activeris {

enum class BaselineKind { NoRis, PassiveRis, ActiveRis };

std::string_view to_string(BaselineKind kind);
// Accepts "no_ris", "passive_ris", "active_ris" (and "none"/"passive"/"active").
BaselineKind parse_baseline_kind(std::string_view text);

struct BudgetSplit {
    double bs = 0.0;
    double ris = 0.0;
};

// Active: (split * total, (1 - split) * total). Otherwise the BS gets it all.
BudgetSplit split_power_budget(double total, BaselineKind kind, double split_fraction);

// The optimizers below seed their random initialization from options.seed.

// Precoding only, RIS switched off.
fp::Solution optimize_no_ris(const ChannelSet& channels, double bs_budget, const LinkNoise& noise,
                             const fp::AlgoOptions& options);

// Unit-modulus passive RIS without amplifier noise or reflect budget.
fp::Solution optimize_passive(const ChannelSet& channels, double bs_budget,
                              const LinkNoise& noise, const fp::AlgoOptions& options);

fp::Solution optimize_active(const ChannelSet& channels, double bs_budget, double ris_budget,
                             const LinkNoise& noise, double sigma_v2,
                             const fp::AlgoOptions& options);

// Dispatches on `kind` after splitting `total_power`.
fp::Solution optimize_system(BaselineKind kind, const ChannelSet& channels, double total_power,
                             double split_fraction, const LinkNoise& noise, double sigma_v2,
                             const fp::AlgoOptions& options);

} // namespace activeris
