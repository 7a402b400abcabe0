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

#include <cmath>
#include <complex>

#include "activeris/channel.hpp"
#include "activeris/types.hpp"

namespace activeris::testing {

// Unit-variance i.i.d. Rayleigh channels, no geometry.
inline ChannelSet rayleigh_channels(int M, int N, int K, Rng& rng, double variance = 1.0)
{
    ChannelSet ch;
    ch.bs_ris = gen_rayleigh(N, M, variance, rng);
    ch.bs_ris_variance = variance;
    for (int k = 0; k < K; ++k) {
        ch.bs_user.push_back(gen_rayleigh(M, 1, variance, rng).col(0));
        ch.ris_user.push_back(gen_rayleigh(N, 1, variance, rng).col(0));
        ch.bs_user_variance.push_back(variance);
        ch.ris_user_variance.push_back(variance);
        ch.user_positions.push_back({});
    }
    return ch;
}

inline CVector random_phases_vector(int N, double amplitude, Rng& rng)
{
    std::uniform_real_distribution<double> u(-kPi, kPi);
    CVector v(N);
    for (int n = 0; n < N; ++n)
        v(n) = std::polar(amplitude, u(rng));
    return v;
}

inline double rel_err(double a, double b)
{
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

inline double rel_err(const CVector& a, const CVector& b)
{
    return (a - b).norm() / std::max({a.norm(), b.norm(), 1e-300});
}

} // namespace activeris::testing
