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

#include "activeris/channel.hpp"
#include "activeris/types.hpp"

namespace activeris {

/// Configuration of an N-element RIS.
///
/// Element n reflects with amplitude p_n (p_n > 1 means amplification, only
/// possible for an active RIS) and phase theta_n. The combined reflection
/// coefficient psi_n = p_n * exp(j*theta_n) is the diagonal of Psi = P*Theta.
struct RisSetting {
    RVector amplification;
    RVector phases;
    double dynamic_noise_power = 0.0; // sigma_v^2 [W]
    double static_noise_power = 0.0;  // sigma_s^2 [W]
    double power_budget = 1.0;        // P_A^max [W]

    int size() const { return static_cast<int>(amplification.size()); }
    CVector reflection() const;
    void validate() const;

    // Setting with psi as reflection coefficients.
    static RisSetting from_reflection(const CVector& psi, double dynamic_noise_power,
                                      double power_budget);
    // Unit-modulus, zero-phase passive surface.
    static RisSetting passive(int n);
    // All amplitudes zero: the surface is switched off.
    static RisSetting off(int n);
};

/// BS precoding vectors w_k stored as the columns of an M x K matrix.
struct Precoder {
    CMatrix vectors;
    double budget = 1.0; // P_BS^max [W]

    int antennas() const { return static_cast<int>(vectors.rows()); }
    int users() const { return static_cast<int>(vectors.cols()); }
    double transmit_power() const { return vectors.squaredNorm(); }
};

struct LinkNoise {
    double user_noise_power = 0.0; // sigma^2 [W]
};

struct ElementPower {
    double desired = 0.0;
    double noise = 0.0;
};

// y = Theta x.
CVector passive_reflect(const CVector& x, const RVector& phases);

// y = P Theta x + P Theta v + n_s.
CVector active_reflect(const CVector& x, const RisSetting& setting, const CVector& v,
                       const CVector& static_noise);

// h_bar_k with h_bar_k^H = h_k^H + f_k^H Psi G.
CVector equivalent_channel(const CVector& h_k, const CVector& f_k, const RisSetting& setting,
                           const CMatrix& bs_ris);

// M x K matrix whose column k is h_bar_k for reflection vector psi.
CMatrix equivalent_channels(const ChannelSet& channels, const CVector& psi);

// ||f_k^H Psi||^2 sigma_v^2 for every user.
RVector ris_noise_at_users(const ChannelSet& channels, const CVector& psi, double sigma_v2);

double sinr(int k, const Precoder& precoder, const RisSetting& setting,
            const ChannelSet& channels, const LinkNoise& noise);

// SINR of every user. `psi` is the diagonal of Psi (may be all zero).
RVector sinr_all(const CMatrix& w, const CVector& psi, double sigma_v2,
                 const ChannelSet& channels, double sigma2);

RVector sinr_all(const Precoder& precoder, const RisSetting& setting,
                 const ChannelSet& channels, const LinkNoise& noise);

// Sum_k log2(1 + gamma_k) in bps/Hz.
double sum_rate(const Precoder& precoder, const RisSetting& setting,
                const ChannelSet& channels, const LinkNoise& noise);
double sum_rate(const CMatrix& w, const CVector& psi, double sigma_v2,
                const ChannelSet& channels, double sigma2);

// Sum_k ||Psi G w_k||^2 + ||Psi||_F^2 sigma_v^2: the power the RIS radiates.
double ris_output_power(const Precoder& precoder, const RisSetting& setting,
                        const CMatrix& bs_ris);
double ris_output_power(const CMatrix& w, const CVector& psi, double sigma_v2,
                        const CMatrix& bs_ris);

// Power-domain model of one active element: P_y = G P_x + G sigma_v^2 + sigma_s^2.
ElementPower element_output_power(double incident_power, double gain, double sigma_v2,
                                  double sigma_s2);

} // namespace activeris
