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

#include "activeris/signal_model.hpp"

#include <cmath>

namespace activeris {

CVector RisSetting::reflection() const
{
    require(amplification.size() == phases.size(), "amplification and phase lengths differ");
    CVector psi(amplification.size());
    for (Eigen::Index n = 0; n < psi.size(); ++n)
        psi(n) = std::polar(amplification(n), phases(n));
    return psi;
}

void RisSetting::validate() const
{
    require(amplification.size() == phases.size(), "amplification and phase lengths differ");
    require((amplification.array() >= 0.0).all(), "amplification factors must be non-negative");
    require(dynamic_noise_power >= 0.0 && static_noise_power >= 0.0,
            "RIS noise powers must be non-negative");
    require(power_budget > 0.0, "RIS power budget must be positive");
}

RisSetting RisSetting::from_reflection(const CVector& psi, double dynamic_noise_power,
                                       double power_budget)
{
    RisSetting s;
    s.amplification = psi.cwiseAbs();
    s.phases.resize(psi.size());
    for (Eigen::Index n = 0; n < psi.size(); ++n)
        s.phases(n) = std::arg(psi(n));
    s.dynamic_noise_power = dynamic_noise_power;
    s.power_budget = power_budget;
    return s;
}

RisSetting RisSetting::passive(int n)
{
    RisSetting s;
    s.amplification = RVector::Ones(n);
    s.phases = RVector::Zero(n);
    return s;
}

RisSetting RisSetting::off(int n)
{
    RisSetting s;
    s.amplification = RVector::Zero(n);
    s.phases = RVector::Zero(n);
    return s;
}

CVector passive_reflect(const CVector& x, const RVector& phases)
{
    require(x.size() == phases.size(), "passive_reflect: dimension mismatch");
    CVector y(x.size());
    for (Eigen::Index n = 0; n < x.size(); ++n)
        y(n) = std::polar(1.0, phases(n)) * x(n);
    return y;
}

CVector active_reflect(const CVector& x, const RisSetting& setting, const CVector& v,
                       const CVector& static_noise)
{
    const CVector psi = setting.reflection();
    require(x.size() == psi.size() && v.size() == psi.size() && static_noise.size() == psi.size(),
            "active_reflect: dimension mismatch");
    return psi.cwiseProduct(x + v) + static_noise;
}

CVector equivalent_channel(const CVector& h_k, const CVector& f_k, const RisSetting& setting,
                           const CMatrix& bs_ris)
{
    const CVector psi = setting.reflection();
    require(f_k.size() == psi.size() && bs_ris.rows() == psi.size() &&
                bs_ris.cols() == h_k.size(),
            "equivalent_channel: dimension mismatch");
    // (f^H Psi G)^H = G^H conj(psi) .* f
    return h_k + bs_ris.adjoint() * psi.conjugate().cwiseProduct(f_k);
}

CMatrix equivalent_channels(const ChannelSet& channels, const CVector& psi)
{
    const int K = channels.users();
    require(psi.size() == channels.ris_elements(), "reflection vector length must equal N");
    CMatrix f(channels.ris_elements(), K);
    CMatrix h(channels.bs_antennas(), K);
    for (int k = 0; k < K; ++k) {
        f.col(k) = channels.ris_user[k];
        h.col(k) = channels.bs_user[k];
    }
    return h + channels.bs_ris.adjoint() * (psi.conjugate().asDiagonal() * f);
}

RVector ris_noise_at_users(const ChannelSet& channels, const CVector& psi, double sigma_v2)
{
    const int K = channels.users();
    RVector out(K);
    const RVector amp2 = psi.cwiseAbs2();
    for (int k = 0; k < K; ++k)
        out(k) = sigma_v2 * channels.ris_user[k].cwiseAbs2().dot(amp2);
    return out;
}

RVector sinr_all(const CMatrix& w, const CVector& psi, double sigma_v2,
                 const ChannelSet& channels, double sigma2)
{
    const int K = channels.users();
    require(w.cols() == K && w.rows() == channels.bs_antennas(), "precoder shape must be M x K");
    const CMatrix hbar = equivalent_channels(channels, psi);
    // gains(k, j) = |h_bar_k^H w_j|^2
    const Eigen::MatrixXd gains = (hbar.adjoint() * w).cwiseAbs2();
    const RVector ris_noise = ris_noise_at_users(channels, psi, sigma_v2);
    RVector out(K);
    for (int k = 0; k < K; ++k) {
        const double signal = gains(k, k);
        const double interference = gains.row(k).sum() - signal;
        out(k) = signal / (interference + ris_noise(k) + sigma2);
    }
    return out;
}

RVector sinr_all(const Precoder& precoder, const RisSetting& setting,
                 const ChannelSet& channels, const LinkNoise& noise)
{
    return sinr_all(precoder.vectors, setting.reflection(), setting.dynamic_noise_power, channels,
                    noise.user_noise_power);
}

double sinr(int k, const Precoder& precoder, const RisSetting& setting,
            const ChannelSet& channels, const LinkNoise& noise)
{
    require(k >= 0 && k < channels.users(), "user index out of range");
    return sinr_all(precoder, setting, channels, noise)(k);
}

double sum_rate(const CMatrix& w, const CVector& psi, double sigma_v2,
                const ChannelSet& channels, double sigma2)
{
    const RVector g = sinr_all(w, psi, sigma_v2, channels, sigma2);
    double total = 0.0;
    for (Eigen::Index k = 0; k < g.size(); ++k)
        total += std::log2(1.0 + g(k));
    return total;
}

double sum_rate(const Precoder& precoder, const RisSetting& setting,
                const ChannelSet& channels, const LinkNoise& noise)
{
    return sum_rate(precoder.vectors, setting.reflection(), setting.dynamic_noise_power, channels,
                    noise.user_noise_power);
}

double ris_output_power(const CMatrix& w, const CVector& psi, double sigma_v2,
                        const CMatrix& bs_ris)
{
    require(bs_ris.rows() == psi.size() && bs_ris.cols() == w.rows(),
            "ris_output_power: dimension mismatch");
    const Eigen::MatrixXd incident = (bs_ris * w).cwiseAbs2(); // N x K
    const RVector amp2 = psi.cwiseAbs2();
    return amp2.dot(incident.rowwise().sum()) + amp2.sum() * sigma_v2;
}

double ris_output_power(const Precoder& precoder, const RisSetting& setting,
                        const CMatrix& bs_ris)
{
    return ris_output_power(precoder.vectors, setting.reflection(), setting.dynamic_noise_power,
                            bs_ris);
}

ElementPower element_output_power(double incident_power, double gain, double sigma_v2,
                                  double sigma_s2)
{
    require(incident_power >= 0.0 && gain >= 0.0 && sigma_v2 >= 0.0 && sigma_s2 >= 0.0,
            "element powers and gain must be non-negative");
    return {gain * incident_power, gain * sigma_v2 + sigma_s2};
}

} // namespace activeris
