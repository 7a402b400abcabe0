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

#include "activeris/channel.hpp"

#include <cmath>
#include <vector>

namespace activeris {

Rng make_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> keys)
{
    std::vector<std::uint32_t> words;
    words.reserve(2 * (keys.size() + 1));
    auto push = [&](std::uint64_t v) {
        words.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
        words.push_back(static_cast<std::uint32_t>(v >> 32));
    };
    push(seed);
    for (auto k : keys)
        push(k);
    std::seed_seq seq(words.begin(), words.end());
    return Rng(seq);
}

double distance(Point2 a, Point2 b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

double azimuth(Point2 from, Point2 to)
{
    return std::atan2(to.y - from.y, to.x - from.x);
}

PathLossAssignment PathLossAssignment::scenario1()
{
    return {PathLossModel::weak(), PathLossModel::strong(), PathLossModel::strong()};
}

PathLossAssignment PathLossAssignment::scenario2()
{
    return {PathLossModel::strong(), PathLossModel::strong(), PathLossModel::strong()};
}

double path_loss_db(const PathLossModel& model, double distance_m)
{
    if (!(distance_m > 0.0) || !std::isfinite(distance_m))
        throw DomainError("path loss distance must be positive");
    return model.intercept_db + model.slope_db_per_decade * std::log10(distance_m);
}

double path_loss_gain(const PathLossModel& model, double distance_m)
{
    return std::pow(10.0, -path_loss_db(model, distance_m) / 10.0);
}

CMatrix gen_rayleigh(int rows, int cols, double variance, Rng& rng)
{
    require(rows >= 0 && cols >= 0, "matrix dimensions must be non-negative");
    if (!(variance >= 0.0) || !std::isfinite(variance))
        throw DomainError("variance must be non-negative");
    // Real and imaginary parts each carry half the power.
    std::normal_distribution<double> normal(0.0, std::sqrt(variance / 2.0));
    CMatrix out(rows, cols);
    for (Eigen::Index j = 0; j < out.cols(); ++j)
        for (Eigen::Index i = 0; i < out.rows(); ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            out(i, j) = cdouble(re, im);
        }
    return out;
}

CVector steering_vector(int num_elements, double angle_rad)
{
    require(num_elements >= 1, "steering vector needs at least one element");
    CVector a(num_elements);
    const double step = kPi * std::sin(angle_rad);
    for (int n = 0; n < num_elements; ++n)
        a(n) = std::polar(1.0, step * n);
    return a;
}

CMatrix gen_ricean(int rows, int cols, double variance, double kappa,
                   const CMatrix& los_component, Rng& rng)
{
    if (!(kappa >= 0.0) || !std::isfinite(kappa))
        throw DomainError("Ricean factor must be finite and non-negative");
    if (los_component.rows() != rows || los_component.cols() != cols)
        throw DomainError("LoS component dimension mismatch");
    if (!(variance >= 0.0) || !std::isfinite(variance))
        throw DomainError("variance must be non-negative");
    const CMatrix nlos = gen_rayleigh(rows, cols, 1.0, rng);
    const double los_weight = std::sqrt(kappa / (1.0 + kappa));
    const double nlos_weight = std::sqrt(1.0 / (1.0 + kappa));
    return std::sqrt(variance) * (los_weight * los_component + nlos_weight * nlos);
}

void ChannelSet::validate() const
{
    const Eigen::Index n = bs_ris.rows();
    const Eigen::Index m = bs_ris.cols();
    require(n > 0 && m > 0, "channel set must have at least one antenna and one element");
    require(bs_user.size() == ris_user.size(), "per-user channel lists differ in length");
    require(!bs_user.empty(), "channel set must have at least one user");
    require(bs_ris.allFinite(), "BS-RIS channel has non-finite entries");
    for (std::size_t k = 0; k < bs_user.size(); ++k) {
        require(bs_user[k].size() == m, "BS-user channel length must equal M");
        require(ris_user[k].size() == n, "RIS-user channel length must equal N");
        require(bs_user[k].allFinite() && ris_user[k].allFinite(),
                "user channel has non-finite entries");
    }
}

ChannelSet gen_channel_set(const Geometry& geometry, const FadingSpec& fading,
                           const PathLossAssignment& pathloss, const Dimensions& dims,
                           Rng& rng)
{
    require(dims.bs_antennas > 0 && dims.ris_elements > 0 && dims.users > 0,
            "dimensions must be positive");
    require(geometry.user_radius >= 0.0, "user radius must be non-negative");
    const int M = dims.bs_antennas;
    const int N = dims.ris_elements;
    const int K = dims.users;

    ChannelSet out;
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    out.user_positions.reserve(K);
    for (int k = 0; k < K; ++k) {
        const double r = geometry.user_radius * std::sqrt(uniform(rng));
        const double phi = 2.0 * kPi * uniform(rng);
        out.user_positions.push_back(
            {geometry.user_center.x + r * std::cos(phi), geometry.user_center.y + r * std::sin(phi)});
    }

    const Point2 bs = geometry.bs_position;
    const Point2 ris = geometry.ris_position;

    out.bs_ris_variance = path_loss_gain(pathloss.bs_ris, distance(bs, ris));
    const CMatrix los_g = steering_vector(N, azimuth(ris, bs)) *
                          steering_vector(M, azimuth(bs, ris)).adjoint();
    out.bs_ris = gen_ricean(N, M, out.bs_ris_variance, fading.ricean_kappa, los_g, rng);

    for (int k = 0; k < K; ++k) {
        const Point2 user = out.user_positions[k];
        const double var_h = path_loss_gain(pathloss.bs_user, distance(bs, user));
        const double var_f = path_loss_gain(pathloss.ris_user, distance(ris, user));
        out.bs_user_variance.push_back(var_h);
        out.ris_user_variance.push_back(var_f);
        out.bs_user.push_back(
            gen_ricean(M, 1, var_h, fading.ricean_kappa, steering_vector(M, azimuth(bs, user)), rng));
        out.ris_user.push_back(
            gen_ricean(N, 1, var_f, fading.ricean_kappa, steering_vector(N, azimuth(ris, user)), rng));
    }
    return out;
}

} // namespace activeris
