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

#include <array>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "activeris/types.hpp"

namespace activeris {

using Rng = std::mt19937_64;

// Deterministic generator for one logical stream, e.g. (seed, trial, method).
// Distinct key tuples give statistically independent streams.
Rng make_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> keys = {});

/// Large-scale path loss PL(d) = intercept + slope * log10(d / 1 m), in dB.
struct PathLossModel {
    double intercept_db = 0.0;
    double slope_db_per_decade = 0.0;

    static PathLossModel strong() { return {37.3, 22.0}; }
    static PathLossModel weak() { return {41.2, 28.7}; }
};

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

double distance(Point2 a, Point2 b);

struct Geometry {
    Point2 bs_position{0.0, -60.0};
    Point2 ris_position{200.0, 30.0};
    Point2 user_center{200.0, 0.0};
    double user_radius = 5.0;
    int num_users = 4;
};

struct FadingSpec {
    double ricean_kappa = 1.0;
    std::uint64_t seed = 0;
};

enum class Link { BsUser = 0, BsRis = 1, RisUser = 2 };

struct PathLossAssignment {
    PathLossModel bs_user = PathLossModel::weak();
    PathLossModel bs_ris = PathLossModel::strong();
    PathLossModel ris_user = PathLossModel::strong();

    // Weak direct link (obstructed BS-user path).
    static PathLossAssignment scenario1();
    // Strong direct link.
    static PathLossAssignment scenario2();
};

struct Dimensions {
    int bs_antennas = 4;   // M
    int ris_elements = 256; // N
    int users = 4;          // K
};

/// One realization of every link of an RIS-aided MU-MISO downlink.
///
/// Conventions: user k receives h_k^H x from the BS directly and
/// f_k^H Psi G x through the RIS, so `bs_ris` is N x M, `bs_user[k]` has
/// length M and `ris_user[k]` has length N.
struct ChannelSet {
    CMatrix bs_ris;
    std::vector<CVector> bs_user;
    std::vector<CVector> ris_user;

    // Linear per-entry variances (path-loss gains) of each link.
    double bs_ris_variance = 0.0;
    std::vector<double> bs_user_variance;
    std::vector<double> ris_user_variance;

    std::vector<Point2> user_positions;

    int bs_antennas() const { return static_cast<int>(bs_ris.cols()); }
    int ris_elements() const { return static_cast<int>(bs_ris.rows()); }
    int users() const { return static_cast<int>(bs_user.size()); }

    // Throws DomainError when the shapes disagree or an entry is not finite.
    void validate() const;
};

double path_loss_db(const PathLossModel& model, double distance_m);
double path_loss_gain(const PathLossModel& model, double distance_m);

// i.i.d. CN(0, variance) entries.
CMatrix gen_rayleigh(int rows, int cols, double variance, Rng& rng);

// Half-wavelength ULA response: entry n is exp(j*pi*n*sin(angle)).
CVector steering_vector(int num_elements, double angle_rad);

// sqrt(variance) * (sqrt(k/(1+k)) * los + sqrt(1/(1+k)) * nlos), nlos ~ CN(0,1).
CMatrix gen_ricean(int rows, int cols, double variance, double kappa,
                   const CMatrix& los_component, Rng& rng);

// Azimuth of the ray from `from` to `to`, measured from the x axis.
double azimuth(Point2 from, Point2 to);

ChannelSet gen_channel_set(const Geometry& geometry, const FadingSpec& fading,
                           const PathLossAssignment& pathloss,
                           const Dimensions& dims, Rng& rng);

} // namespace activeris
