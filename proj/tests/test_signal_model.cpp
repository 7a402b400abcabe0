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

#include <doctest.h>

#include <cmath>

#include "activeris/signal_model.hpp"
#include "activeris/units.hpp"
#include "support.hpp"

using namespace activeris;
using testing::rel_err;

namespace {

RisSetting random_setting(int N, double max_amp, double sigma_v2, Rng& rng)
{
    std::uniform_real_distribution<double> amp(0.0, max_amp), ph(-kPi, kPi);
    RisSetting s;
    s.amplification.resize(N);
    s.phases.resize(N);
    for (int n = 0; n < N; ++n) {
        s.amplification(n) = amp(rng);
        s.phases(n) = ph(rng);
    }
    s.dynamic_noise_power = sigma_v2;
    s.power_budget = 1.0;
    return s;
}

// SINR of user k written out with explicit loops, no matrix algebra.
double hand_sinr(int k, const CMatrix& w, const RisSetting& s, const ChannelSet& ch, double sigma2)
{
    const int M = ch.bs_antennas(), N = ch.ris_elements(), K = ch.users();
    auto gain = [&](int j) {
        cdouble acc = 0.0;
        for (int m = 0; m < M; ++m)
            acc += std::conj(ch.bs_user[k](m)) * w(m, j);
        for (int n = 0; n < N; ++n) {
            cdouble gw = 0.0;
            for (int m = 0; m < M; ++m)
                gw += ch.bs_ris(n, m) * w(m, j);
            acc += std::conj(ch.ris_user[k](n)) * std::polar(s.amplification(n), s.phases(n)) * gw;
        }
        return std::norm(acc);
    };
    double interference = 0.0;
    for (int j = 0; j < K; ++j)
        if (j != k)
            interference += gain(j);
    double ris_noise = 0.0;
    for (int n = 0; n < N; ++n)
        ris_noise += std::norm(ch.ris_user[k](n)) * s.amplification(n) * s.amplification(n);
    return gain(k) / (interference + ris_noise * s.dynamic_noise_power + sigma2);
}

} // namespace

TEST_SUITE("signal_model")
{
    TEST_CASE("passive reflection")
    {
        Rng rng = make_stream(1);
        const CVector x = gen_rayleigh(5, 1, 1.0, rng).col(0);
        CHECK(passive_reflect(x, RVector::Zero(5)) == x);
        const RVector th = RVector::Random(5) * kPi;
        CHECK(passive_reflect(x, th).norm() == doctest::Approx(x.norm()).epsilon(1e-14));
        CVector e1 = CVector::Zero(3);
        e1(0) = 1.0;
        RVector t = RVector::Zero(3);
        t(0) = kPi / 2;
        const CVector y = passive_reflect(e1, t);
        CHECK(std::abs(y(0) - cdouble(0.0, 1.0)) < 1e-15);
        CHECK(y.tail(2).isZero(0.0));
        CHECK_THROWS_AS(passive_reflect(x, RVector::Zero(4)), DomainError);
    }

    TEST_CASE("active reflection")
    {
        Rng rng = make_stream(2);
        const int N = 4;
        const CVector x = gen_rayleigh(N, 1, 1.0, rng).col(0);
        const CVector v = gen_rayleigh(N, 1, 0.1, rng).col(0);
        const CVector ns = gen_rayleigh(N, 1, 0.01, rng).col(0);
        const CVector zero = CVector::Zero(N);

        RisSetting unit = random_setting(N, 1.0, 0.0, rng);
        unit.amplification.setOnes();
        CHECK(active_reflect(x, unit, zero, zero).isApprox(passive_reflect(x, unit.phases), 1e-15));
        CHECK(active_reflect(zero, unit, zero, ns) == ns);

        const RisSetting s = random_setting(N, 3.0, 0.1, rng);
        const CVector y = active_reflect(x, s, v, ns);
        for (int n = 0; n < N; ++n) {
            const cdouble psi = s.amplification(n) * std::exp(cdouble(0.0, s.phases(n)));
            CHECK(std::abs(y(n) - (psi * x(n) + psi * v(n) + ns(n))) < 1e-14);
        }
        CHECK_THROWS_AS(active_reflect(x, s, CVector::Zero(3), zero), DomainError);
    }

    TEST_CASE("equivalent channel")
    {
        Rng rng = make_stream(3);
        ChannelSet ch = testing::rayleigh_channels(2, 3, 1, rng);
        CHECK(equivalent_channel(ch.bs_user[0], ch.ris_user[0], RisSetting::off(3), ch.bs_ris) ==
              ch.bs_user[0]);

        // h = 0, G = I, unit zero-phase surface: h_bar = f.
        const CVector f = gen_rayleigh(3, 1, 1.0, rng).col(0);
        const CVector hb = equivalent_channel(CVector::Zero(3), f, RisSetting::passive(3),
                                              CMatrix::Identity(3, 3));
        CHECK(hb.isApprox(f, 1e-15));

        // Hand expansion of h_bar^H = h^H + f^H Psi G for N = 3, M = 2.
        const RisSetting s = random_setting(3, 2.0, 0.0, rng);
        const CVector got = equivalent_channel(ch.bs_user[0], ch.ris_user[0], s, ch.bs_ris);
        for (int m = 0; m < 2; ++m) {
            cdouble row = std::conj(ch.bs_user[0](m));
            for (int n = 0; n < 3; ++n)
                row += std::conj(ch.ris_user[0](n)) * std::polar(s.amplification(n), s.phases(n)) *
                       ch.bs_ris(n, m);
            CHECK(std::abs(std::conj(got(m)) - row) < 1e-14);
        }
        const CMatrix all = equivalent_channels(ch, s.reflection());
        CHECK(all.col(0).isApprox(got, 1e-15));
    }

    TEST_CASE("SINR and sum-rate")
    {
        Rng rng = make_stream(4);
        {
            const ChannelSet ch = testing::rayleigh_channels(3, 5, 1, rng);
            const CMatrix w = gen_rayleigh(3, 1, 1.0, rng);
            const double s2 = 0.3;
            const double g = sinr(0, Precoder{w, 1.0}, RisSetting::off(5), ch, LinkNoise{s2});
            CHECK(g == doctest::Approx(std::norm(ch.bs_user[0].dot(w.col(0))) / s2));
            CHECK(sinr(0, Precoder{w, 1.0}, RisSetting::passive(5), ch, LinkNoise{1e300}) < 1e-290);
        }
        {
            const ChannelSet ch = testing::rayleigh_channels(2, 2, 2, rng);
            const CMatrix w = gen_rayleigh(2, 2, 1.0, rng);
            const RisSetting s = random_setting(2, 2.0, 0.2, rng);
            const RVector all = sinr_all(Precoder{w, 1.0}, s, ch, LinkNoise{0.05});
            for (int k = 0; k < 2; ++k) {
                CHECK(rel_err(all(k), hand_sinr(k, w, s, ch, 0.05)) < 1e-12);
                CHECK(rel_err(all(k), sinr(k, Precoder{w, 1.0}, s, ch, LinkNoise{0.05})) < 1e-13);
            }
            const double r = sum_rate(Precoder{w, 1.0}, s, ch, LinkNoise{0.05});
            CHECK(r == doctest::Approx(std::log2(1 + all(0)) + std::log2(1 + all(1))));
            CHECK(sum_rate(Precoder{CMatrix::Zero(2, 2), 1.0}, s, ch, LinkNoise{0.05}) == 0.0);
        }
        {
            // K = 1 with SINR exactly 1: one bit.
            ChannelSet ch = testing::rayleigh_channels(1, 1, 1, rng);
            ch.bs_user[0](0) = 1.0;
            CMatrix w(1, 1);
            w(0, 0) = 1.0;
            CHECK(sum_rate(Precoder{w, 1.0}, RisSetting::off(1), ch, LinkNoise{1.0}) ==
                  doctest::Approx(1.0));
        }
    }

    TEST_CASE("SINR scales with the precoder like the noise")
    {
        Rng rng = make_stream(5);
        const ChannelSet ch = testing::rayleigh_channels(3, 6, 3, rng);
        const CMatrix w = gen_rayleigh(3, 3, 1.0, rng);
        const CVector psi = testing::random_phases_vector(6, 1.5, rng);
        const cdouble alpha(1.7, -0.4);
        const double a2 = std::norm(alpha);
        const RVector g1 = sinr_all(w, psi, 0.2, ch, 0.1);
        const RVector g2 = sinr_all(alpha * w, psi, 0.2 * a2, ch, 0.1 * a2);
        CHECK((g1 - g2).cwiseAbs().maxCoeff() <= 1e-12 * g1.cwiseAbs().maxCoeff());
    }

    TEST_CASE("coherent phase alignment maximizes single-user SINR")
    {
        Rng rng = make_stream(6);
        ChannelSet ch = testing::rayleigh_channels(2, 8, 1, rng);
        ch.bs_user[0].setZero();
        const CMatrix w = gen_rayleigh(2, 1, 1.0, rng);
        const CVector gw = ch.bs_ris * w.col(0);
        CVector aligned(8);
        for (int n = 0; n < 8; ++n)
            aligned(n) = std::polar(1.0, -std::arg(std::conj(ch.ris_user[0](n)) * gw(n)) + 0.7);
        const double best = sinr_all(w, aligned, 0.0, ch, 1.0)(0);
        // The common offset does not matter.
        CHECK(sinr_all(w, aligned * std::polar(1.0, 1.9), 0.0, ch, 1.0)(0) ==
              doctest::Approx(best).epsilon(1e-12));
        for (int t = 0; t < 200; ++t) {
            const CVector psi = testing::random_phases_vector(8, 1.0, rng);
            CHECK(sinr_all(w, psi, 0.0, ch, 1.0)(0) <= best * (1 + 1e-12));
        }
    }

    TEST_CASE("received power decomposes into signal, interference and noise")
    {
        // Propagate each stream through the surface with active_reflect and
        // compare with the SINR assembly.
        Rng rng = make_stream(7);
        for (int trial = 0; trial < 50; ++trial) {
            const int M = 3, N = 5, K = 3;
            const ChannelSet ch = testing::rayleigh_channels(M, N, K, rng);
            const CMatrix w = gen_rayleigh(M, K, 1.0, rng);
            const RisSetting s = random_setting(N, 2.0, 0.3, rng);
            const double s2 = 0.07;
            const CVector zero = CVector::Zero(N);
            const RVector g = sinr_all(Precoder{w, 1.0}, s, ch, LinkNoise{s2});
            for (int k = 0; k < K; ++k) {
                double signal = 0.0, other = 0.0;
                for (int j = 0; j < K; ++j) {
                    const CVector y = active_reflect(ch.bs_ris * w.col(j), s, zero, zero);
                    const double p = std::norm(ch.bs_user[k].dot(w.col(j)) + ch.ris_user[k].dot(y));
                    (j == k ? signal : other) += p;
                }
                const double amp_noise = ris_noise_at_users(ch, s.reflection(), s.dynamic_noise_power)(k);
                CHECK(rel_err(signal / (other + amp_noise + s2), g(k)) < 1e-10);
            }
        }
    }

    TEST_CASE("RIS output power")
    {
        Rng rng = make_stream(8);
        const ChannelSet ch = testing::rayleigh_channels(3, 7, 2, rng);
        const CMatrix w = gen_rayleigh(3, 2, 1.0, rng);
        CHECK(ris_output_power(Precoder{w, 1.0}, RisSetting::off(7), ch.bs_ris) == 0.0);
        RisSetting unit = RisSetting::passive(7);
        unit.dynamic_noise_power = 0.25;
        CHECK(ris_output_power(Precoder{CMatrix::Zero(3, 2), 1.0}, unit, ch.bs_ris) ==
              doctest::Approx(7 * 0.25));
        const RisSetting s = random_setting(7, 2.0, 0.4, rng);
        double direct = s.amplification.squaredNorm() * 0.4;
        for (int k = 0; k < 2; ++k)
            direct += s.reflection().cwiseProduct(ch.bs_ris * w.col(k)).squaredNorm();
        CHECK(rel_err(ris_output_power(Precoder{w, 1.0}, s, ch.bs_ris), direct) < 1e-13);
        CHECK_THROWS_AS(ris_output_power(Precoder{w, 1.0}, RisSetting::off(6), ch.bs_ris),
                        DomainError);
    }

    TEST_CASE("element power model")
    {
        const ElementPower unity = element_output_power(0.3, 1.0, 0.0, 0.0);
        CHECK(unity.desired == 0.3);
        CHECK(unity.noise == 0.0);
        const ElementPower p = element_output_power(units::dbm_to_watt(-50.0), 10.0, 0.0, 0.0);
        CHECK(units::watt_to_dbm(p.desired) == doctest::Approx(-40.0));
        // Per-Hz densities: noise density grows linearly in the gain above the static floor.
        const double ss = units::dbm_to_watt(-174.0), sv = units::dbm_to_watt(-160.0);
        for (double gdb : {0.0, 5.0, 10.0, 15.0, 20.0}) {
            const double G = units::db_to_linear(gdb);
            const ElementPower e = element_output_power(1e-12, G, sv, ss);
            CHECK((e.noise - ss) / sv == doctest::Approx(G).epsilon(1e-12));
        }
        CHECK_THROWS_AS(element_output_power(-1.0, 1.0, 0.0, 0.0), DomainError);
        CHECK_THROWS_AS(element_output_power(1.0, -1.0, 0.0, 0.0), DomainError);
    }

    TEST_CASE("settings")
    {
        RisSetting s = RisSetting::passive(3);
        CHECK_NOTHROW(s.validate());
        s.amplification(1) = -0.1;
        CHECK_THROWS_AS(s.validate(), DomainError);
        const CVector psi = (CVector(3) << cdouble(1, 0), cdouble(-2, 0), cdouble(0, 3)).finished();
        const RisSetting r = RisSetting::from_reflection(psi, 0.1, 2.0);
        CHECK(r.reflection().isApprox(psi, 1e-15));
        CHECK(r.amplification(1) == 2.0);
        CHECK(r.phases(1) == doctest::Approx(kPi));
    }
}
