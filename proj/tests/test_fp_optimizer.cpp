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

#include "activeris/baselines.hpp"
#include "activeris/fp_optimizer.hpp"
#include "activeris/oracles.hpp"
#include "support.hpp"

using namespace activeris;
using namespace activeris::fp;
using testing::rel_err;

namespace {

struct Instance {
    ChannelSet ch;
    CMatrix w;
    RisSetting ris;
    LinkNoise noise;
    FpState state;
};

Instance random_instance(int M, int N, int K, Rng& rng, double sigma_v2 = 0.2)
{
    Instance in;
    in.ch = testing::rayleigh_channels(M, N, K, rng);
    in.w = gen_rayleigh(M, K, 1.0, rng);
    in.ris = RisSetting::from_reflection(testing::random_phases_vector(N, 0.8, rng), sigma_v2, 1e3);
    in.noise = LinkNoise{0.1};
    in.state = FpState::zeros(K);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int k = 0; k < K; ++k)
        in.state.rho(k) = u(rng);
    in.state.varpi = gen_rayleigh(K, 1, 1.0, rng).col(0);
    return in;
}

double surrogate(const Instance& in, const FpState& s)
{
    return surrogate_objective(Precoder{in.w, 1.0}, in.ris, s, in.ch, in.noise);
}

double ln_rate(const Instance& in)
{
    const RVector g = sinr_all(Precoder{in.w, 1.0}, in.ris, in.ch, in.noise);
    return (1.0 + g.array()).log().sum();
}

} // namespace

TEST_SUITE("fp_optimizer")
{
    TEST_CASE("rho update closed form")
    {
        RVector xi(3);
        xi << 0.0, 1.0, 2.5;
        const RVector rho = rho_from_xi(xi);
        CHECK(rho(0) == 0.0);
        CHECK(rho(1) == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0));
        CHECK(rho(2) == doctest::Approx(0.5 * (6.25 + 2.5 * std::sqrt(10.25))));
    }

    TEST_CASE("rho and varpi updates are stationary points of the surrogate")
    {
        Rng rng = make_stream(1);
        for (int t = 0; t < 10; ++t) {
            Instance in = random_instance(3, 6, 3, rng);
            in.state.rho = update_rho(in.state, Precoder{in.w, 1.0}, in.ris, in.ch);
            const double base = surrogate(in, in.state);
            for (int k = 0; k < 3; ++k) {
                const double h = 1e-5 * std::max(1.0, in.state.rho(k));
                FpState up = in.state, down = in.state;
                up.rho(k) += h;
                down.rho(k) -= h;
                const double d = (surrogate(in, up) - surrogate(in, down)) / (2 * h);
                CHECK(std::abs(d) <= 1e-6 * std::max(1.0, std::abs(base)));
            }

            in.state.varpi = update_varpi(in.state, Precoder{in.w, 1.0}, in.ris, in.ch, in.noise);
            const double h = 1e-6;
            for (int k = 0; k < 3; ++k) {
                for (cdouble dir : {cdouble(1.0, 0.0), cdouble(0.0, 1.0)}) {
                    FpState up = in.state, down = in.state;
                    up.varpi(k) += h * dir;
                    down.varpi(k) -= h * dir;
                    const double d = (surrogate(in, up) - surrogate(in, down)) / (2 * h);
                    CHECK(std::abs(d) <= 1e-6 * std::max(1.0, std::abs(base)));
                }
            }
        }
    }

    TEST_CASE("varpi update special cases")
    {
        Rng rng = make_stream(2);
        Instance in = random_instance(2, 3, 2, rng);
        in.w.setZero();
        CHECK(update_varpi(in.state, Precoder{in.w, 1.0}, in.ris, in.ch, in.noise).isZero(0.0));

        Instance one = random_instance(2, 3, 1, rng);
        one.ris = RisSetting::off(3);
        one.state.rho.setZero();
        const cdouble hw = one.ch.bs_user[0].dot(one.w.col(0));
        const CVector v = update_varpi(one.state, Precoder{one.w, 1.0}, one.ris, one.ch, one.noise);
        CHECK(std::abs(v(0) - hw / (std::norm(hw) + 0.1)) < 1e-14);
    }

    TEST_CASE("surrogate is tight after the updates and a lower bound otherwise")
    {
        Rng rng = make_stream(3);
        Instance zero = random_instance(2, 4, 2, rng);
        zero.w.setZero();
        CHECK(surrogate(zero, FpState::zeros(2)) == 0.0);

        for (int t = 0; t < 50; ++t) {
            Instance in = random_instance(3, 8, 3, rng);
            const Precoder pre{in.w, 1.0};

            // Arbitrary rho followed by the varpi update: never above the true rate.
            in.state.varpi = update_varpi(in.state, pre, in.ris, in.ch, in.noise);
            CHECK(surrogate(in, in.state) <= ln_rate(in) + 1e-9);

            // rho = SINR is the fixed point of the update pair, and there the
            // surrogate equals sum ln(1 + SINR).
            in.state.rho = sinr_all(pre, in.ris, in.ch, in.noise);
            in.state.varpi = update_varpi(in.state, pre, in.ris, in.ch, in.noise);
            const RVector rho = update_rho(in.state, pre, in.ris, in.ch);
            CHECK((rho - in.state.rho).cwiseAbs().maxCoeff() <= 1e-9 * (1 + rho.maxCoeff()));
            CHECK(std::abs(surrogate(in, in.state) - ln_rate(in)) <= 1e-9);
        }
    }

    TEST_CASE("precoder subproblem data")
    {
        Rng rng = make_stream(4);
        {
            Instance in = random_instance(3, 5, 1, rng);
            const auto p = build_precoder_qcqp(in.state, in.ris, in.ch, in.noise, 2.0);
            const CVector hb = equivalent_channel(in.ch.bs_user[0], in.ch.ris_user[0], in.ris, in.ch.bs_ris);
            CHECK(rel_err(CVector(Eigen::Map<const CVector>(p.quadratic.data(), 9)),
                          CVector(Eigen::Map<const CVector>(CMatrix(std::norm(in.state.varpi(0)) * hb * hb.adjoint()).data(), 9))) < 1e-13);
            CHECK(rel_err(p.linear, std::sqrt(1 + in.state.rho(0)) * in.state.varpi(0) * hb) < 1e-13);
            CHECK(p.constraints.size() == 2);
            CHECK(p.constraints[0].budget == 2.0);
            CHECK(p.constraints[1].budget ==
                  doctest::Approx(1e3 - in.ris.amplification.squaredNorm() * in.ris.dynamic_noise_power));
        }
        {
            // K = 3: block structure and the linear term of each block.
            Instance in = random_instance(2, 4, 3, rng);
            const auto p = build_precoder_qcqp(in.state, in.ris, in.ch, in.noise, 1.0);
            CHECK(p.dimension() == 6);
            CHECK(p.quadratic.topRightCorner(2, 4).isZero(0.0));
            CHECK(p.quadratic.block(0, 0, 2, 2).isApprox(p.quadratic.block(4, 4, 2, 2), 1e-15));
            const CMatrix hb = equivalent_channels(in.ch, in.ris.reflection());
            for (int k = 0; k < 3; ++k)
                CHECK(rel_err(CVector(p.linear.segment(2 * k, 2)),
                              CVector(std::sqrt(1 + in.state.rho(k)) * in.state.varpi(k) * hb.col(k))) < 1e-13);
        }
        {
            Instance in = random_instance(2, 4, 2, rng);
            in.ris = RisSetting::from_reflection(CVector::Zero(4), 0.1, 1.0);
            const auto p = build_precoder_qcqp(in.state, in.ris, in.ch, in.noise, 1.0);
            CHECK(p.constraints[1].matrix.isZero(0.0));
        }
        {
            Instance in = random_instance(2, 4, 2, rng);
            in.ris = RisSetting::from_reflection(CVector::Constant(4, 10.0), 0.1, 1.0);
            CHECK_THROWS_AS(build_precoder_qcqp(in.state, in.ris, in.ch, in.noise, 1.0),
                            InfeasibleAmplificationError);
        }
    }

    TEST_CASE("RIS subproblem data")
    {
        Rng rng = make_stream(5);
        {
            Instance in = random_instance(2, 5, 2, rng, 0.3);
            const auto p = build_ris_qcqp(in.state, Precoder{CMatrix::Zero(2, 2), 1.0}, in.ch,
                                          in.noise, 0.3, 1.0);
            CHECK(p.linear.isZero(0.0));
            RVector omega = RVector::Zero(5);
            for (int k = 0; k < 2; ++k)
                omega += std::norm(in.state.varpi(k)) * in.ch.ris_user[k].cwiseAbs2() * 0.3;
            CHECK(rel_err(CVector(p.quadratic.diagonal()), CVector(omega.cast<cdouble>())) < 1e-14);
            CHECK((p.quadratic - CMatrix(p.quadratic.diagonal().asDiagonal())).isZero(0.0));
            CHECK(p.constraints.at(0).matrix.isApprox(0.3 * CMatrix::Identity(5, 5), 1e-15));
        }
        for (int t = 0; t < 20; ++t) {
            // The surrogate and the QCQP objective in x = conj(psi) differ by a
            // constant that does not depend on psi.
            Instance in = random_instance(3, 6, 3, rng, 0.2);
            const Precoder pre{in.w, 1.0};
            const auto p = build_ris_qcqp(in.state, pre, in.ch, in.noise, 0.2, 1.0);
            double offset = 0.0;
            for (int s = 0; s < 5; ++s) {
                const CVector psi = testing::random_phases_vector(6, 1.3, rng);
                Instance moved = in;
                moved.ris = RisSetting::from_reflection(psi, 0.2, 1e3);
                const double diff = surrogate(moved, in.state) - p.objective(psi.conjugate());
                if (s == 0)
                    offset = diff;
                CHECK(diff == doctest::Approx(offset).epsilon(1e-9).scale(1.0));
            }
            // Pi reproduces the radiated power.
            const CVector psi = in.ris.reflection();
            CHECK(rel_err(psi.conjugate().dot(p.constraints[0].matrix * psi.conjugate()).real(),
                          ris_output_power(in.w, psi, 0.2, in.ch.bs_ris)) < 1e-12);
        }
    }

    TEST_CASE("psi decomposition")
    {
        CVector psi(3);
        psi << 1.0, -2.0, cdouble(0.3, -0.4);
        const auto [amp, phase] = decompose_psi(psi);
        CHECK(amp(0) == 1.0);
        CHECK(phase(0) == 0.0);
        CHECK(amp(1) == 2.0);
        CHECK(phase(1) == doctest::Approx(kPi));
        Rng rng = make_stream(6);
        const CVector r = gen_rayleigh(50, 1, 2.0, rng).col(0);
        const auto [a, p] = decompose_psi(r);
        CVector back(50);
        for (int n = 0; n < 50; ++n) {
            back(n) = std::polar(a(n), p(n));
            CHECK(p(n) > -kPi);
            CHECK(p(n) <= kPi);
        }
        CHECK(rel_err(back, r) <= 1e-14);
    }

    TEST_CASE("alternation is monotone, feasible and tight")
    {
        Rng rng = make_stream(7);
        for (int t = 0; t < 8; ++t) {
            const ChannelSet ch = testing::rayleigh_channels(4, 32, 4, rng, 1e-6);
            AlgoOptions opt;
            opt.seed = 100 + t;
            const double bs = 1.0, ris = 0.5, s2 = 1e-6, sv2 = 1e-6;
            const Solution s = optimize_active(ch, bs, ris, LinkNoise{s2}, sv2, opt);
            REQUIRE(!s.trace.empty());
            double prev = s.initial_sum_rate_bps;
            for (const auto& tp : s.trace) {
                CHECK(tp.sum_rate_bps >= prev - 1e-9);
                CHECK(std::abs(tp.surrogate_nats - std::log(2.0) * prev) <= 1e-9);
                prev = tp.sum_rate_bps;
            }
            CHECK(s.sum_rate_bps == doctest::Approx(s.trace.back().sum_rate_bps).epsilon(1e-12));
            CHECK(s.precoder.transmit_power() <= bs * (1 + 1e-6));
            CHECK(ris_output_power(s.precoder, s.ris, ch.bs_ris) <= ris * (1 + 1e-6));
            CHECK(s.iterations == static_cast<int>(s.trace.size()));
        }
    }

    TEST_CASE("passive and no-RIS modes")
    {
        Rng rng = make_stream(8);
        const ChannelSet ch = testing::rayleigh_channels(3, 16, 3, rng);
        AlgoOptions opt;
        opt.seed = 5;
        const Solution p = optimize_passive(ch, 1.0, LinkNoise{0.1}, opt);
        CHECK((p.ris.amplification.array() == 1.0).all());
        CHECK(p.ris.dynamic_noise_power == 0.0);
        double prev = p.initial_sum_rate_bps;
        for (const auto& tp : p.trace) {
            CHECK(tp.sum_rate_bps >= prev - 1e-9);
            prev = tp.sum_rate_bps;
        }
        const Solution n = optimize_no_ris(ch, 1.0, LinkNoise{0.1}, opt);
        CHECK(n.ris.amplification.isZero(0.0));
        CHECK(n.precoder.transmit_power() <= 1.0 + 1e-6);
    }

    TEST_CASE("tiny instances reach the exhaustive-search optimum")
    {
        Rng rng = make_stream(9);
        std::uniform_real_distribution<double> s2(0.05, 1.0), sv2(0.01, 0.5);
        for (int t = 0; t < 6; ++t) {
            const ChannelSet ch = testing::rayleigh_channels(1, 1, 1, rng);
            const double sigma2 = s2(rng), sigma_v2 = sv2(rng);
            AlgoOptions opt;
            opt.seed = t;
            // A random start with the reflected path nearly opposite the direct
            // one sits next to a saddle, where the relative-change stop fires
            // early. Best of a few starts avoids that.
            opt.restarts = 3;
            const Solution s = optimize_active(ch, 1.0, 1.0, LinkNoise{sigma2}, sigma_v2, opt);
            const auto best = oracle::tiny_active_search(ch, 1.0, 1.0, sigma2, sigma_v2);
            CHECK(s.sum_rate_bps >= 0.98 * best.sum_rate_bps);
        }
    }

    TEST_CASE("a vanishing RIS budget recovers the no-RIS rate")
    {
        // Single user, so the precoder optimum is unique (maximum-ratio).
        Rng rng = make_stream(10);
        for (int t = 0; t < 5; ++t) {
            const ChannelSet ch = testing::rayleigh_channels(4, 16, 1, rng);
            AlgoOptions opt;
            opt.seed = t;
            const Solution a = optimize_active(ch, 1.0, 1e-9, LinkNoise{0.1}, 0.1, opt);
            const double mrt = std::log2(1.0 + ch.bs_user[0].squaredNorm() / 0.1);
            CHECK(std::abs(a.sum_rate_bps - mrt) <= 0.01 * mrt);
        }
    }

    TEST_CASE("runs are reproducible and restarts keep the best")
    {
        Rng rng = make_stream(11);
        const ChannelSet ch = testing::rayleigh_channels(2, 8, 2, rng);
        AlgoOptions opt;
        opt.seed = 77;
        const Solution a = optimize_active(ch, 1.0, 1.0, LinkNoise{0.1}, 0.1, opt);
        const Solution b = optimize_active(ch, 1.0, 1.0, LinkNoise{0.1}, 0.1, opt);
        CHECK(a.sum_rate_bps == b.sum_rate_bps);
        CHECK(a.precoder.vectors == b.precoder.vectors);
        opt.restarts = 4;
        const Solution c = optimize_active(ch, 1.0, 1.0, LinkNoise{0.1}, 0.1, opt);
        CHECK(c.sum_rate_bps >= a.sum_rate_bps);
    }

    TEST_CASE("a sign error in the rho update breaks tightness")
    {
        Rng rng = make_stream(12);
        const ChannelSet ch = testing::rayleigh_channels(2, 8, 2, rng);
        AlgoOptions opt;
        opt.seed = 1;
        opt.rho_rule = [](const RVector& xi) {
            RVector r(xi.size());
            for (Eigen::Index k = 0; k < xi.size(); ++k)
                r(k) = 0.5 * (xi(k) * xi(k) - xi(k) * std::sqrt(xi(k) * xi(k) + 4.0));
            return r;
        };
        const Solution s = optimize_active(ch, 1.0, 1.0, LinkNoise{0.1}, 0.1, opt);
        REQUIRE(!s.trace.empty());
        CHECK(std::abs(s.trace[0].surrogate_nats - std::log(2.0) * s.initial_sum_rate_bps) > 1e-3);
    }

    TEST_CASE("invalid inputs")
    {
        Rng rng = make_stream(13);
        const ChannelSet ch = testing::rayleigh_channels(2, 4, 2, rng);
        AlgoOptions opt;
        CHECK_THROWS_AS(optimize_active(ch, 0.0, 1.0, LinkNoise{0.1}, 0.1, opt), DomainError);
        CHECK_THROWS_AS(optimize_active(ch, 1.0, 0.0, LinkNoise{0.1}, 0.1, opt), DomainError);
        CHECK_THROWS_AS(optimize_active(ch, 1.0, 1.0, LinkNoise{0.0}, 0.1, opt), DomainError);
        opt.max_outer_iters = 0;
        CHECK_THROWS_AS(optimize_active(ch, 1.0, 1.0, LinkNoise{0.1}, 0.1, opt), DomainError);
    }
}
