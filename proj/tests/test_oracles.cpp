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

#include "activeris/oracles.hpp"
#include "activeris/signal_model.hpp"
#include "support.hpp"

using namespace activeris;

TEST_SUITE("oracles")
{
    TEST_CASE("dual bisection closed forms")
    {
        // max 2Re(b^H x) - ||x||^2 s.t. ||x||^2 <= P: x = b when ||b||^2 <= P,
        // else sqrt(P) b / ||b||.
        CVector b(2);
        b << cdouble(3.0, 0.0), cdouble(0.0, 4.0);
        for (double P : {100.0, 4.0}) {
            qcqp::QcqpProblem p;
            p.linear = b;
            p.quadratic = CMatrix::Identity(2, 2);
            p.constraints.push_back({CMatrix::Identity(2, 2), P});
            const auto s = oracle::dual_bisection(p);
            const CVector expect = b.squaredNorm() <= P ? b : CVector(std::sqrt(P) * b / b.norm());
            CHECK(testing::rel_err(s.point, expect) < 1e-9);
            CHECK(s.objective == doctest::Approx(p.objective(expect)).epsilon(1e-9));
        }
    }

    TEST_CASE("multiplier grid brackets the optimum")
    {
        Rng rng = make_stream(31);
        for (int t = 0; t < 10; ++t) {
            qcqp::QcqpProblem p;
            p.linear = gen_rayleigh(3, 1, 1.0, rng).col(0);
            const CMatrix a = gen_rayleigh(3, 3, 1.0, rng);
            p.quadratic = a * a.adjoint();
            const CMatrix q = gen_rayleigh(3, 3, 1.0, rng);
            p.constraints.push_back({q * q.adjoint() + 0.1 * CMatrix::Identity(3, 3), 0.5});
            const auto exact = oracle::dual_bisection(p);
            const auto b = oracle::multiplier_grid(p);
            CHECK(b.lower <= exact.objective + 1e-9);
            CHECK(b.upper >= exact.objective - 1e-9);
            CHECK(b.upper - b.lower <= 1e-3 * std::max(1.0, std::abs(exact.objective)));
        }
    }

    TEST_CASE("tiny search returns a feasible point with the reported rate")
    {
        Rng rng = make_stream(32);
        for (int N : {1, 2}) {
            const ChannelSet ch = testing::rayleigh_channels(1, N, 1, rng);
            const auto best = oracle::tiny_active_search(ch, 1.0, 0.5, 0.1, 0.05, 128, 8);
            CHECK(best.w.squaredNorm() <= 1.0 + 1e-9);
            CHECK(ris_output_power(best.w, best.psi, 0.05, ch.bs_ris) <= 0.5 * (1 + 1e-9));
            CHECK(best.sum_rate_bps ==
                  doctest::Approx(sum_rate(best.w, best.psi, 0.05, ch, 0.1)).epsilon(1e-12));
            // Never worse than switching the surface off.
            CHECK(best.sum_rate_bps >= std::log2(1.0 + ch.bs_user[0].squaredNorm() / 0.1) - 1e-9);
        }
    }
}
