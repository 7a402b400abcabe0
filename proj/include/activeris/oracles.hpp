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
#include "activeris/qcqp.hpp"

// Slow reference solvers used by the validation suites and the tests. They
// share no code with the production solvers they are compared against.
namespace activeris::oracle {

struct Bounds {
    double lower = 0.0; // best feasible objective found
    double upper = 0.0; // smallest dual value found
};

/// One constraint with Q positive definite: whitens by the Cholesky factor of
/// Q, diagonalizes, and bisects the secular equation. The bracket starts at
/// lambda = 1 and doubles.
qcqp::QcqpSolution dual_bisection(const qcqp::QcqpProblem& problem);

/// Any number of constraints (meant for two): exhaustive log grid over the
/// multipliers with zoom refinement. Each grid point yields a dual value
/// b^H (A + sum l_i Q_i)^{-1} b + sum l_i c_i and a feasible primal point by
/// optimal scaling of x(l), so lower <= optimum <= upper.
Bounds multiplier_grid(const qcqp::QcqpProblem& problem, int grid_points = 121, int zoom_rounds = 4);

struct TinyOptimum {
    double sum_rate_bps = 0.0;
    CMatrix w;   // 1 x 1
    CVector psi; // N
};

/// Single-user, single-antenna active-RIS link with N <= 2 elements. Searches
/// every phase combination on a `phase_bins` grid and a grid of BS powers and
/// per-element amplitude splits; the common RIS amplitude is solved in closed
/// form on [0, amplitude saturating the reflect budget]. A final local zoom
/// refines the best grid point.
TinyOptimum tiny_active_search(const ChannelSet& channels, double bs_budget, double ris_budget,
                               double sigma2, double sigma_v2, int phase_bins = 512,
                               int power_levels = 16);

} // namespace activeris::oracle
