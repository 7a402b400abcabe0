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

#include <vector>

#include "activeris/types.hpp"

namespace activeris::qcqp {

// x^H Q x <= budget, with Q Hermitian PSD.
struct QuadraticConstraint {
    CMatrix matrix;
    double budget = 0.0;
};

/// maximize 2 Re{b^H x} - x^H A x  subject to  x^H Q_i x <= c_i  for every i,
/// with A and every Q_i Hermitian positive semidefinite.
struct QcqpProblem {
    CVector linear;    // b
    CMatrix quadratic; // A
    std::vector<QuadraticConstraint> constraints;

    int dimension() const { return static_cast<int>(linear.size()); }
    double objective(const CVector& x) const;

    // Checks shapes, Hermitian symmetry and positive budgets. Positive
    // semidefiniteness is checked by the solvers, which factor the matrices
    // anyway.
    void validate() const;
};

struct QcqpSolution {
    CVector point;
    double objective = 0.0;
    std::vector<double> dual_values;
    double kkt_residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

enum class Method {
    // Exact dual search: bisection on one multiplier, nested bisection for two,
    // cyclic dual coordinate descent beyond that.
    DualBisection,
    // x = z splitting with alternating (Dykstra) projections onto the
    // constraint intersection.
    Admm,
};

struct SolverOptions {
    Method method = Method::DualBisection;
    double tol = 1e-9;
    int max_iter = 200;
    // ADMM penalty, relative to the mean diagonal of A.
    double admm_penalty = 1.0;
};

// Objective-independent residual: stationarity ||b - A x - sum l_i Q_i x|| / ||b||
// plus complementary slackness l_i |x^H Q_i x - c_i| / |b^H x| plus relative
// feasibility violation.
double kkt_residual(const QcqpProblem& problem, const CVector& point,
                    const std::vector<double>& duals);

// One constraint: x(l) = (A + l Q)^{-1} b with l >= 0 found by bisection on the
// (non-increasing) constraint value x(l)^H Q x(l).
QcqpSolution solve_single_constraint(const CVector& b, const CMatrix& A, const CMatrix& Q,
                                     double budget, double tol = 1e-9);

QcqpSolution solve_multi_constraint(const QcqpProblem& problem, double tol = 1e-9,
                                    int max_iter = 200);

QcqpSolution solve(const QcqpProblem& problem, const SolverOptions& options = {});

QcqpSolution solve_admm(const QcqpProblem& problem, const SolverOptions& options);

// A = diag(diagonal) + factor * factor^H with diagonal >= 0.
struct DiagonalPlusLowRank {
    RVector diagonal;
    CMatrix factor;

    CMatrix dense() const;
    CVector apply(const CVector& x) const;
};

// Same bisection as above for A = diag + low rank and a diagonal positive
// definite Q = diag(q_diagonal). Each multiplier evaluation costs O(D r^2)
// through the Woodbury identity instead of a dense factorization.
QcqpSolution solve_single_constraint(const CVector& b, const DiagonalPlusLowRank& A,
                                     const RVector& q_diagonal, double budget,
                                     double tol = 1e-9);

// Euclidean projection of v onto {z : z^H Q z <= budget}.
CVector project_onto_ellipsoid(const CVector& v, const CMatrix& Q, double budget);

} // namespace activeris::qcqp
