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

#include "activeris/oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace activeris::oracle {

qcqp::QcqpSolution dual_bisection(const qcqp::QcqpProblem& problem)
{
    problem.validate();
    require(problem.constraints.size() == 1, "dual_bisection takes exactly one constraint");
    const CMatrix& A = problem.quadratic;
    const CMatrix& Q = problem.constraints[0].matrix;
    const double budget = problem.constraints[0].budget;
    const CVector& b = problem.linear;

    Eigen::LLT<CMatrix> llt(Q);
    if (llt.info() != Eigen::Success)
        throw DomainError("oracle needs a positive definite constraint matrix");
    const CMatrix L = llt.matrixL();
    // Whitened data: y = L^H x, A_w = L^{-1} A L^{-H}, b_w = L^{-1} b.
    const CMatrix Linv_A = L.triangularView<Eigen::Lower>().solve(A);
    const CMatrix A_w = L.triangularView<Eigen::Lower>().solve(Linv_A.adjoint()).adjoint();
    const CVector b_w = L.triangularView<Eigen::Lower>().solve(b);
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(0.5 * (A_w + A_w.adjoint()));
    const RVector mu = eig.eigenvalues();
    const CVector c = eig.eigenvectors().adjoint() * b_w;

    const double scale = std::max(1.0, mu.cwiseAbs().maxCoeff());
    auto norm2 = [&](double lambda) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < mu.size(); ++i) {
            const double den = mu(i) + lambda;
            const double ci = std::norm(c(i));
            if (ci == 0.0)
                continue;
            if (den <= 1e-14 * scale)
                return std::numeric_limits<double>::infinity();
            s += ci / (den * den);
        }
        return s;
    };

    double lambda = 0.0;
    if (norm2(0.0) > budget) {
        double lo = 0.0;
        double hi = 1.0;
        while (norm2(hi) > budget)
            hi *= 2.0;
        for (int i = 0; i < 400 && hi - lo > 1e-16 * hi; ++i) {
            const double mid = 0.5 * (lo + hi);
            (norm2(mid) > budget ? lo : hi) = mid;
        }
        lambda = hi;
    }

    CVector y(mu.size());
    for (Eigen::Index i = 0; i < mu.size(); ++i) {
        const double den = mu(i) + lambda;
        y(i) = (c(i) == cdouble(0.0) || den <= 1e-14 * scale) ? cdouble(0.0) : c(i) / den;
    }
    qcqp::QcqpSolution sol;
    sol.point = L.adjoint().triangularView<Eigen::Upper>().solve(eig.eigenvectors() * y);
    sol.objective = problem.objective(sol.point);
    sol.dual_values = {lambda};
    sol.kkt_residual = qcqp::kkt_residual(problem, sol.point, sol.dual_values);
    sol.converged = true;
    return sol;
}

Bounds multiplier_grid(const qcqp::QcqpProblem& problem, int grid_points, int zoom_rounds)
{
    problem.validate();
    const int m = static_cast<int>(problem.constraints.size());
    require(m >= 1 && m <= 3, "multiplier grid handles one to three constraints");
    require(grid_points >= 3, "grid needs at least three points");
    const CMatrix& A = problem.quadratic;
    const CVector& b = problem.linear;

    Bounds out;
    out.lower = 0.0; // x = 0 is always feasible
    out.upper = std::numeric_limits<double>::infinity();

    auto evaluate = [&](const std::vector<double>& lambda) {
        CMatrix M = A;
        double dual_const = 0.0;
        for (int i = 0; i < m; ++i) {
            M += lambda[i] * problem.constraints[i].matrix;
            dual_const += lambda[i] * problem.constraints[i].budget;
        }
        Eigen::LLT<CMatrix> llt(M);
        if (llt.info() != Eigen::Success)
            return std::numeric_limits<double>::infinity();
        const CVector x = llt.solve(b);
        const double r = b.dot(x).real();
        const double dual = r + dual_const;

        double smax = std::numeric_limits<double>::infinity();
        for (const auto& con : problem.constraints) {
            const double q = x.dot(con.matrix * x).real();
            if (q > 0.0)
                smax = std::min(smax, std::sqrt(con.budget / q));
        }
        const double xax = x.dot(A * x).real();
        double s = xax > 0.0 ? r / xax : smax;
        s = std::clamp(s, 0.0, smax);
        if (std::isfinite(s))
            out.lower = std::max(out.lower, 2.0 * s * r - s * s * xax);
        return dual;
    };

    // Multiplier i ranges over {0} and a log grid around its natural scale.
    std::vector<double> center(m);
    std::vector<double> half_width(m);
    for (int i = 0; i < m; ++i) {
        const auto& con = problem.constraints[i];
        const double scale = (A.norm() + b.squaredNorm() / con.budget) /
                             std::max(con.matrix.norm(), 1e-300);
        center[i] = std::log(scale);
        half_width[i] = std::log(1e6);
    }

    std::vector<double> best_u(m, 0.0);
    std::vector<bool> best_zero(m, true);
    for (int round = 0; round <= zoom_rounds; ++round) {
        std::vector<std::vector<double>> axes(m);
        for (int i = 0; i < m; ++i) {
            axes[i].push_back(0.0);
            for (int g = 0; g < grid_points - 1; ++g) {
                const double u = center[i] - half_width[i] +
                                 2.0 * half_width[i] * g / (grid_points - 2);
                axes[i].push_back(std::exp(u));
            }
        }
        std::vector<int> idx(m, 0);
        double round_best = std::numeric_limits<double>::infinity();
        std::vector<double> lambda(m);
        while (true) {
            for (int i = 0; i < m; ++i)
                lambda[i] = axes[i][idx[i]];
            const double d = evaluate(lambda);
            if (d < round_best) {
                round_best = d;
                for (int i = 0; i < m; ++i) {
                    best_zero[i] = idx[i] == 0;
                    best_u[i] = best_zero[i] ? center[i] - half_width[i] : std::log(lambda[i]);
                }
            }
            int i = 0;
            while (i < m && ++idx[i] == static_cast<int>(axes[i].size()))
                idx[i++] = 0;
            if (i == m)
                break;
        }
        out.upper = std::min(out.upper, round_best);
        for (int i = 0; i < m; ++i) {
            const double step = 2.0 * half_width[i] / (grid_points - 2);
            center[i] = best_u[i];
            half_width[i] = best_zero[i] ? half_width[i] : 2.0 * step;
        }
    }
    return out;
}

namespace {

struct TinyLink {
    cdouble c0;
    std::array<cdouble, 2> d{};
    std::array<double, 2> g2{};
    std::array<double, 2> f2{};
    int n = 1;
    double bs_budget = 0.0;
    double ris_budget = 0.0;
    double sigma2 = 0.0;
    double sigma_v2 = 0.0;
};

struct TinyPoint {
    double snr = -1.0;
    double a2 = 0.0;
    double beta = 0.0;
    std::array<double, 2> theta{};
    double t = 0.0;
};

// Best SNR over the common amplitude t for fixed BS power, split and
// reflected sum S (already phase-rotated and weighted).
inline void best_over_t(const TinyLink& L, double a2, double u0, double u1, cdouble S,
                        double& snr_out, double& t_out)
{
    const double A = std::norm(L.c0);
    const double B = (std::conj(L.c0) * S).real();
    const double C = std::norm(S);
    const double D = L.sigma_v2 * (u0 * u0 * L.f2[0] + u1 * u1 * L.f2[1]);
    const double E = L.sigma2;
    const double load = u0 * u0 * (a2 * L.g2[0] + L.sigma_v2) + u1 * u1 * (a2 * L.g2[1] + L.sigma_v2);
    const double tmax = load > 0.0 ? std::sqrt(L.ris_budget / load) : 0.0;

    auto ratio = [&](double t) { return a2 * (A + 2.0 * B * t + C * t * t) / (D * t * t + E); };
    double best = ratio(0.0);
    double best_t = 0.0;
    auto consider = [&](double t) {
        if (!(t > 0.0) || t > tmax)
            return;
        const double v = ratio(t);
        if (v > best) {
            best = v;
            best_t = t;
        }
    };
    consider(tmax);
    // Stationary points: B D t^2 - (C E - A D) t - B E = 0.
    const double qa = B * D;
    const double qb = -(C * E - A * D);
    const double qc = -B * E;
    if (std::abs(qa) > 1e-300) {
        const double disc = qb * qb - 4.0 * qa * qc;
        if (disc >= 0.0) {
            const double sq = std::sqrt(disc);
            consider((-qb + sq) / (2.0 * qa));
            consider((-qb - sq) / (2.0 * qa));
        }
    } else if (std::abs(qb) > 1e-300) {
        consider(-qc / qb);
    }
    snr_out = best;
    t_out = best_t;
}

TinyPoint evaluate(const TinyLink& L, double a2, double beta, double th0, double th1)
{
    TinyPoint p;
    p.a2 = a2;
    p.beta = beta;
    p.theta = {th0, th1};
    const double u0 = L.n == 1 ? 1.0 : std::cos(beta);
    const double u1 = L.n == 1 ? 0.0 : std::sin(beta);
    const cdouble S = u0 * std::polar(1.0, th0) * L.d[0] + u1 * std::polar(1.0, th1) * L.d[1];
    best_over_t(L, a2, u0, u1, S, p.snr, p.t);
    return p;
}

} // namespace

TinyOptimum tiny_active_search(const ChannelSet& channels, double bs_budget, double ris_budget,
                               double sigma2, double sigma_v2, int phase_bins, int power_levels)
{
    channels.validate();
    require(channels.bs_antennas() == 1 && channels.users() == 1,
            "tiny search needs M = 1 and K = 1");
    const int n = channels.ris_elements();
    require(n == 1 || n == 2, "tiny search needs N <= 2");
    require(bs_budget > 0.0 && ris_budget > 0.0 && sigma2 > 0.0 && sigma_v2 >= 0.0,
            "invalid budgets or noise powers");
    require(phase_bins >= 4 && power_levels >= 2, "grid too coarse");

    TinyLink L;
    L.n = n;
    L.c0 = std::conj(channels.bs_user[0](0));
    for (int i = 0; i < n; ++i) {
        L.d[i] = std::conj(channels.ris_user[0](i)) * channels.bs_ris(i, 0);
        L.g2[i] = std::norm(channels.bs_ris(i, 0));
        L.f2[i] = std::norm(channels.ris_user[0](i));
    }
    L.bs_budget = bs_budget;
    L.ris_budget = ris_budget;
    L.sigma2 = sigma2;
    L.sigma_v2 = sigma_v2;

    const double dtheta = 2.0 * kPi / phase_bins;
    const double dbeta = n == 1 ? 0.0 : 0.5 * kPi / (power_levels - 1);
    const double da2 = bs_budget / power_levels;
    std::vector<cdouble> rot(phase_bins);
    for (int k = 0; k < phase_bins; ++k)
        rot[k] = std::polar(1.0, k * dtheta);

    TinyPoint best;
    const int beta_levels = n == 1 ? 1 : power_levels;
    const int bins1 = n == 1 ? 1 : phase_bins;
    for (int ia = 1; ia <= power_levels; ++ia) {
        const double a2 = ia * da2;
        for (int ib = 0; ib < beta_levels; ++ib) {
            const double beta = ib * dbeta;
            const double u0 = n == 1 ? 1.0 : std::cos(beta);
            const double u1 = n == 1 ? 0.0 : std::sin(beta);
            for (int k0 = 0; k0 < phase_bins; ++k0) {
                const cdouble s0 = u0 * rot[k0] * L.d[0];
                for (int k1 = 0; k1 < bins1; ++k1) {
                    const cdouble S = s0 + u1 * rot[k1] * L.d[1];
                    double snr = 0.0;
                    double t = 0.0;
                    best_over_t(L, a2, u0, u1, S, snr, t);
                    if (snr > best.snr) {
                        best = {snr, a2, beta, {k0 * dtheta, k1 * dtheta}, t};
                    }
                }
            }
        }
    }

    // Local zoom around the best grid point.
    double sa = da2;
    double sb = dbeta;
    double st = dtheta;
    for (int round = 0; round < 12; ++round) {
        const TinyPoint center = best;
        for (int ia = -3; ia <= 3; ++ia) {
            const double a2 = std::clamp(center.a2 + ia * sa / 3.0, 1e-12 * bs_budget, bs_budget);
            for (int ib = (n == 1 ? 0 : -3); ib <= (n == 1 ? 0 : 3); ++ib) {
                const double beta = std::clamp(center.beta + ib * sb / 3.0, 0.0, 0.5 * kPi);
                for (int i0 = -3; i0 <= 3; ++i0) {
                    for (int i1 = (n == 1 ? 0 : -3); i1 <= (n == 1 ? 0 : 3); ++i1) {
                        const TinyPoint p = evaluate(L, a2, beta, center.theta[0] + i0 * st / 3.0,
                                                     center.theta[1] + i1 * st / 3.0);
                        if (p.snr > best.snr)
                            best = p;
                    }
                }
            }
        }
        sa *= 0.5;
        sb *= 0.5;
        st *= 0.5;
    }

    TinyOptimum out;
    out.sum_rate_bps = std::log2(1.0 + best.snr);
    out.w = CMatrix::Constant(1, 1, cdouble(std::sqrt(best.a2), 0.0));
    out.psi = CVector::Zero(n);
    const double u0 = n == 1 ? 1.0 : std::cos(best.beta);
    const double u1 = n == 1 ? 0.0 : std::sin(best.beta);
    out.psi(0) = best.t * u0 * std::polar(1.0, best.theta[0]);
    if (n == 2)
        out.psi(1) = best.t * u1 * std::polar(1.0, best.theta[1]);
    return out;
}

} // namespace activeris::oracle
