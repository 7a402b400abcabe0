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

#include "activeris/fp_optimizer.hpp"

#include <cmath>
#include <limits>

namespace activeris::fp {

namespace {

// Everything an iteration needs about the current (w, psi) pair.
struct LinkState {
    CMatrix cross;  // K x K, cross(k, j) = h_bar_k^H w_j
    RVector denom;  // sum_j |cross(k, j)|^2 + RIS noise + sigma^2
    CMatrix hbar;   // M x K equivalent channels
};

LinkState evaluate_links(const CMatrix& w, const CVector& psi, double sigma_v2,
                         const ChannelSet& channels, double sigma2)
{
    LinkState s;
    s.hbar = equivalent_channels(channels, psi);
    s.cross = s.hbar.adjoint() * w;
    const RVector ris_noise = ris_noise_at_users(channels, psi, sigma_v2);
    s.denom = s.cross.cwiseAbs2().rowwise().sum() + ris_noise;
    s.denom.array() += sigma2;
    return s;
}

RVector xi_from(const FpState& state, const LinkState& links)
{
    const Eigen::Index K = links.cross.rows();
    RVector xi(K);
    for (Eigen::Index k = 0; k < K; ++k)
        xi(k) = std::real(std::conj(state.varpi(k)) * links.cross(k, k));
    return xi;
}

CVector varpi_from(const RVector& rho, const LinkState& links)
{
    const Eigen::Index K = links.cross.rows();
    CVector varpi(K);
    for (Eigen::Index k = 0; k < K; ++k) {
        if (!(links.denom(k) > 0.0))
            throw DomainError("varpi update: zero SINR denominator");
        varpi(k) = std::sqrt(1.0 + rho(k)) * links.cross(k, k) / links.denom(k);
    }
    return varpi;
}

double surrogate_from(const FpState& state, const LinkState& links)
{
    double total = 0.0;
    for (Eigen::Index k = 0; k < links.cross.rows(); ++k) {
        const double rho = state.rho(k);
        const cdouble varpi = state.varpi(k);
        total += std::log1p(rho) - rho +
                 2.0 * std::sqrt(1.0 + rho) * std::real(std::conj(varpi) * links.cross(k, k)) -
                 std::norm(varpi) * links.denom(k);
    }
    return total;
}

RVector sinr_from(const LinkState& links)
{
    const Eigen::Index K = links.cross.rows();
    RVector g(K);
    for (Eigen::Index k = 0; k < K; ++k) {
        const double signal = std::norm(links.cross(k, k));
        g(k) = signal / (links.denom(k) - signal);
    }
    return g;
}

double log2_sum(const RVector& sinr)
{
    double total = 0.0;
    for (Eigen::Index k = 0; k < sinr.size(); ++k)
        total += std::log2(1.0 + sinr(k));
    return total;
}

qcqp::QcqpProblem precoder_problem(const FpState& state, const CVector& psi, double sigma_v2,
                                   const ChannelSet& channels, double bs_budget, double ris_budget,
                                   bool ris_constraint)
{
    const int M = channels.bs_antennas();
    const int K = channels.users();
    const CMatrix hbar = equivalent_channels(channels, psi);

    qcqp::QcqpProblem p;
    p.linear.resize(static_cast<Eigen::Index>(K) * M);
    CMatrix block = CMatrix::Zero(M, M);
    for (int k = 0; k < K; ++k) {
        // b_k = sqrt(1 + rho_k) varpi_k h_bar_k
        p.linear.segment(static_cast<Eigen::Index>(k) * M, M) =
            std::sqrt(1.0 + state.rho(k)) * state.varpi(k) * hbar.col(k);
        block.noalias() += std::norm(state.varpi(k)) * hbar.col(k) * hbar.col(k).adjoint();
    }
    const Eigen::Index D = p.linear.size();
    p.quadratic = CMatrix::Zero(D, D);
    for (int k = 0; k < K; ++k)
        p.quadratic.block(static_cast<Eigen::Index>(k) * M, static_cast<Eigen::Index>(k) * M, M, M) = block;

    p.constraints.push_back({CMatrix::Identity(D, D), bs_budget});
    if (ris_constraint) {
        const double residual_budget = ris_budget - psi.squaredNorm() * sigma_v2;
        if (!(residual_budget > 0.0))
            throw InfeasibleAmplificationError(
                "RIS noise floor exhausts the reflect-power budget");
        const CMatrix psi_g = psi.asDiagonal() * channels.bs_ris;
        const CMatrix xi_block = psi_g.adjoint() * psi_g;
        CMatrix xi = CMatrix::Zero(D, D);
        for (int k = 0; k < K; ++k)
            xi.block(static_cast<Eigen::Index>(k) * M, static_cast<Eigen::Index>(k) * M, M, M) = xi_block;
        p.constraints.push_back({std::move(xi), residual_budget});
    }
    return p;
}

// Omega = diag(omega.diagonal) + omega.factor * omega.factor^H, Pi = diag(pi_diag).
struct RisTerms {
    CVector upsilon;
    qcqp::DiagonalPlusLowRank omega;
    RVector pi_diag;
};

RisTerms ris_terms(const FpState& state, const CMatrix& w, const ChannelSet& channels,
                   double sigma_v2)
{
    const int N = channels.ris_elements();
    const int K = channels.users();
    const CMatrix gw = channels.bs_ris * w; // N x K, column j = G w_j

    RisTerms t;
    t.upsilon = CVector::Zero(N);
    RVector omega_diag = RVector::Zero(N);
    CMatrix low_rank(N, static_cast<Eigen::Index>(K) * K);
    for (int k = 0; k < K; ++k) {
        const CVector fconj = channels.ris_user[k].conjugate();
        const double weight = std::norm(state.varpi(k));
        const CVector interference = gw * (w.adjoint() * channels.bs_user[k]);
        t.upsilon += fconj.cwiseProduct(std::sqrt(1.0 + state.rho(k)) *
                                             std::conj(state.varpi(k)) * gw.col(k) -
                                         weight * interference);
        omega_diag += weight * sigma_v2 * channels.ris_user[k].cwiseAbs2();
        const double amp = std::sqrt(weight);
        for (int j = 0; j < K; ++j)
            low_rank.col(static_cast<Eigen::Index>(k) * K + j) = amp * fconj.cwiseProduct(gw.col(j));
    }
    t.omega.diagonal = std::move(omega_diag);
    t.omega.factor = std::move(low_rank);
    t.pi_diag = gw.cwiseAbs2().rowwise().sum();
    t.pi_diag.array() += sigma_v2;
    return t;
}

// Element-wise ascent of 2 Re{x^H u} - x^H Omega x over |x_n| = 1. Each
// coordinate step moves x_n to the phase of its unconstrained maximizer,
// which never lowers the objective. z = F^H x is kept current so one step
// costs O(r).
CVector unit_modulus_ascent(const RisTerms& t, CVector x, int max_sweeps = 50)
{
    const CMatrix& F = t.omega.factor;
    const RVector& d = t.omega.diagonal;
    CVector z = F.adjoint() * x;
    const RVector row_norm2 = F.rowwise().squaredNorm();
    auto objective = [&]() {
        return 2.0 * std::real(x.dot(t.upsilon)) - d.dot(x.cwiseAbs2()) - z.squaredNorm();
    };
    double value = objective();
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        for (Eigen::Index n = 0; n < x.size(); ++n) {
            // (Omega x)_n minus its diagonal contribution.
            const cdouble others = (F.row(n) * z).value() - row_norm2(n) * x(n);
            const cdouble target = t.upsilon(n) - others;
            const double mag = std::abs(target);
            if (mag == 0.0)
                continue;
            const cdouble next = target / mag;
            const cdouble delta = next - x(n);
            if (delta == cdouble(0.0, 0.0))
                continue;
            z += F.row(n).adjoint() * delta;
            x(n) = next;
        }
        const double updated = objective();
        const bool settled = updated - value <= 1e-13 * std::max(1.0, std::abs(updated));
        value = updated;
        if (settled)
            break;
    }
    return x;
}

struct Candidate {
    CMatrix w;
    CVector psi;
    double rate = -1.0;
    double initial_rate = 0.0;
    std::vector<TracePoint> trace;
    bool converged = false;
    int iterations = 0;
};

Candidate run_once(const ChannelSet& channels, double bs_budget, double ris_budget,
                   double sigma2, double sigma_v2, RisMode mode, const AlgoOptions& options,
                   Rng& rng)
{
    const int M = channels.bs_antennas();
    const int N = channels.ris_elements();
    const int K = channels.users();
    const double noise_v = mode == RisMode::Active ? sigma_v2 : 0.0;

    Candidate c;
    c.w = gen_rayleigh(M, K, 1.0, rng);
    c.w *= std::sqrt(bs_budget) / c.w.norm();

    std::uniform_real_distribution<double> phase(-kPi, kPi);
    c.psi = CVector::Zero(N);
    if (mode != RisMode::None) {
        for (int n = 0; n < N; ++n)
            c.psi(n) = std::polar(1.0, phase(rng));
        if (mode == RisMode::Active) {
            const double unit_power = ris_output_power(c.w, c.psi, noise_v, channels.bs_ris);
            c.psi *= std::sqrt(ris_budget / unit_power);
        }
    }

    qcqp::SolverOptions solver;
    solver.tol = options.inner_tol;

    LinkState links = evaluate_links(c.w, c.psi, noise_v, channels, sigma2);
    double rate = log2_sum(sinr_from(links));
    c.initial_rate = rate;
    FpState state = FpState::zeros(K);

    for (int it = 0; it < options.max_outer_iters; ++it) {
        // (rho, varpi) block. Its joint maximizer is rho = SINR; evaluating the
        // rho update at the varpi that is optimal for that rho keeps the
        // surrogate tight against the true rate.
        state.rho = sinr_from(links);
        state.varpi = varpi_from(state.rho, links);
        const RVector xi = xi_from(state, links);
        state.rho = options.rho_rule ? options.rho_rule(xi) : rho_from_xi(xi);
        state.varpi = varpi_from(state.rho, links);
        const double surrogate = surrogate_from(state, links);
        double current = surrogate;

        // w block
        {
            const auto problem = precoder_problem(state, c.psi, noise_v, channels, bs_budget,
                                                  ris_budget, mode == RisMode::Active);
            const auto sol = qcqp::solve(problem, solver);
            const CMatrix w_next = Eigen::Map<const CMatrix>(sol.point.data(), M, K);
            LinkState next = evaluate_links(w_next, c.psi, noise_v, channels, sigma2);
            const double value = surrogate_from(state, next);
            if (value >= current) {
                c.w = w_next;
                links = std::move(next);
                current = value;
            }
        }

        // psi block
        if (mode != RisMode::None) {
            RisTerms terms = ris_terms(state, c.w, channels, noise_v);
            CVector x_next;
            if (mode == RisMode::Active) {
                const auto sol = qcqp::solve_single_constraint(terms.upsilon, terms.omega,
                                                               terms.pi_diag, ris_budget,
                                                               options.inner_tol);
                x_next = sol.point;
            } else {
                x_next = unit_modulus_ascent(terms, c.psi.conjugate());
            }
            const CVector psi_next = x_next.conjugate();
            LinkState next = evaluate_links(c.w, psi_next, noise_v, channels, sigma2);
            const double value = surrogate_from(state, next);
            if (value >= current) {
                c.psi = psi_next;
                links = std::move(next);
                current = value;
            }
        }

        const double next_rate = log2_sum(sinr_from(links));
        c.trace.push_back({surrogate, next_rate});
        c.iterations = it + 1;
        const double change = std::abs(next_rate - rate);
        rate = next_rate;
        if (change <= options.rel_tol * std::max(std::abs(rate), 1e-300)) {
            c.converged = true;
            break;
        }
    }
    c.rate = rate;
    return c;
}

} // namespace

FpState FpState::zeros(int users)
{
    return {RVector::Zero(users), CVector::Zero(users)};
}

RVector fp_xi(const FpState& state, const Precoder& precoder, const RisSetting& ris,
              const ChannelSet& channels)
{
    const LinkState links =
        evaluate_links(precoder.vectors, ris.reflection(), ris.dynamic_noise_power, channels, 0.0);
    return xi_from(state, links);
}

RVector rho_from_xi(const RVector& xi)
{
    RVector rho(xi.size());
    for (Eigen::Index k = 0; k < xi.size(); ++k) {
        const double x = xi(k);
        rho(k) = 0.5 * (x * x + x * std::sqrt(x * x + 4.0));
    }
    return rho;
}

RVector update_rho(const FpState& state, const Precoder& precoder, const RisSetting& ris,
                   const ChannelSet& channels)
{
    return rho_from_xi(fp_xi(state, precoder, ris, channels));
}

CVector update_varpi(const FpState& state, const Precoder& precoder, const RisSetting& ris,
                     const ChannelSet& channels, const LinkNoise& noise)
{
    const LinkState links = evaluate_links(precoder.vectors, ris.reflection(),
                                           ris.dynamic_noise_power, channels,
                                           noise.user_noise_power);
    return varpi_from(state.rho, links);
}

double surrogate_objective(const Precoder& precoder, const RisSetting& ris, const FpState& state,
                           const ChannelSet& channels, const LinkNoise& noise)
{
    const LinkState links = evaluate_links(precoder.vectors, ris.reflection(),
                                           ris.dynamic_noise_power, channels,
                                           noise.user_noise_power);
    return surrogate_from(state, links);
}

qcqp::QcqpProblem build_precoder_qcqp(const FpState& state, const RisSetting& ris,
                                      const ChannelSet& channels, const LinkNoise& noise,
                                      double bs_budget, bool ris_constraint)
{
    require(bs_budget > 0.0, "BS budget must be positive");
    (void)noise;
    return precoder_problem(state, ris.reflection(), ris.dynamic_noise_power, channels, bs_budget,
                            ris.power_budget, ris_constraint);
}

qcqp::QcqpProblem build_ris_qcqp(const FpState& state, const Precoder& precoder,
                                 const ChannelSet& channels, const LinkNoise& noise,
                                 double sigma_v2, double ris_budget)
{
    (void)noise;
    require(precoder.vectors.rows() == channels.bs_antennas() &&
                precoder.vectors.cols() == channels.users(),
            "precoder shape must be M x K");
    require(state.rho.size() == channels.users() && state.varpi.size() == channels.users(),
            "FP state length must equal K");
    RisTerms t = ris_terms(state, precoder.vectors, channels, sigma_v2);
    qcqp::QcqpProblem p;
    p.linear = std::move(t.upsilon);
    p.quadratic = t.omega.dense();
    p.constraints.push_back({t.pi_diag.cast<cdouble>().asDiagonal().toDenseMatrix(), ris_budget});
    return p;
}

std::pair<RVector, RVector> decompose_psi(const CVector& psi)
{
    RVector amp(psi.size());
    RVector phase(psi.size());
    for (Eigen::Index n = 0; n < psi.size(); ++n) {
        amp(n) = std::abs(psi(n));
        phase(n) = std::arg(psi(n));
    }
    return {amp, phase};
}

Solution run(const ChannelSet& channels, double bs_budget, double ris_budget,
             const LinkNoise& noise, double sigma_v2, RisMode mode, const AlgoOptions& options,
             Rng& rng)
{
    channels.validate();
    require(bs_budget > 0.0, "BS budget must be positive");
    require(mode != RisMode::Active || ris_budget > 0.0, "RIS budget must be positive");
    require(noise.user_noise_power > 0.0, "user noise power must be positive");
    require(sigma_v2 >= 0.0, "RIS noise power must be non-negative");
    require(options.max_outer_iters >= 1 && options.rel_tol > 0.0 && options.inner_tol > 0.0,
            "invalid algorithm options");

    Candidate best;
    for (int r = 0; r < std::max(1, options.restarts); ++r) {
        Candidate c = run_once(channels, bs_budget, ris_budget, noise.user_noise_power, sigma_v2,
                               mode, options, rng);
        if (c.rate > best.rate)
            best = std::move(c);
    }
    // Switching the surface off is always feasible for an active RIS, and the
    // alternation can stall when C2 leaves the precoder no slack (tiny P_A).
    // Keep the surface-off solution when it is better.
    if (mode == RisMode::Active) {
        Candidate off = run_once(channels, bs_budget, ris_budget, noise.user_noise_power, sigma_v2,
                                 RisMode::None, options, rng);
        if (off.rate > best.rate)
            best = std::move(off);
    }

    Solution s;
    s.precoder = {best.w, bs_budget};
    const double noise_v = mode == RisMode::Active ? sigma_v2 : 0.0;
    auto [amp, phase] = decompose_psi(best.psi);
    if (mode == RisMode::Passive)
        amp.setOnes();
    if (mode == RisMode::None)
        phase.setZero();
    s.ris.amplification = std::move(amp);
    s.ris.phases = std::move(phase);
    s.ris.dynamic_noise_power = noise_v;
    s.ris.power_budget = mode == RisMode::Active ? ris_budget : 1.0;
    s.sum_rate_bps = sum_rate(s.precoder, s.ris, channels, noise);
    s.initial_sum_rate_bps = best.initial_rate;
    s.trace = std::move(best.trace);
    s.converged = best.converged;
    s.iterations = best.iterations;
    return s;
}

Solution optimize(const ChannelSet& channels, double bs_budget, double ris_budget,
                  const LinkNoise& noise, double sigma_v2, const AlgoOptions& options, Rng& rng)
{
    return run(channels, bs_budget, ris_budget, noise, sigma_v2, RisMode::Active, options, rng);
}

} // namespace activeris::fp
