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

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "activeris/channel.hpp"
#include "activeris/qcqp.hpp"
#include "activeris/signal_model.hpp"

namespace activeris::fp {

// Auxiliary variables of the fractional-programming reformulation.
struct FpState {
    RVector rho;   // per-user, >= 0
    CVector varpi; // per-user, complex

    static FpState zeros(int users);
};

struct AlgoOptions {
    int max_outer_iters = 500;
    // Stop once the true sum-rate changes by less than this, relatively.
    double rel_tol = 1e-4;
    double inner_tol = 1e-9;
    std::uint64_t seed = 0;
    // Independent random starts; the best run is kept.
    int restarts = 1;
    // Replaces the closed-form rho update when set. Only the validation
    // harness uses this, to inject faults.
    std::function<RVector(const RVector& xi)> rho_rule;
};

struct TracePoint {
    double surrogate_nats = 0.0; // R' right after the rho/varpi block
    double sum_rate_bps = 0.0;   // true sum-rate after the full iteration
};

struct Solution {
    Precoder precoder;
    RisSetting ris;
    double sum_rate_bps = 0.0;
    double initial_sum_rate_bps = 0.0; // at the random starting point
    std::vector<TracePoint> trace;
    bool converged = false;
    int iterations = 0;
};

// Which reflecting surface the alternation optimizes over.
enum class RisMode {
    Active,  // psi unconstrained in modulus, reflect-power budget C2
    Passive, // |psi_n| = 1, no amplifier noise, no C2
    None,    // psi fixed to zero
};

// xi_k = Re{varpi_k^* h_bar_k^H w_k}
RVector fp_xi(const FpState& state, const Precoder& precoder, const RisSetting& ris,
              const ChannelSet& channels);

// rho_k = (xi_k^2 + xi_k sqrt(xi_k^2 + 4)) / 2
RVector rho_from_xi(const RVector& xi);

RVector update_rho(const FpState& state, const Precoder& precoder, const RisSetting& ris,
                   const ChannelSet& channels);

// varpi_k = sqrt(1 + rho_k) h_bar_k^H w_k / (sum_j |h_bar_k^H w_j|^2 + ||f_k^H Psi||^2 sigma_v^2 + sigma^2)
CVector update_varpi(const FpState& state, const Precoder& precoder, const RisSetting& ris,
                     const ChannelSet& channels, const LinkNoise& noise);

// Sum_k ln(1 + rho_k) - rho_k + g(w, Psi, rho_k, varpi_k), in nats.
double surrogate_objective(const Precoder& precoder, const RisSetting& ris, const FpState& state,
                           const ChannelSet& channels, const LinkNoise& noise);

/// Precoder subproblem over the stacked vector w = [w_1; ...; w_K].
///
/// Constraint 0 is the BS budget (I, P_BS). Unless `ris_constraint` is false,
/// constraint 1 is the reflect budget (I_K kron G^H Psi^H Psi G, P_A - ||Psi||^2 sigma_v^2);
/// `ris.power_budget` supplies P_A. Throws InfeasibleAmplificationError when
/// the RIS noise floor alone reaches P_A.
qcqp::QcqpProblem build_precoder_qcqp(const FpState& state, const RisSetting& ris,
                                      const ChannelSet& channels, const LinkNoise& noise,
                                      double bs_budget, bool ris_constraint = true);

/// RIS subproblem. The variable is x = conj(psi), so that
/// h_bar_k^H w_j = h_k^H w_j + x^H diag(f_k^H) G w_j. The single constraint is
/// x^H Pi x <= ris_budget with Pi = sum_k diag(G w_k) diag(G w_k)^H + sigma_v^2 I.
qcqp::QcqpProblem build_ris_qcqp(const FpState& state, const Precoder& precoder,
                                 const ChannelSet& channels, const LinkNoise& noise,
                                 double sigma_v2, double ris_budget);

// psi_n -> (|psi_n|, arg psi_n)
std::pair<RVector, RVector> decompose_psi(const CVector& psi);

// Runs the alternating (rho, varpi, w, psi) optimization for `mode`.
Solution run(const ChannelSet& channels, double bs_budget, double ris_budget,
             const LinkNoise& noise, double sigma_v2, RisMode mode, const AlgoOptions& options,
             Rng& rng);

// Active-RIS joint precoding and reflect beamforming.
Solution optimize(const ChannelSet& channels, double bs_budget, double ris_budget,
                  const LinkNoise& noise, double sigma_v2, const AlgoOptions& options, Rng& rng);

} // namespace activeris::fp
