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

#include "activeris/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "activeris/asymptotics.hpp"
#include "activeris/baselines.hpp"
#include "activeris/channel.hpp"
#include "activeris/fp_optimizer.hpp"
#include "activeris/oracles.hpp"
#include "activeris/qcqp.hpp"
#include "activeris/scenario.hpp"
#include "activeris/signal_model.hpp"
#include "activeris/units.hpp"

namespace activeris::validation {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Tracks the worst value of one quantity across instances.
struct Worst {
    double value = -kInf;
    int failures = 0; // instances that threw
    std::string first_error;

    void observe(double v)
    {
        // NaN counts as the worst possible outcome.
        value = std::isnan(v) ? kInf : std::max(value, v);
    }
    void error(const std::exception& e)
    {
        if (failures++ == 0)
            first_error = e.what();
    }
};

Check upper_check(const std::string& suite, const std::string& name, const Worst& w,
                  double limit, const std::string& what)
{
    Check c;
    c.suite = suite;
    c.name = name;
    c.measured = w.value;
    c.threshold = limit;
    c.passed = w.failures == 0 && w.value <= limit;
    c.detail = what;
    if (w.failures > 0)
        c.detail += "; " + std::to_string(w.failures) + " instance(s) raised: " + w.first_error;
    return c;
}

Check value_check(const std::string& suite, const std::string& name, double measured,
                  double target, double tol, const std::string& what)
{
    Check c;
    c.suite = suite;
    c.name = name;
    c.measured = measured;
    c.threshold = tol;
    c.passed = std::abs(measured - target) <= tol;
    c.detail = what;
    return c;
}

double rel_diff(double a, double b)
{
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

ChannelSet rayleigh_channels(int M, int N, int K, Rng& rng)
{
    ChannelSet ch;
    ch.bs_ris = gen_rayleigh(N, M, 1.0, rng);
    ch.bs_ris_variance = 1.0;
    for (int k = 0; k < K; ++k) {
        ch.bs_user.push_back(gen_rayleigh(M, 1, 1.0, rng).col(0));
        ch.ris_user.push_back(gen_rayleigh(N, 1, 1.0, rng).col(0));
        ch.bs_user_variance.push_back(1.0);
        ch.ris_user_variance.push_back(1.0);
        ch.user_positions.push_back({});
    }
    return ch;
}

CVector random_psi(int N, double max_amp, Rng& rng)
{
    std::uniform_real_distribution<double> amp(0.0, max_amp);
    std::uniform_real_distribution<double> phase(-kPi, kPi);
    CVector psi(N);
    for (int n = 0; n < N; ++n)
        psi(n) = std::polar(amp(rng), phase(rng));
    return psi;
}

fp::FpState random_state(int K, Rng& rng)
{
    std::uniform_real_distribution<double> u(0.0, 5.0);
    fp::FpState s = fp::FpState::zeros(K);
    const CMatrix v = gen_rayleigh(K, 1, 1.0, rng);
    for (int k = 0; k < K; ++k) {
        s.rho(k) = u(rng);
        s.varpi(k) = v(k, 0);
    }
    return s;
}

// maximize 2 Re b^H x - x^H A x over `constraints` random PD ellipsoids.
qcqp::QcqpProblem random_qcqp(int D, int constraints, Rng& rng)
{
    std::uniform_int_distribution<int> rank_dist(1, D);
    std::uniform_real_distribution<double> frac(0.05, 1.0);
    qcqp::QcqpProblem p;
    const CMatrix X = gen_rayleigh(D, rank_dist(rng), 1.0, rng);
    p.quadratic = X * X.adjoint() / static_cast<double>(D);
    p.linear = gen_rayleigh(D, 1, 1.0, rng).col(0);
    for (int i = 0; i < constraints; ++i) {
        const CMatrix Y = gen_rayleigh(D, D, 1.0, rng);
        CMatrix Q = Y * Y.adjoint() / static_cast<double>(D);
        Q += 0.1 * CMatrix::Identity(D, D);
        p.constraints.push_back({Q, p.linear.squaredNorm() * frac(rng)});
    }
    return p;
}

double max_violation(const qcqp::QcqpProblem& p, const CVector& x)
{
    double v = 0.0;
    for (const auto& c : p.constraints)
        v = std::max(v, (x.dot(c.matrix * x).real() - c.budget) / c.budget);
    return v;
}

RVector flipped_rho_rule(const RVector& xi)
{
    RVector rho(xi.size());
    for (Eigen::Index k = 0; k < xi.size(); ++k) {
        const double x = xi(k);
        rho(k) = 0.5 * (x * x - x * std::sqrt(x * x + 4.0));
    }
    return rho;
}

} // namespace

std::string_view to_string(Suite suite)
{
    switch (suite) {
    case Suite::All:
        return "all";
    case Suite::Identities:
        return "identities";
    case Suite::Optimizer:
        return "optimizer";
    case Suite::Qcqp:
        return "qcqp";
    case Suite::Asymptotics:
        return "asymptotics";
    }
    return "unknown";
}

Suite parse_suite(std::string_view text)
{
    for (Suite s : {Suite::All, Suite::Identities, Suite::Optimizer, Suite::Qcqp,
                    Suite::Asymptotics})
        if (text == to_string(s))
            return s;
    throw ConfigError("unknown suite '" + std::string(text) + "'");
}

std::vector<Check> identities_suite(const Options& options)
{
    const std::string suite = "identities";
    constexpr int M = 4, N = 64, K = 4;
    Rng rng = make_stream(options.seed, {0x6964ULL});
    std::uniform_real_distribution<double> noise_dist(0.0, 1.0);
    Worst xi_err, pi_err;
    for (int i = 0; i < options.identity_instances; ++i) {
        try {
            const ChannelSet ch = rayleigh_channels(M, N, K, rng);
            const CVector psi = random_psi(N, 2.0, rng);
            const CMatrix w = gen_rayleigh(M, K, 1.0, rng);
            const double sigma_v2 = noise_dist(rng);
            const fp::FpState state = random_state(K, rng);

            // w^H Xi w against sum_k ||Psi G w_k||^2.
            const double p_a = psi.squaredNorm() * sigma_v2 + 1.0;
            const RisSetting ris = RisSetting::from_reflection(psi, sigma_v2, p_a);
            const auto p2 = fp::build_precoder_qcqp(state, ris, ch, LinkNoise{1.0}, 1.0);
            const Eigen::Map<const CVector> w_stacked(w.data(), w.size());
            const double xi_form = w_stacked.dot(p2.constraints.at(1).matrix * w_stacked).real();
            double direct = 0.0;
            for (int k = 0; k < K; ++k)
                direct += (psi.cwiseProduct(ch.bs_ris * w.col(k))).squaredNorm();
            xi_err.observe(rel_diff(xi_form, direct));

            // psi^H Pi psi against the radiated power.
            const auto p3 = fp::build_ris_qcqp(state, Precoder{w, 1.0}, ch, LinkNoise{1.0},
                                               sigma_v2, 1.0);
            const CVector x = psi.conjugate();
            const double pi_form = x.dot(p3.constraints.at(0).matrix * x).real();
            pi_err.observe(rel_diff(pi_form, ris_output_power(w, psi, sigma_v2, ch.bs_ris)));
        } catch (const std::exception& e) {
            xi_err.error(e);
            pi_err.error(e);
        }
    }

    std::vector<Check> out;
    out.push_back(upper_check(suite, "reflect_power_quadratic_form", xi_err, 1e-10,
                              "w^H Xi w vs sum_k ||Psi G w_k||^2, relative"));
    out.push_back(upper_check(suite, "ris_budget_quadratic_form", pi_err, 1e-10,
                              "psi^H Pi psi vs radiated RIS power, relative"));

    // Element model noise is affine in the gain: exact on binary-representable inputs.
    Worst affine;
    const double sv = 0.25, ss = 0.125;
    for (int g = 0; g <= 64; ++g) {
        const double gain = g * 0.5;
        const ElementPower p = element_output_power(1.0, gain, sv, ss);
        affine.observe(std::abs(p.noise - (gain * sv + ss)));
        if (g > 0) {
            const ElementPower prev = element_output_power(1.0, gain - 0.5, sv, ss);
            affine.observe(std::abs((p.noise - prev.noise) - 0.5 * sv));
        }
    }
    out.push_back(upper_check(suite, "element_noise_affine_in_gain", affine, 0.0,
                              "noise = G sigma_v^2 + sigma_s^2, slope sigma_v^2, exact"));
    return out;
}

std::vector<Check> optimizer_suite(const Options& options)
{
    const std::string suite = "optimizer";
    Rng rng = make_stream(options.seed, {0x6f7074ULL});
    const std::vector<double> grid = default_power_grid_dbw();
    std::uniform_int_distribution<std::size_t> pick(0, grid.size() - 1);

    fp::AlgoOptions algo;
    if (options.inject_rho_sign_error)
        algo.rho_rule = flipped_rho_rule;

    Worst drop, c1, c2, gap;
    for (int i = 0; i < options.optimizer_instances; ++i) {
        try {
            ScenarioSpec spec = ScenarioSpec::builtin(1 + i % 2);
            spec.dims.ris_elements = 64;
            spec.seed = options.seed + static_cast<std::uint64_t>(i);
            const ChannelSet ch = scenario_channels(spec, i);
            const double total = units::dbw_to_watt(grid[pick(rng)]);
            const BudgetSplit budget =
                split_power_budget(total, BaselineKind::ActiveRis, spec.split_fraction);
            algo.seed = rng();
            const LinkNoise noise{spec.noise_power};
            const fp::Solution s = optimize_active(ch, budget.bs, budget.ris, noise,
                                                   spec.ris_noise_power, algo);

            double previous = s.initial_sum_rate_bps;
            for (const auto& t : s.trace) {
                drop.observe(previous - t.sum_rate_bps);
                gap.observe(std::abs(t.surrogate_nats - std::log(2.0) * previous));
                previous = t.sum_rate_bps;
            }
            c1.observe((s.precoder.transmit_power() - budget.bs) / budget.bs);
            c2.observe((ris_output_power(s.precoder, s.ris, ch.bs_ris) - budget.ris) / budget.ris);
        } catch (const std::exception& e) {
            for (Worst* w : {&drop, &c1, &c2, &gap})
                w->error(e);
        }
    }

    std::vector<Check> out;
    out.push_back(upper_check(suite, "sum_rate_trace_non_decreasing", drop, 1e-9,
                              "largest per-iteration drop of the true sum-rate [bps/Hz]"));
    out.push_back(upper_check(suite, "bs_budget_satisfied", c1, 1e-6,
                              "relative excess of transmit power over P_BS"));
    out.push_back(upper_check(suite, "ris_budget_satisfied", c2, 1e-6,
                              "relative excess of RIS output power over P_A"));
    out.push_back(upper_check(suite, "fp_surrogate_tight", gap, 1e-9,
                              "|surrogate after rho/varpi update - sum ln(1+SINR)| [nats]"));

    // Tiny instances against exhaustive search.
    Worst shortfall;
    std::uniform_real_distribution<double> s2(0.05, 1.0), sv2(0.01, 0.5);
    for (int i = 0; i < options.tiny_instances; ++i) {
        try {
            const int n = i < options.tiny_instances / 2 ? 1 : 2;
            const ChannelSet ch = rayleigh_channels(1, n, 1, rng);
            const double sigma2 = s2(rng);
            const double sigma_v2 = sv2(rng);
            algo.seed = rng();
            const fp::Solution s = optimize_active(ch, 1.0, 1.0, LinkNoise{sigma2}, sigma_v2, algo);
            const oracle::TinyOptimum best =
                oracle::tiny_active_search(ch, 1.0, 1.0, sigma2, sigma_v2);
            shortfall.observe(1.0 - s.sum_rate_bps / best.sum_rate_bps);
        } catch (const std::exception& e) {
            shortfall.error(e);
        }
    }
    out.push_back(upper_check(suite, "tiny_instances_near_grid_optimum", shortfall, 0.02,
                              "largest relative shortfall against exhaustive grid search"));
    return out;
}

std::vector<Check> qcqp_suite(const Options& options)
{
    const std::string suite = "qcqp";
    Rng rng = make_stream(options.seed, {0x7163ULL});
    std::uniform_int_distribution<int> dim8(1, 8), dim4(1, 4);

    Worst obj_err, kkt, feas1, admm_err;
    for (int i = 0; i < options.qcqp_instances; ++i) {
        try {
            const auto p = random_qcqp(dim8(rng), 1, rng);
            const auto ref = oracle::dual_bisection(p);
            const auto sol = qcqp::solve_multi_constraint(p);
            obj_err.observe(rel_diff(sol.objective, ref.objective));
            kkt.observe(sol.kkt_residual);
            feas1.observe(max_violation(p, sol.point));
            qcqp::SolverOptions admm;
            admm.method = qcqp::Method::Admm;
            admm.tol = 1e-10;
            admm.max_iter = 20000;
            const auto a = qcqp::solve(p, admm);
            admm_err.observe(rel_diff(a.objective, ref.objective));
        } catch (const std::exception& e) {
            for (Worst* w : {&obj_err, &kkt, &feas1, &admm_err})
                w->error(e);
        }
    }

    Worst below_grid, above_dual, feas2;
    for (int i = 0; i < options.qcqp_instances; ++i) {
        try {
            const auto p = random_qcqp(dim4(rng), 2, rng);
            const auto bounds = oracle::multiplier_grid(p);
            const auto sol = qcqp::solve_multi_constraint(p);
            below_grid.observe(bounds.lower - sol.objective);
            above_dual.observe((sol.objective - bounds.upper) / std::max(1.0, bounds.upper));
            feas2.observe(max_violation(p, sol.point));
        } catch (const std::exception& e) {
            for (Worst* w : {&below_grid, &above_dual, &feas2})
                w->error(e);
        }
    }

    std::vector<Check> out;
    out.push_back(upper_check(suite, "single_constraint_matches_oracle", obj_err, 1e-6,
                              "relative objective gap to the dual-bisection oracle"));
    out.push_back(upper_check(suite, "single_constraint_kkt", kkt, 1e-6, "KKT residual"));
    out.push_back(upper_check(suite, "single_constraint_feasible", feas1, 1e-6,
                              "relative constraint violation"));
    out.push_back(upper_check(suite, "admm_matches_oracle", admm_err, 1e-4,
                              "relative objective gap of the ADMM back-end"));
    out.push_back(upper_check(suite, "two_constraint_not_below_grid", below_grid, 1e-3,
                              "grid-search objective minus solver objective"));
    out.push_back(upper_check(suite, "two_constraint_not_above_dual", above_dual, 1e-6,
                              "solver objective above the best dual bound, relative"));
    out.push_back(upper_check(suite, "two_constraint_feasible", feas2, 1e-6,
                              "relative constraint violation"));
    return out;
}

std::vector<Check> asymptotics_suite(const Options& options)
{
    using namespace asymptotics;
    const std::string suite = "asymptotics";
    const AsymptoticsStudy study = AsymptoticsStudy::reference();
    const ComparisonConfigs cfg = equal_total_power(study.base, study.total_power,
                                                    study.split_fraction);
    std::vector<Check> out;

    const double p_db = units::linear_to_db(passive_asymptotic_snr(cfg.passive));
    const double a_db = units::linear_to_db(active_asymptotic_snr(cfg.active));
    out.push_back(value_check(suite, "passive_snr_n256_db", p_db, 9.0, 0.1, "reference 9.0 dB"));
    out.push_back(value_check(suite, "active_snr_n256_db", a_db, 49.0, 0.1, "reference 49.0 dB"));
    const double ratio = active_asymptotic_snr(cfg.active) / passive_asymptotic_snr(cfg.passive);
    out.push_back(value_check(suite, "active_passive_ratio", ratio / 1e4, 1.0, 0.05,
                              "ratio / 1e4, within 5%"));

    const double n_be = breakeven_elements(cfg.active, cfg.passive.bs_power);
    out.push_back(value_check(suite, "breakeven_elements", n_be / 2.5e6, 1.0, 0.01,
                              "break-even N / 2.5e6, within 1%"));
    AsymptoticConfig at_be_p = cfg.passive, at_be_a = cfg.active;
    at_be_p.n_elements = static_cast<int>(std::lround(n_be));
    at_be_a.n_elements = at_be_p.n_elements;
    // The identity holds at the real-valued N; evaluate with the exact value.
    const double scale_p = (n_be / at_be_p.n_elements) * (n_be / at_be_p.n_elements);
    const double scale_a = n_be / at_be_a.n_elements;
    out.push_back(value_check(suite, "breakeven_consistency",
                              rel_diff(passive_asymptotic_snr(at_be_p) * scale_p,
                                       active_asymptotic_snr(at_be_a) * scale_a),
                              0.0, 1e-6, "passive vs active SNR at the break-even N, relative"));

    // Doubling N: +6.02 dB passive, +3.01 dB active.
    Worst step_err;
    for (int n : {64, 128, 256, 512, 1024, 2048}) {
        AsymptoticConfig p1 = cfg.passive, p2 = cfg.passive, a1 = cfg.active, a2 = cfg.active;
        p1.n_elements = a1.n_elements = n;
        p2.n_elements = a2.n_elements = 2 * n;
        step_err.observe(std::abs(units::linear_to_db(passive_asymptotic_snr(p2) /
                                                      passive_asymptotic_snr(p1)) -
                                  20.0 * std::log10(2.0)));
        step_err.observe(std::abs(units::linear_to_db(active_asymptotic_snr(a2) /
                                                      active_asymptotic_snr(a1)) -
                                  10.0 * std::log10(2.0)));
    }
    out.push_back(upper_check(suite, "doubling_steps", step_err, 1e-9,
                              "deviation from +6.02 / +3.01 dB per doubling [dB]"));

    // Active SNR never exceeds either single-sided limit.
    Worst bound;
    Rng rng = make_stream(options.seed, {0x6173ULL});
    std::uniform_real_distribution<double> lg(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        AsymptoticConfig c = cfg.active;
        c.bs_power *= std::pow(10.0, lg(rng));
        c.ris_power *= std::pow(10.0, lg(rng));
        c.sigma2 *= std::pow(10.0, lg(rng));
        c.sigma_v2 *= std::pow(10.0, lg(rng));
        const double s = active_asymptotic_snr(c);
        bound.observe(s / std::min(active_snr_limit_bs(c), active_snr_limit_ris(c)) - 1.0);
    }
    out.push_back(upper_check(suite, "active_below_limits", bound, 1e-12,
                              "active SNR / min(limits) - 1"));

    // Monte Carlo at N = 4096.
    AsymptoticConfig mp = cfg.passive, ma = cfg.active;
    mp.n_elements = ma.n_elements = 4096;
    Rng rp = make_stream(options.seed, {0x6d63ULL, 0});
    Rng ra = make_stream(options.seed, {0x6d63ULL, 1});
    const double mc_p = monte_carlo_su_siso_snr(RisKind::Passive, mp, options.monte_carlo_trials, rp);
    const double mc_a = monte_carlo_su_siso_snr(RisKind::Active, ma, options.monte_carlo_trials, ra);
    out.push_back(value_check(suite, "monte_carlo_passive_n4096_db",
                              units::linear_to_db(mc_p / passive_asymptotic_snr(mp)), 0.0, 1.0,
                              "Monte Carlo minus analytic [dB]"));
    out.push_back(value_check(suite, "monte_carlo_active_n4096_db",
                              units::linear_to_db(mc_a / active_asymptotic_snr(ma)), 0.0, 1.0,
                              "Monte Carlo minus analytic [dB]"));
    return out;
}

bool Report::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string Report::to_json() const
{
    nlohmann::json j;
    j["passed"] = passed();
    j["suites"] = nlohmann::json::object();
    for (const auto& [name, seconds] : suite_seconds)
        j["suites"][name] = seconds;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json item{{"suite", c.suite},   {"name", c.name},
                            {"passed", c.passed}, {"threshold", c.threshold},
                            {"detail", c.detail}};
        // JSON has no infinity.
        if (std::isfinite(c.measured))
            item["measured"] = c.measured;
        else
            item["measured"] = nullptr;
        j["checks"].push_back(std::move(item));
    }
    return j.dump(2);
}

Report run(Suite suite, const Options& options)
{
    Report report;
    auto timed = [&](Suite s, auto&& fn) {
        if (suite != Suite::All && suite != s)
            return;
        const auto t0 = std::chrono::steady_clock::now();
        auto checks = fn(options);
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        report.suite_seconds.emplace_back(std::string(to_string(s)), dt.count());
        for (auto& c : checks)
            report.checks.push_back(std::move(c));
    };
    timed(Suite::Identities, identities_suite);
    timed(Suite::Optimizer, optimizer_suite);
    timed(Suite::Qcqp, qcqp_suite);
    timed(Suite::Asymptotics, asymptotics_suite);
    return report;
}

} // namespace activeris::validation
