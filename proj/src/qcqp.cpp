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

#include "activeris/qcqp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>

namespace activeris::qcqp {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kPsdTol = 1e-10;
constexpr double kBracketWidth = 1e-12;
constexpr int kMaxBisection = 300;
constexpr int kMaxBracketSteps = 2000;

double hermitian_defect(const CMatrix& m)
{
    const double scale = std::max(m.norm(), std::numeric_limits<double>::min());
    return (m - m.adjoint()).norm() / scale;
}

void require_hermitian(const CMatrix& m, const char* what)
{
    if (m.rows() != m.cols())
        throw DomainError(std::string(what) + " must be square");
    if (m.size() > 0 && m.norm() > 0.0 && hermitian_defect(m) > kHermitianTol)
        throw DomainError(std::string(what) + " must be Hermitian");
}

void require_psd(const CMatrix& m, const char* what)
{
    if (m.size() == 0 || m.norm() == 0.0)
        return;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
    const RVector& ev = es.eigenvalues();
    const double scale = ev.cwiseAbs().maxCoeff();
    if (ev.minCoeff() < -kPsdTol * scale)
        throw DomainError(std::string(what) + " must be positive semidefinite");
}

struct Bisection {
    double multiplier = 0.0;
    int evaluations = 0;
    bool converged = true;
};

// Finds the smallest l >= 0 with constraint(l) <= budget, where constraint is
// non-increasing in l. Returns the feasible end of the final bracket. The
// initial bracket is found by doubling or halving from `guess`.
Bisection bisect_multiplier(const std::function<double(double)>& constraint, double budget,
                            double guess, double tol)
{
    Bisection out;
    auto feasible = [&](double l, double& value) {
        value = constraint(l);
        ++out.evaluations;
        return value <= budget;
    };

    double value = 0.0;
    if (feasible(0.0, value))
        return out;

    if (!(guess > 0.0) || !std::isfinite(guess))
        guess = 1.0;

    double lo = 0.0;
    double hi = guess;
    double hi_value = 0.0;
    if (feasible(hi, hi_value)) {
        int steps = 0;
        double probe_value = 0.0;
        while (steps++ < kMaxBracketSteps && hi > std::numeric_limits<double>::min()) {
            const double probe = 0.5 * hi;
            if (!feasible(probe, probe_value)) {
                lo = probe;
                break;
            }
            hi = probe;
            hi_value = probe_value;
        }
    } else {
        int steps = 0;
        lo = hi;
        while (true) {
            if (++steps > kMaxBracketSteps || !std::isfinite(hi))
                throw RegularizationError("constraint cannot be met for any finite multiplier");
            hi *= 2.0;
            if (feasible(hi, hi_value))
                break;
            lo = hi;
        }
    }

    for (int it = 0; it < kMaxBisection; ++it) {
        if (budget - hi_value <= tol * budget || hi - lo <= kBracketWidth * hi)
            break;
        const double mid = 0.5 * (lo + hi);
        double mid_value = 0.0;
        if (feasible(mid, mid_value)) {
            hi = mid;
            hi_value = mid_value;
        } else {
            lo = mid;
        }
        if (it + 1 == kMaxBisection)
            out.converged = false;
    }
    out.multiplier = hi;
    return out;
}

// Whitened form of a single-constraint problem with Q positive definite:
// with x = T y and T^H Q T = I the constraint is ||y||^2 <= budget and the
// objective becomes 2 Re{c0^H y} - y^H M y, M = T^H A T = U diag(d) U^H.
struct Whitened {
    bool diagonal = false;
    RVector scale;       // T = diag(scale) when diagonal
    Eigen::LLT<CMatrix> llt; // Q = L L^H, T = L^{-H} otherwise
    RVector eigenvalues;
    CMatrix eigenvectors;
    CVector coeffs; // U^H c0
};

bool is_diagonal(const CMatrix& m)
{
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (i != j && m(i, j) != cdouble(0.0, 0.0))
                return false;
    return true;
}

std::optional<Whitened> whiten(const CVector& b, const CMatrix& A, const CMatrix& Q)
{
    Whitened w;
    CMatrix M;
    CVector c0;
    const Eigen::Index n = b.size();
    if (is_diagonal(Q)) {
        RVector q = Q.diagonal().real();
        const double qmax = q.maxCoeff();
        if (!(q.minCoeff() > 1e-14 * qmax))
            return std::nullopt;
        w.diagonal = true;
        w.scale = q.cwiseSqrt().cwiseInverse();
        M = w.scale.asDiagonal() * A * w.scale.asDiagonal();
        c0 = w.scale.cast<cdouble>().cwiseProduct(b);
    } else {
        w.llt.compute(Q);
        if (w.llt.info() != Eigen::Success)
            return std::nullopt;
        const RVector diag = w.llt.matrixLLT().diagonal().real();
        if (!(diag.minCoeff() > 1e-7 * diag.maxCoeff()))
            return std::nullopt;
        const auto L = w.llt.matrixL();
        M = L.solve(A);
        M = L.solve(CMatrix(M.adjoint())).adjoint();
        c0 = L.solve(b);
    }
    M = 0.5 * (M + M.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(M);
    if (es.info() != Eigen::Success)
        throw DomainError("eigendecomposition failed");
    w.eigenvalues = es.eigenvalues();
    w.eigenvectors = es.eigenvectors();
    const double scale = std::max(w.eigenvalues.cwiseAbs().maxCoeff(), 0.0);
    if (n > 0 && w.eigenvalues.minCoeff() < -kPsdTol * scale)
        throw DomainError("quadratic term must be positive semidefinite");
    w.eigenvalues = w.eigenvalues.cwiseMax(0.0);
    w.coeffs = w.eigenvectors.adjoint() * c0;
    return w;
}

CVector unwhiten(const Whitened& w, const CVector& y)
{
    if (w.diagonal)
        return w.scale.cast<cdouble>().cwiseProduct(y);
    return w.llt.matrixU().solve(y);
}

QcqpSolution finish(const CVector& b, const CMatrix& A, const CMatrix& Q, double budget,
                    CVector x, double multiplier, int iterations, bool converged)
{
    QcqpProblem p{b, A, {{Q, budget}}};
    QcqpSolution s;
    s.point = std::move(x);
    s.objective = p.objective(s.point);
    s.dual_values = {multiplier};
    s.kkt_residual = kkt_residual(p, s.point, s.dual_values);
    s.iterations = iterations;
    s.converged = converged;
    return s;
}

QcqpSolution solve_whitened(const CVector& b, const CMatrix& A, const CMatrix& Q, double budget,
                            const Whitened& w, double tol)
{
    const RVector& d = w.eigenvalues;
    const CVector& c = w.coeffs;
    const double dmax = d.size() ? d.maxCoeff() : 0.0;
    const double cnorm = c.norm();
    const double d_zero = 1e-13 * std::max(dmax, std::numeric_limits<double>::min());
    const double c_zero = 1e-13 * cnorm;

    auto y_norm2 = [&](double l) {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < d.size(); ++i) {
            const double denom = d(i) + l;
            const double ci = std::abs(c(i));
            if (denom <= d_zero) {
                if (ci > c_zero)
                    return std::numeric_limits<double>::infinity();
                continue;
            }
            acc += (ci / denom) * (ci / denom);
        }
        return acc;
    };

    // ||y(l)|| <= ||c|| / l, so sqrt(budget)/||c|| bounds the multiplier scale.
    const double guess = cnorm / std::sqrt(budget);
    const Bisection bis = bisect_multiplier(y_norm2, budget, guess, tol);
    const double l = bis.multiplier;

    CVector z(d.size());
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        const double denom = d(i) + l;
        z(i) = denom <= d_zero ? cdouble(0.0, 0.0) : c(i) / denom;
    }
    CVector x = unwhiten(w, w.eigenvectors * z);
    return finish(b, A, Q, budget, std::move(x), l, bis.evaluations, bis.converged);
}

QcqpSolution solve_general(const CVector& b, const CMatrix& A, const CMatrix& Q, double budget,
                           double tol)
{
    require_psd(A, "quadratic term");
    require_psd(Q, "constraint matrix");
    const Eigen::Index n = b.size();
    const double trace_a = A.trace().real();
    const double trace_q = Q.trace().real();

    auto solve_at = [&](double l) {
        const double ridge = 1e-12 * std::max((trace_a + l * trace_q) / double(n),
                                              std::numeric_limits<double>::min());
        CMatrix K = A + l * Q;
        K.diagonal().array() += ridge;
        Eigen::LDLT<CMatrix> ldlt(K);
        CVector x = ldlt.solve(b);
        // A genuine solution has a negligible residual; a huge one means b has
        // a component in the common null space of A and Q.
        const double resid = (A * x + l * (Q * x) - b).norm();
        if (!x.allFinite() || resid > 1e-6 * std::max(b.norm(), std::numeric_limits<double>::min()))
            return std::optional<CVector>{};
        return std::optional<CVector>{std::move(x)};
    };

    auto constraint = [&](double l) {
        auto x = solve_at(l);
        if (!x)
            return std::numeric_limits<double>::infinity();
        return std::real(x->dot(Q * *x));
    };

    const double guess = std::max(trace_a, std::numeric_limits<double>::min()) /
                         std::max(trace_q, std::numeric_limits<double>::min());
    const Bisection bis = bisect_multiplier(constraint, budget, guess, tol);
    auto x = solve_at(bis.multiplier);
    if (!x)
        throw RegularizationError("A + lambda Q is singular and the problem is unbounded");
    return finish(b, A, Q, budget, std::move(*x), bis.multiplier, bis.evaluations, bis.converged);
}

// Shrinks x onto the feasible set. Constraints are homogeneous, so scaling by
// t <= 1 only lowers every constraint value.
void scale_to_feasible(const QcqpProblem& problem, CVector& x)
{
    double t = 1.0;
    for (const auto& c : problem.constraints) {
        const double v = std::real(x.dot(c.matrix * x));
        if (v > c.budget)
            t = std::min(t, std::sqrt(c.budget / v));
    }
    if (t < 1.0)
        x *= t;
}

QcqpSolution assemble(const QcqpProblem& problem, CVector x, std::vector<double> duals,
                      int iterations, bool converged)
{
    scale_to_feasible(problem, x);
    QcqpSolution s;
    s.point = std::move(x);
    s.objective = problem.objective(s.point);
    s.dual_values = std::move(duals);
    s.kkt_residual = kkt_residual(problem, s.point, s.dual_values);
    s.iterations = iterations;
    s.converged = converged;
    return s;
}

QcqpSolution solve_two(const QcqpProblem& problem, double tol)
{
    const auto& b = problem.linear;
    const auto& A = problem.quadratic;
    const auto& c1 = problem.constraints[0];
    const auto& c2 = problem.constraints[1];

    int iterations = 0;
    bool converged = true;
    QcqpSolution inner;
    auto constraint = [&](double l2) {
        inner = solve_single_constraint(b, A + l2 * c2.matrix, c1.matrix, c1.budget, tol);
        iterations += inner.iterations;
        converged = converged && inner.converged;
        return std::real(inner.point.dot(c2.matrix * inner.point));
    };

    const double scale_a = std::max(A.norm(), b.squaredNorm() / c1.budget);
    const double guess = scale_a / std::max(c2.matrix.norm(), std::numeric_limits<double>::min());
    const Bisection outer = bisect_multiplier(constraint, c2.budget, guess, tol);
    converged = converged && outer.converged;
    constraint(outer.multiplier);
    return assemble(problem, inner.point, {inner.dual_values[0], outer.multiplier}, iterations,
                    converged);
}

QcqpSolution solve_cyclic(const QcqpProblem& problem, double tol, int max_iter)
{
    const std::size_t m = problem.constraints.size();
    std::vector<double> duals(m, 0.0);
    CVector x = CVector::Zero(problem.dimension());
    int iterations = 0;
    bool converged = false;
    for (int sweep = 0; sweep < max_iter && !converged; ++sweep) {
        double change = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            CMatrix K = problem.quadratic;
            for (std::size_t j = 0; j < m; ++j)
                if (j != i)
                    K += duals[j] * problem.constraints[j].matrix;
            const auto& ci = problem.constraints[i];
            QcqpSolution s = solve_single_constraint(problem.linear, K, ci.matrix, ci.budget, tol);
            iterations += s.iterations;
            change = std::max(change, std::abs(s.dual_values[0] - duals[i]) /
                                          std::max(1.0, std::abs(duals[i])));
            duals[i] = s.dual_values[0];
            x = std::move(s.point);
        }
        converged = change <= 1e-10;
    }
    return assemble(problem, std::move(x), std::move(duals), iterations, converged);
}

} // namespace

double QcqpProblem::objective(const CVector& x) const
{
    return 2.0 * std::real(linear.dot(x)) - std::real(x.dot(quadratic * x));
}

void QcqpProblem::validate() const
{
    const Eigen::Index n = linear.size();
    if (n == 0)
        throw DomainError("QCQP dimension must be positive");
    if (quadratic.rows() != n || quadratic.cols() != n)
        throw DomainError("quadratic term dimension mismatch");
    require_hermitian(quadratic, "quadratic term");
    if (constraints.empty())
        throw DomainError("QCQP needs at least one constraint");
    for (const auto& c : constraints) {
        if (c.matrix.rows() != n || c.matrix.cols() != n)
            throw DomainError("constraint matrix dimension mismatch");
        require_hermitian(c.matrix, "constraint matrix");
        if (!(c.budget > 0.0) || !std::isfinite(c.budget))
            throw DomainError("constraint budget must be positive");
    }
}

double kkt_residual(const QcqpProblem& problem, const CVector& point,
                    const std::vector<double>& duals)
{
    if (duals.size() != problem.constraints.size())
        throw DomainError("one dual value per constraint is required");
    if (point.size() != problem.linear.size())
        throw DomainError("point dimension mismatch");
    const double tiny = std::numeric_limits<double>::min();
    const double bnorm = problem.linear.norm();

    CVector grad = problem.linear - problem.quadratic * point;
    for (std::size_t i = 0; i < duals.size(); ++i)
        grad -= duals[i] * (problem.constraints[i].matrix * point);
    double residual = grad.norm() / std::max(bnorm, tiny);

    const double value_scale = std::max(std::abs(problem.linear.dot(point)), tiny);
    for (std::size_t i = 0; i < duals.size(); ++i) {
        const auto& c = problem.constraints[i];
        const double v = std::real(point.dot(c.matrix * point));
        residual += std::max(0.0, -duals[i]);
        residual += std::max(duals[i], 0.0) * std::abs(v - c.budget) / value_scale;
        residual += std::max(0.0, v - c.budget) / c.budget;
    }
    return residual;
}

QcqpSolution solve_single_constraint(const CVector& b, const CMatrix& A, const CMatrix& Q,
                                     double budget, double tol)
{
    const Eigen::Index n = b.size();
    if (n == 0)
        throw DomainError("QCQP dimension must be positive");
    if (A.rows() != n || A.cols() != n || Q.rows() != n || Q.cols() != n)
        throw DomainError("QCQP dimension mismatch");
    if (!(budget > 0.0) || !std::isfinite(budget))
        throw DomainError("constraint budget must be positive");
    require_hermitian(A, "quadratic term");
    require_hermitian(Q, "constraint matrix");

    if (b.squaredNorm() == 0.0) {
        require_psd(A, "quadratic term");
        require_psd(Q, "constraint matrix");
        return finish(b, A, Q, budget, CVector::Zero(n), 0.0, 0, true);
    }
    if (auto w = whiten(b, A, Q))
        return solve_whitened(b, A, Q, budget, *w, tol);
    return solve_general(b, A, Q, budget, tol);
}

QcqpSolution solve_multi_constraint(const QcqpProblem& problem, double tol, int max_iter)
{
    problem.validate();
    if (problem.constraints.size() == 1) {
        const auto& c = problem.constraints.front();
        return solve_single_constraint(problem.linear, problem.quadratic, c.matrix, c.budget, tol);
    }
    if (problem.constraints.size() == 2)
        return solve_two(problem, tol);
    return solve_cyclic(problem, tol, max_iter);
}

QcqpSolution solve(const QcqpProblem& problem, const SolverOptions& options)
{
    if (options.method == Method::Admm)
        return solve_admm(problem, options);
    return solve_multi_constraint(problem, options.tol, options.max_iter);
}

CMatrix DiagonalPlusLowRank::dense() const
{
    CMatrix out = factor * factor.adjoint();
    out.diagonal() += diagonal.cast<cdouble>();
    return out;
}

CVector DiagonalPlusLowRank::apply(const CVector& x) const
{
    return diagonal.cast<cdouble>().cwiseProduct(x) + factor * (factor.adjoint() * x);
}

QcqpSolution solve_single_constraint(const CVector& b, const DiagonalPlusLowRank& A,
                                     const RVector& q_diagonal, double budget, double tol)
{
    const Eigen::Index n = b.size();
    if (n == 0)
        throw DomainError("QCQP dimension must be positive");
    if (A.diagonal.size() != n || A.factor.rows() != n || q_diagonal.size() != n)
        throw DomainError("QCQP dimension mismatch");
    if (!(budget > 0.0) || !std::isfinite(budget))
        throw DomainError("constraint budget must be positive");
    if (!(q_diagonal.minCoeff() > 0.0))
        throw DomainError("diagonal constraint matrix must be positive definite");
    const double dscale = A.diagonal.cwiseAbs().maxCoeff();
    if (A.diagonal.minCoeff() < -kPsdTol * std::max(dscale, std::numeric_limits<double>::min()))
        throw DomainError("quadratic term must be positive semidefinite");

    // Whitened data: y = sqrt(q) .* x, A' = diag(d') + F' F'^H.
    const RVector s = q_diagonal.cwiseSqrt().cwiseInverse();
    const RVector d = A.diagonal.cwiseMax(0.0).cwiseProduct(s.cwiseAbs2());
    const CMatrix F = s.cast<cdouble>().asDiagonal() * A.factor;
    const CVector c = s.cast<cdouble>().cwiseProduct(b);
    const Eigen::Index r = F.cols();
    const double scale = d.maxCoeff() + F.squaredNorm();

    auto solve_at = [&](double l) -> std::optional<CVector> {
        const RVector shifted = d.array() + l;
        if (shifted.minCoeff() > 1e-13 * std::max(scale, std::numeric_limits<double>::min())) {
            const RVector e = shifted.cwiseInverse();
            const CVector ec = e.cast<cdouble>().cwiseProduct(c);
            if (r == 0)
                return ec;
            const CMatrix ef = e.cast<cdouble>().asDiagonal() * F;
            CMatrix small = F.adjoint() * ef;
            small.diagonal().array() += 1.0;
            Eigen::LLT<CMatrix> llt(small);
            if (llt.info() != Eigen::Success)
                return std::nullopt;
            return CVector(ec - ef * llt.solve(F.adjoint() * ec));
        }
        CMatrix K = F * F.adjoint();
        K.diagonal() += shifted.cast<cdouble>();
        K.diagonal().array() += 1e-12 * std::max(scale, std::numeric_limits<double>::min());
        Eigen::LDLT<CMatrix> ldlt(K);
        CVector y = ldlt.solve(c);
        const CVector resid = F * (F.adjoint() * y) + shifted.cast<cdouble>().cwiseProduct(y) - c;
        if (!y.allFinite() || resid.norm() > 1e-6 * c.norm())
            return std::nullopt;
        return y;
    };

    int evaluations = 0;
    if (c.squaredNorm() == 0.0)
        return finish(b, A.dense(), q_diagonal.cast<cdouble>().asDiagonal().toDenseMatrix(), budget,
                      CVector::Zero(n), 0.0, 0, true);

    auto constraint = [&](double l) {
        auto y = solve_at(l);
        return y ? y->squaredNorm() : std::numeric_limits<double>::infinity();
    };
    const Bisection bis = bisect_multiplier(constraint, budget, c.norm() / std::sqrt(budget), tol);
    evaluations = bis.evaluations;
    auto y = solve_at(bis.multiplier);
    if (!y)
        throw RegularizationError("A + lambda Q is singular and the problem is unbounded");
    CVector x = s.cast<cdouble>().cwiseProduct(*y);

    QcqpSolution sol;
    const CVector ax = A.apply(x);
    sol.objective = 2.0 * std::real(b.dot(x)) - std::real(x.dot(ax));
    const CVector grad = b - ax - bis.multiplier * q_diagonal.cast<cdouble>().cwiseProduct(x);
    const double tiny = std::numeric_limits<double>::min();
    const double qx = x.cwiseAbs2().dot(q_diagonal);
    sol.kkt_residual = grad.norm() / std::max(b.norm(), tiny) +
                       bis.multiplier * std::abs(qx - budget) /
                           std::max(std::abs(b.dot(x)), tiny) +
                       std::max(0.0, qx - budget) / budget;
    sol.point = std::move(x);
    sol.dual_values = {bis.multiplier};
    sol.iterations = evaluations;
    sol.converged = bis.converged;
    return sol;
}

CVector project_onto_ellipsoid(const CVector& v, const CMatrix& Q, double budget)
{
    if (std::real(v.dot(Q * v)) <= budget)
        return v;
    const Eigen::Index n = v.size();
    return solve_single_constraint(v, CMatrix::Identity(n, n), Q, budget, 1e-12).point;
}

QcqpSolution solve_admm(const QcqpProblem& problem, const SolverOptions& options)
{
    problem.validate();
    const Eigen::Index n = problem.dimension();
    const auto& A = problem.quadratic;
    const auto& b = problem.linear;
    const auto& cons = problem.constraints;

    auto project = [&](const CVector& v) {
        if (cons.size() == 1)
            return project_onto_ellipsoid(v, cons[0].matrix, cons[0].budget);
        // Dykstra's alternating projections converge to the projection onto
        // the intersection, not just to some point inside it.
        CVector y = v;
        std::vector<CVector> corr(cons.size(), CVector::Zero(n));
        for (int it = 0; it < 1000; ++it) {
            const CVector start = y;
            for (std::size_t i = 0; i < cons.size(); ++i) {
                const CVector t = y + corr[i];
                y = project_onto_ellipsoid(t, cons[i].matrix, cons[i].budget);
                corr[i] = t - y;
            }
            if ((y - start).norm() <= 1e-13 * std::max(1.0, y.norm()))
                break;
        }
        return y;
    };

    const double diag_mean = A.diagonal().real().mean();
    double rho = options.admm_penalty * (diag_mean > 0.0 ? diag_mean : 1.0);
    auto factor = [&](double r) {
        CMatrix K = A;
        K.diagonal().array() += 0.5 * r;
        return Eigen::LLT<CMatrix>(K);
    };
    Eigen::LLT<CMatrix> llt = factor(rho);

    CVector z = CVector::Zero(n);
    CVector u = CVector::Zero(n);
    CVector x = z;
    bool converged = false;
    int it = 0;
    const double eps_abs = options.tol * std::max(1.0, b.norm());
    for (; it < options.max_iter; ++it) {
        x = llt.solve(b + 0.5 * rho * (z - u));
        const CVector z_old = z;
        z = project(x + u);
        u += x - z;

        const double primal = (x - z).norm();
        const double dual = rho * (z - z_old).norm();
        const double scale = std::max({x.norm(), z.norm(), 1e-300});
        if (primal <= eps_abs + options.tol * scale && dual <= eps_abs + options.tol * rho * u.norm()) {
            converged = true;
            ++it;
            break;
        }
        if (primal > 10.0 * dual) {
            rho *= 2.0;
            u *= 0.5;
            llt = factor(rho);
        } else if (dual > 10.0 * primal) {
            rho *= 0.5;
            u *= 2.0;
            llt = factor(rho);
        }
    }

    // Multipliers from the stationarity condition restricted to active
    // constraints, clipped at zero.
    std::vector<double> duals(cons.size(), 0.0);
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < cons.size(); ++i)
        if (std::real(z.dot(cons[i].matrix * z)) >= (1.0 - 1e-6) * cons[i].budget)
            active.push_back(i);
    if (!active.empty()) {
        const CVector rhs = b - A * z;
        Eigen::MatrixXd design(2 * n, static_cast<Eigen::Index>(active.size()));
        Eigen::VectorXd target(2 * n);
        target << rhs.real(), rhs.imag();
        for (std::size_t j = 0; j < active.size(); ++j) {
            const CVector col = cons[active[j]].matrix * z;
            design.col(static_cast<Eigen::Index>(j)) << col.real(), col.imag();
        }
        const Eigen::VectorXd l = design.colPivHouseholderQr().solve(target);
        for (std::size_t j = 0; j < active.size(); ++j)
            duals[active[j]] = std::max(0.0, l(static_cast<Eigen::Index>(j)));
    }
    return assemble(problem, std::move(z), std::move(duals), it, converged);
}

} // namespace activeris::qcqp
