#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

#include "caputo/errors.hpp"
#include "caputo/kernels.hpp"
#include "caputo/mesh.hpp"
#include "caputo/special_functions.hpp"
#include "caputo/tridiagonal.hpp"

namespace caputo {

/// D^alpha u = kappa u + f with exact u(t) = omega_{1+beta}(t), u(0) = 0.
struct OdeProblem {
    double alpha = 0.5;
    double beta = 0.5;  ///< regularity exponent in (0,1) U (1,2]
    double kappa = 1.0;
    Mesh mesh = uniform_mesh(1.0, 1);

    double exact(double t) const { return t == 0.0 ? 0.0 : omega(1.0 + beta, t); }
    double source(double t) const { return omega(1.0 + beta - alpha, t) - kappa * omega(1.0 + beta, t); }
    /// u''(t) = omega_{beta-1}(t); meaningful for t > 0.
    double second_derivative(double t) const {
        return beta == 2.0 ? 1.0 : std::pow(t, beta - 2.0) / gamma_signed(beta - 1.0);
    }

    void validate() const {
        if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha", "order must lie in (0, 1)");
        if (!(beta > 0.0 && beta <= 2.0) || beta == 1.0) {
            throw DomainError("beta", "regularity exponent must lie in (0,1) U (1,2]");
        }
    }

private:
    // Gamma on (-1, 0) via the recurrence, only needed for beta < 1.
    static double gamma_signed(double x) { return x > 0.0 ? gamma(x) : gamma(x + 1.0) / x; }
};

/// D^alpha u - u_xx = kappa u + f on [-pi, pi], u = 0 on the boundary,
/// exact u(x,t) = sin(x) omega_{1+beta}(t).
struct PdeProblem {
    double alpha = 0.5;
    double beta = 0.5;
    double kappa = 1.0;
    Mesh mesh = uniform_mesh(1.0, 1);
    std::size_t intervals = 1024;  ///< M, h = 2 pi / M

    double h() const { return 2.0 * std::numbers::pi / static_cast<double>(intervals); }
    double x(std::size_t i) const { return -std::numbers::pi + static_cast<double>(i) * h(); }
    double exact(double x, double t) const { return std::sin(x) * as_ode().exact(t); }
    double source(double x, double t) const {
        return std::sin(x) * (omega(1.0 + beta - alpha, t) + (1.0 - kappa) * omega(1.0 + beta, t));
    }
    OdeProblem as_ode() const { return {alpha, beta, kappa, mesh}; }

    void validate() const {
        as_ode().validate();
        if (intervals < 2) throw DomainError("M", "need at least two spatial intervals");
    }
};

/// values[n] holds U^n (one entry for the ODE, interior nodes for the PDE).
struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> values;
    std::vector<double> errors;
};

/// L1 stepping for D^alpha u = kappa u + g(t), u(0) = u0, on an arbitrary mesh.
inline std::vector<double> solve_linear_scalar(const Mesh& mesh, double alpha, double kappa,
                                               const std::function<double(double)>& source, double u0 = 0.0) {
    const std::size_t N = mesh.size();
    std::vector<double> u(N + 1, 0.0);
    u[0] = u0;
    for (std::size_t n = 1; n <= N; ++n) {
        const auto row = l1_row(mesh, alpha, n);
        const double lead = row[0] - kappa;
        if (!(lead > 0.0)) throw StepSizeError(n, "a_0 <= kappa, implicit step is not solvable");
        double history = 0.0;
        for (std::size_t k = 1; k < n; ++k) history += row.at_k(k) * (u[k] - u[k - 1]);
        u[n] = (source(mesh.t(n)) + row[0] * u[n - 1] - history) / lead;
    }
    return u;
}

inline Trajectory solve_ode(const OdeProblem& problem) {
    problem.validate();
    const auto& mesh = problem.mesh;
    const auto u = solve_linear_scalar(mesh, problem.alpha, problem.kappa,
                                       [&](double t) { return problem.source(t); });
    Trajectory out;
    out.times.assign(mesh.nodes().begin(), mesh.nodes().end());
    out.values.reserve(u.size());
    out.errors.reserve(u.size());
    for (std::size_t n = 0; n < u.size(); ++n) {
        out.values.push_back({u[n]});
        out.errors.push_back(std::abs(problem.exact(mesh.t(n)) - u[n]));
    }
    return out;
}

/// Fully discrete scheme: L1 in time, 3-point centered differences in space,
/// one Thomas solve per level. errors[n] = sqrt(h sum_i (u(x_i,t_n) - U_i^n)^2).
inline Trajectory solve_pde(const PdeProblem& problem) {
    problem.validate();
    const auto& mesh = problem.mesh;
    const std::size_t N = mesh.size();
    const std::size_t m = problem.intervals - 1;  // interior nodes
    const double h = problem.h();
    const double inv_h2 = 1.0 / (h * h);

    std::vector<double> xs(m);
    std::vector<double> shape(m);
    for (std::size_t i = 0; i < m; ++i) {
        xs[i] = problem.x(i + 1);
        shape[i] = std::sin(xs[i]);
    }

    Trajectory out;
    out.times.assign(mesh.nodes().begin(), mesh.nodes().end());
    out.values.assign(1, std::vector<double>(m, 0.0));
    out.errors.assign(1, 0.0);
    std::vector<std::vector<double>> increments;  // nabla U^k, k = 1..n-1
    increments.reserve(N);

    std::vector<double> rhs(m);
    for (std::size_t n = 1; n <= N; ++n) {
        const auto row = l1_row(mesh, problem.alpha, n);
        if (!(row[0] > 0.0)) throw StepSizeError(n, "leading kernel must be positive");
        const double tn = mesh.t(n);
        const double time_factor = omega(1.0 + problem.beta - problem.alpha, tn) +
                                   (1.0 - problem.kappa) * omega(1.0 + problem.beta, tn);
        const auto& prev = out.values.back();
        for (std::size_t i = 0; i < m; ++i) rhs[i] = shape[i] * time_factor + row[0] * prev[i];
        for (std::size_t k = 1; k < n; ++k) {
            const double w = row.at_k(k);
            const auto& inc = increments[k - 1];
            for (std::size_t i = 0; i < m; ++i) rhs[i] -= w * inc[i];
        }
        auto next = solve_tridiagonal(-inv_h2, row[0] + 2.0 * inv_h2 - problem.kappa, -inv_h2, rhs);

        std::vector<double> inc(m);
        for (std::size_t i = 0; i < m; ++i) inc[i] = next[i] - prev[i];
        increments.push_back(std::move(inc));

        const double exact_t = problem.as_ode().exact(tn);
        double sq = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double e = shape[i] * exact_t - next[i];
            sq += e * e;
        }
        out.errors.push_back(std::sqrt(h * sq));
        out.values.push_back(std::move(next));
    }
    return out;
}

namespace detail {

/// 2 int_{t_{k-1}}^{t_k} (t - t_{k-1}) |u''(t)| dt for u'' = omega_{beta-1}.
inline double truncation_weight(const OdeProblem& problem, std::size_t k) {
    const double a = problem.mesh.t(k - 1);
    const double b = problem.mesh.t(k);
    const double beta = problem.beta;
    if (beta == 2.0) {
        const double tau = b - a;
        return tau * tau;
    }
    const double scale = std::abs(problem.second_derivative(1.0));
    // Antiderivative of (t - a) t^{beta-2}: t^beta / beta - a t^{beta-1} / (beta - 1).
    auto prim = [&](double t) {
        if (t == 0.0) return 0.0;
        return std::pow(t, beta) / beta - a * std::pow(t, beta - 1.0) / (beta - 1.0);
    };
    return 2.0 * scale * (prim(b) - prim(a));
}

}  // namespace detail

/// |T^n_tau| <= a_0 G^n + sum_{k<n} (a_{n-k-1} - a_{n-k}) G^k, G^k = 2 int (t - t_{k-1}) |u''| dt.
inline double truncation_bound(const OdeProblem& problem, std::size_t n) {
    problem.validate();
    detail::check_level(problem.mesh, n);
    const auto row = l1_row(problem.mesh, problem.alpha, n);
    double bound = row[0] * detail::truncation_weight(problem, n);
    for (std::size_t k = 1; k < n; ++k) {
        bound += (row[n - k - 1] - row[n - k]) * detail::truncation_weight(problem, k);
    }
    return bound;
}

/// Temporal truncation bound in the discrete L2 norm: the scalar bound times ||sin||_h.
inline double truncation_bound(const PdeProblem& problem, std::size_t n) {
    problem.validate();
    const double h = problem.h();
    double sq = 0.0;
    for (std::size_t i = 1; i < problem.intervals; ++i) {
        const double s = std::sin(problem.x(i));
        sq += s * s;
    }
    return truncation_bound(problem.as_ode(), n) * std::sqrt(h * sq);
}

}  // namespace caputo
