#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "caputo/errors.hpp"
#include "caputo/kernels.hpp"
#include "caputo/mesh.hpp"
#include "caputo/special_functions.hpp"

namespace caputo {

/// Discrete complementary convolution kernels for one level n.
///
/// All three vectors are indexed by k - 1 for k = 1..n and hold the
/// coefficient of interval k: p^{(n)}_{n-k}, p~^{(n)}_{n-k} and their ratio.
struct DccKernels {
    std::size_t level = 0;
    std::vector<double> p;
    std::vector<double> p_tilde;
    std::vector<double> q;
};

namespace detail {

inline void check_rows(std::span<const KernelRow> rows, std::size_t n) {
    if (n < 1 || rows.size() < n) throw DomainError("n", "need kernel rows for levels 1..n");
    for (std::size_t j = 1; j <= n; ++j) {
        if (rows[j - 1].level() != j) throw DomainError("rows", "rows must be ordered by level starting at 1");
        if (!(rows[j - 1][0] > 0.0)) {
            throw KernelDegeneracyError(j, "leading DC coefficient a_0 must be positive");
        }
    }
}

}  // namespace detail

/// p^{(n)}_{n-k}, k = 1..n, by the descending recurrence
///   p_{n-k} = (1/a^{(k)}_0) [1 if k = n, else sum_{j>k} p_{n-j} (a^{(j)}_{j-k-1} - a^{(j)}_{j-k})].
/// Note a^{(k)}_0 (not a^{(n)}_0) normalizes each step: it is the
/// diagonal of A_n D_n in row k.
inline std::vector<double> dcc_weights(std::span<const KernelRow> rows, std::size_t n) {
    detail::check_rows(rows, n);
    std::vector<double> p(n, 0.0);
    p[n - 1] = 1.0 / rows[n - 1][0];
    for (std::size_t k = n - 1; k >= 1; --k) {
        double sum = 0.0;
        for (std::size_t j = k + 1; j <= n; ++j) {
            const auto& row = rows[j - 1];
            sum += p[j - 1] * (row[j - k - 1] - row[j - k]);
        }
        p[k - 1] = sum / rows[k - 1][0];
    }
    return p;
}

/// Surrogate p~^{(n)}_{n-k} = int_{t_{k-1}}^{t_k} omega_alpha(t_n - s) ds, k = 1..n.
inline std::vector<double> dcc_surrogate(const Mesh& mesh, double alpha, std::size_t n) {
    detail::check_level(mesh, n);
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("alpha", "order must lie in (0, 1]");
    const double g = gamma(1.0 + alpha);
    const double tn = mesh.t(n);
    std::vector<double> out(n);
    for (std::size_t k = 1; k <= n; ++k) {
        out[k - 1] = detail::power_increment(tn - mesh.t(k), mesh.tau(k), alpha) / g;
    }
    return out;
}

inline DccKernels dcc_row(const Mesh& mesh, std::span<const KernelRow> rows, std::size_t n) {
    detail::check_level(mesh, n);
    DccKernels out;
    out.level = n;
    out.p = dcc_weights(rows, n);
    out.p_tilde = dcc_surrogate(mesh, rows[0].alpha(), n);
    out.q.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.q[i] = out.p[i] / out.p_tilde[i];
    return out;
}

/// max_k |sum_{j=k}^n p^{(n)}_{n-j} a^{(j)}_{j-k} - 1|, i.e. the defect of P_n A_n D_n = I in row n.
inline double verify_matrix_identity(std::span<const KernelRow> rows, std::size_t n) {
    const auto p = dcc_weights(rows, n);
    double worst = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        double s = 0.0;
        for (std::size_t j = k; j <= n; ++j) s += p[j - 1] * rows[j - 1][j - k];
        worst = std::max(worst, std::abs(s - 1.0));
    }
    return worst;
}

struct DccBoundResult {
    bool holds = true;
    double worst_margin = std::numeric_limits<double>::infinity();  ///< min_k (p~ - p)
    std::size_t worst_k = 0;
    double max_q = 0.0;
};

inline constexpr double dcc_bound_slack = 1e-13;

/// Checks p^{(n)}_{n-k} <= p~^{(n)}_{n-k} for every k, with absolute slack 1e-13.
inline DccBoundResult dcc_bound_check(const DccKernels& dcc) {
    DccBoundResult r;
    for (std::size_t i = 0; i < dcc.p.size(); ++i) {
        const double margin = dcc.p_tilde[i] - dcc.p[i];
        if (margin < r.worst_margin) {
            r.worst_margin = margin;
            r.worst_k = i + 1;
        }
        r.max_q = std::max(r.max_q, dcc.q[i]);
        if (dcc.p[i] > dcc.p_tilde[i] + dcc_bound_slack) r.holds = false;
    }
    return r;
}

struct CrtBound {
    double c_r_tau = 0.0;         ///< max_j of the quotient
    std::size_t argmax_j = 0;
    double rho = 1.0;             ///< global adjacent step ratio
    double tau = 0.0;             ///< max step
    double reference = 1.0;       ///< (rho + 1) / 2
    double local_reference = 1.0; ///< (tau_{k+1}/tau_k + 1) / 2
    std::vector<double> quotients;  ///< j = k+1..n
};

/// Denominator of the similarity quotient:
///   int_{t_{j-1}}^{t_j} omega_alpha(t_n - t) [omega_{1-alpha}(t - t_k) - omega_{1-alpha}(t - t_{k-1})] dt,
/// the inner s-integral of omega'_{1-alpha} done in closed form. Endpoint
/// singularities (t = t_k when j = k+1, t = t_n when j = n) go to tanh-sinh.
inline double crt_denominator(const Mesh& mesh, double alpha, std::size_t n, std::size_t k, std::size_t j,
                              double tol = 1e-10) {
    const double a = mesh.t(j - 1);
    const double b = mesh.t(j);
    const double width = b - a;
    const double tn = mesh.t(n);
    const double tk = mesh.t(k);
    const double gk = gamma(1.0 - alpha);
    const double ga = gamma(alpha);
    const double tau_k = mesh.tau(k);

    auto integrand = [&](double x, double xc) {
        double da;  // t - a
        double db;  // b - t
        if (xc <= 0.0) {
            da = -xc;
            db = width - da;
        } else {
            db = xc;
            da = width - db;
        }
        (void)x;
        const double to_end = (tn - b) + db;  // t_n - t
        const double from_k = (a - tk) + da;  // t - t_k
        if (!(to_end > 0.0) || !(from_k > 0.0)) return 0.0;
        const double kernel = std::pow(to_end, alpha - 1.0) / ga;
        const double bracket = -detail::power_increment(from_k, tau_k, -alpha) / gk;
        return kernel * bracket;
    };

    boost::math::quadrature::tanh_sinh<double> integrator;
    double error = 0.0;
    double l1 = 0.0;
    const double value = integrator.integrate(integrand, a, b, 1e-13, &error, &l1);
    if (!(error <= tol * std::max(1.0, std::abs(value)))) {
        throw PrecisionError("quadrature for the similarity quotient did not converge", error);
    }
    return value;
}

/// C_{rho,tau} = max_{k+1 <= j <= n} p~^{(n)}_{n-j} (a^{(j)}_{j-k-1} - a^{(j)}_{j-k}) / denominator_j.
inline CrtBound crt_constant(const Mesh& mesh, double alpha, std::size_t n, std::size_t k) {
    detail::check_order(alpha);
    detail::check_level(mesh, n);
    if (k < 1 || k >= n) throw DomainError("k", "need 1 <= k < n");

    const auto p_tilde = dcc_surrogate(mesh, alpha, n);
    const auto stats = mesh_stats(mesh);
    CrtBound out;
    out.rho = stats.rho;
    out.tau = stats.tau_max;
    out.reference = 0.5 * (stats.rho + 1.0);
    out.local_reference = 0.5 * (mesh.tau(k + 1) / mesh.tau(k) + 1.0);
    out.c_r_tau = -std::numeric_limits<double>::infinity();
    for (std::size_t j = k + 1; j <= n; ++j) {
        const auto row = l1_row(mesh, alpha, j);
        const double numerator = p_tilde[j - 1] * (row[j - k - 1] - row[j - k]);
        const double quotient = numerator / crt_denominator(mesh, alpha, n, k, j);
        out.quotients.push_back(quotient);
        if (quotient > out.c_r_tau) {
            out.c_r_tau = quotient;
            out.argmax_j = j;
        }
    }
    return out;
}

}  // namespace caputo
