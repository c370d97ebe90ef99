#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "caputo/errors.hpp"
#include "caputo/mesh.hpp"
#include "caputo/special_functions.hpp"

namespace caputo {

enum class SchemeKind { L1, L21Sigma };

/// Discretization selector. L1 collocates at t_n (sigma = 0); L21-sigma
/// collocates at t_{n-sigma} = t_n - sigma tau_n with sigma in (0, 1].
struct Scheme {
    SchemeKind kind = SchemeKind::L1;
    double sigma = 0.0;

    static Scheme l1() { return {SchemeKind::L1, 0.0}; }
    static Scheme l21sigma(double sigma) { return {SchemeKind::L21Sigma, sigma}; }
    /// sigma = alpha/2, i.e. the collocation point t_n - (alpha/2) tau_n.
    static Scheme l21sigma_default(double alpha) { return l21sigma(0.5 * alpha); }
};

/// DC coefficients a^{(n)}_j, j = n - k in [0, n-1], for one time level n.
class KernelRow {
public:
    KernelRow(std::size_t level, double alpha, std::vector<double> coeffs)
        : level_(level), alpha_(alpha), coeffs_(std::move(coeffs)) {
        if (coeffs_.size() != level_) {
            throw DomainError("coeffs", "row length must equal its level");
        }
    }

    std::size_t level() const noexcept { return level_; }
    double alpha() const noexcept { return alpha_; }
    /// a^{(n)}_j.
    double operator[](std::size_t j) const noexcept { return coeffs_[j]; }
    /// Coefficient multiplying nabla u^k, i.e. a^{(n)}_{n-k}.
    double at_k(std::size_t k) const noexcept { return coeffs_[level_ - k]; }
    std::span<const double> coeffs() const noexcept { return coeffs_; }

private:
    std::size_t level_;
    double alpha_;
    std::vector<double> coeffs_;
};

namespace detail {

inline void check_level(const Mesh& mesh, std::size_t n) {
    if (n < 1 || n > mesh.size()) {
        throw DomainError("n", "level " + std::to_string(n) + " outside [1, " +
                                   std::to_string(mesh.size()) + "]");
    }
}

inline void check_order(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha", "order must lie in (0, 1)");
}

/// (y + h)^p - y^p without cancellation for h << y.
inline double power_increment(double y, double h, double p) {
    if (y == 0.0) return std::pow(h, p);
    return std::pow(y, p) * std::expm1(p * std::log1p(h / y));
}

}  // namespace detail

/// L1 row: a^{(n)}_{n-k} = [(t_n - t_{k-1})^{1-a} - (t_n - t_k)^{1-a}] / (tau_k Gamma(2-a)).
inline KernelRow l1_row(const Mesh& mesh, double alpha, std::size_t n) {
    detail::check_order(alpha);
    detail::check_level(mesh, n);
    const double g = gamma(2.0 - alpha);
    const double tn = mesh.t(n);
    std::vector<double> coeffs(n);
    for (std::size_t k = 1; k <= n; ++k) {
        const double near = tn - mesh.t(k);
        coeffs[n - k] = detail::power_increment(near, mesh.tau(k), 1.0 - alpha) / (mesh.tau(k) * g);
    }
    return KernelRow(n, alpha, std::move(coeffs));
}

/// The two integral families behind an L21-sigma row, indexed by interval k.
/// a_part[k-1] is the piecewise-linear part; b_part[k] the quadratic
/// correction with b_part[0] = b_part[n] = 0.
struct L21SigmaParts {
    std::vector<double> a_part;  // k = 1..n
    std::vector<double> b_part;  // k = 0..n
};

inline L21SigmaParts l21sigma_parts(const Mesh& mesh, double alpha, double sigma, std::size_t n) {
    detail::check_order(alpha);
    detail::check_level(mesh, n);
    if (!(sigma > 0.0 && sigma <= 1.0)) throw DomainError("sigma", "offset must lie in (0, 1]");

    const double colloc = mesh.t(n) - sigma * mesh.tau(n);
    const double w1 = 1.0 - alpha;
    L21SigmaParts parts{std::vector<double>(n, 0.0), std::vector<double>(n + 1, 0.0)};

    for (std::size_t k = 1; k <= n; ++k) {
        const double lo = mesh.t(k - 1);
        const double hi = std::min(mesh.t(k), colloc);
        if (hi > lo) {
            // (1/tau_k) [omega_{2-a}(T - lo) - omega_{2-a}(T - hi)]
            const double far = colloc - lo;
            const double near = colloc - hi;
            parts.a_part[k - 1] =
                detail::power_increment(near, far - near, w1) / (gamma(2.0 - alpha) * mesh.tau(k));
        }
    }
    // int_{t_{k-1}}^{t_k} (s - t_{k-1/2}) omega_{1-a}(T - s) ds via the
    // antiderivative -(s - c) omega_{2-a}(T - s) - omega_{3-a}(T - s).
    for (std::size_t k = 1; k + 1 <= n; ++k) {
        const double tk = mesh.tau(k);
        const double far = colloc - mesh.t(k - 1);
        const double near = colloc - mesh.t(k);
        const double integral = -0.5 * tk * (omega(2.0 - alpha, near) + omega(2.0 - alpha, far)) +
                                (omega(3.0 - alpha, far) - omega(3.0 - alpha, near));
        parts.b_part[k] = 2.0 * integral / (tk * (tk + mesh.tau(k + 1)));
    }
    return parts;
}

/// L21-sigma row: a^{(n)}_{n-k} = a_{n-k} + r_{k-1} b_{n-k+1} - b_{n-k}, r_{k-1} = tau_k / tau_{k-1}, r_0 = 0.
inline KernelRow l21sigma_row(const Mesh& mesh, double alpha, double sigma, std::size_t n) {
    const auto parts = l21sigma_parts(mesh, alpha, sigma, n);
    std::vector<double> coeffs(n);
    for (std::size_t k = 1; k <= n; ++k) {
        const double ratio = k >= 2 ? mesh.tau(k) / mesh.tau(k - 1) : 0.0;
        coeffs[n - k] = parts.a_part[k - 1] + ratio * parts.b_part[k - 1] - parts.b_part[k];
    }
    return KernelRow(n, alpha, std::move(coeffs));
}

inline KernelRow kernel_row(const Mesh& mesh, double alpha, const Scheme& scheme, std::size_t n) {
    switch (scheme.kind) {
        case SchemeKind::L1: return l1_row(mesh, alpha, n);
        case SchemeKind::L21Sigma: return l21sigma_row(mesh, alpha, scheme.sigma, n);
    }
    throw DomainError("scheme", "unknown scheme");
}

/// Rows for levels 1..n_max; element j-1 holds level j.
inline std::vector<KernelRow> kernel_rows(const Mesh& mesh, double alpha, const Scheme& scheme,
                                          std::size_t n_max) {
    detail::check_level(mesh, n_max);
    std::vector<KernelRow> rows;
    rows.reserve(n_max);
    for (std::size_t n = 1; n <= n_max; ++n) rows.push_back(kernel_row(mesh, alpha, scheme, n));
    return rows;
}

inline std::vector<KernelRow> l1_rows(const Mesh& mesh, double alpha, std::size_t n_max) {
    return kernel_rows(mesh, alpha, Scheme::l1(), n_max);
}

struct MonotonicityResult {
    bool monotone = true;
    std::optional<std::size_t> first_violation;  ///< smallest j with a_j >= a_{j-1}
};

/// True iff the coefficients strictly decrease in j = n - k (increase in k).
inline MonotonicityResult is_monotone(std::span<const double> coeffs) {
    for (std::size_t j = 1; j < coeffs.size(); ++j) {
        if (!(coeffs[j] < coeffs[j - 1])) return {false, j};
    }
    return {};
}

inline MonotonicityResult is_monotone(const KernelRow& row) { return is_monotone(row.coeffs()); }

}  // namespace caputo
