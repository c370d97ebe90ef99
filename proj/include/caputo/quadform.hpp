#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "caputo/errors.hpp"
#include "caputo/kernels.hpp"

namespace caputo {

/// M(d) = L diag(d) + diag(d) L^T - diag(d), i.e. M_ij = d_{min(i,j)}.
struct QuadFormMatrix {
    std::vector<double> d;
    Eigen::MatrixXd entries;

    std::size_t size() const noexcept { return d.size(); }
};

inline QuadFormMatrix build_m(std::span<const double> d) {
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (!(d[i] > 0.0) || !std::isfinite(d[i])) {
            throw DomainError("d[" + std::to_string(i) + "]", "entries must be positive and finite");
        }
    }
    const auto n = static_cast<Eigen::Index>(d.size());
    QuadFormMatrix out{{d.begin(), d.end()}, Eigen::MatrixXd(n, n)};
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) out.entries(i, j) = d[static_cast<std::size_t>(std::min(i, j))];
    }
    return out;
}

/// prod_k (d_k - d_{k-1}) with d_0 = 0.
inline double increment_product(std::span<const double> d) {
    double prod = 1.0;
    double prev = 0.0;
    for (double x : d) {
        prod *= x - prev;
        prev = x;
    }
    return prod;
}

struct DetIdentity {
    double det = 0.0;
    double product = 0.0;
    double residual = 0.0;  ///< |det - product| / max(1, |product|)
};

/// Partially pivoted LU determinant of M(d), accumulated in long double.
/// Double-precision elimination loses up to ~1e-8 relative on unsorted d
/// spanning six decades; the extended format keeps it near 1e-11.
inline double lu_determinant(const Eigen::MatrixXd& a) {
    if (a.rows() == 0) return 1.0;
    using MatrixL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    const MatrixL al = a.cast<long double>();
    return static_cast<double>(Eigen::PartialPivLU<MatrixL>(al).determinant());
}

/// Pivoted LU determinant of M(d) against the increment product.
inline DetIdentity det_identity_check(std::span<const double> d) {
    const auto m = build_m(d);
    DetIdentity out;
    out.det = lu_determinant(m.entries);
    out.product = increment_product(d);
    out.residual = std::abs(out.det - out.product) / std::max(1.0, std::abs(out.product));
    return out;
}

struct PositivityResult {
    bool positive_definite = false;
    bool strictly_increasing = false;

    bool agree() const noexcept { return positive_definite == strictly_increasing; }
};

inline constexpr double quadform_pivot_tol = 1e-12;

/// Positive definiteness by an unpivoted LDL^T sweep (pivot tolerance
/// 1e-12 max|M|); monotonicity by scanning d_k - d_{k-1} with d_0 = 0.
inline PositivityResult positivity_iff_monotone(std::span<const double> d) {
    const auto m = build_m(d);
    PositivityResult out;
    if (d.empty()) return {true, true};
    const double scale = *std::max_element(d.begin(), d.end());

    out.strictly_increasing = true;
    double prev = 0.0;
    for (double x : d) {
        if (!(x - prev > quadform_pivot_tol * scale)) {
            out.strictly_increasing = false;
            break;
        }
        prev = x;
    }

    const auto n = m.entries.rows();
    Eigen::MatrixXd a = m.entries;
    const double tol = quadform_pivot_tol * a.cwiseAbs().maxCoeff();
    out.positive_definite = true;
    for (Eigen::Index k = 0; k < n; ++k) {
        const double pivot = a(k, k);
        if (!(pivot > tol)) {
            out.positive_definite = false;
            break;
        }
        for (Eigen::Index i = k + 1; i < n; ++i) {
            const double l = a(i, k) / pivot;
            for (Eigen::Index j = k + 1; j <= i; ++j) a(i, j) -= l * a(j, k);
        }
    }
    return out;
}

struct EnergyResidual {
    double quadratic = 0.0;  ///< 1/2 v^T M(a_seq) v
    double direct = 0.0;     ///< (D u^n, u^n) - 1/2 D (u^n)^2 from the definitions
};

/// Gap between (D u^n) u^n and 1/2 D (u^n)^2 for increments v_k = u^k - u^{k-1}.
inline EnergyResidual energy_residual(const KernelRow& row, std::span<const double> v) {
    const std::size_t n = row.level();
    if (v.size() != n) {
        throw ValidationError(v.size(), "increment vector length must equal the kernel level " + std::to_string(n));
    }
    EnergyResidual out;
    if (n == 0) return out;

    // a_seq_j = a_{n-j}: increasing in j when the kernels are monotone.
    Eigen::VectorXd a_seq(static_cast<Eigen::Index>(n));
    for (std::size_t j = 1; j <= n; ++j) a_seq(static_cast<Eigen::Index>(j - 1)) = row.at_k(j);
    const auto N = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd M(N, N);
    for (Eigen::Index i = 0; i < N; ++i) {
        for (Eigen::Index j = 0; j < N; ++j) M(i, j) = a_seq(std::min(i, j));
    }
    const Eigen::Map<const Eigen::VectorXd> vv(v.data(), N);
    out.quadratic = 0.5 * vv.dot(M * vv);

    std::vector<double> u(n + 1, 0.0);
    for (std::size_t k = 1; k <= n; ++k) u[k] = u[k - 1] + v[k - 1];
    double du = 0.0;
    double du2 = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        du += row.at_k(k) * v[k - 1];
        du2 += row.at_k(k) * (u[k] * u[k] - u[k - 1] * u[k - 1]);
    }
    out.direct = du * u[n] - 0.5 * du2;
    return out;
}

}  // namespace caputo
