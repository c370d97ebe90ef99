#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "caputo/errors.hpp"

namespace caputo {

/// Thomas elimination for a tridiagonal system with constant off-diagonals.
///
/// Row i reads lower x_{i-1} + diag x_i + upper x_{i+1} = rhs_i. Fails with
/// LinearAlgebraError on a vanishing pivot (no pivoting is attempted).
inline std::vector<double> solve_tridiagonal(double lower, double diag, double upper,
                                             std::span<const double> rhs) {
    const std::size_t m = rhs.size();
    if (m == 0) return {};
    std::vector<double> c(m);
    std::vector<double> x(m);
    double pivot = diag;
    if (pivot == 0.0 || !std::isfinite(pivot)) throw LinearAlgebraError("singular tridiagonal system at row 0");
    c[0] = upper / pivot;
    x[0] = rhs[0] / pivot;
    for (std::size_t i = 1; i < m; ++i) {
        pivot = diag - lower * c[i - 1];
        if (pivot == 0.0 || !std::isfinite(pivot)) {
            throw LinearAlgebraError("singular tridiagonal system at row " + std::to_string(i));
        }
        c[i] = upper / pivot;
        x[i] = (rhs[i] - lower * x[i - 1]) / pivot;
    }
    for (std::size_t i = m - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
    return x;
}

}  // namespace caputo
