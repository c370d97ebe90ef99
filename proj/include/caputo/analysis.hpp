#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "caputo/errors.hpp"

namespace caputo {

/// Parameters of S = sum_{k=1}^{n-1} (n^r - k^r)^p k^q.
struct DcsCase {
    double r = 1.0;
    double p = 0.0;
    double q = 0.0;
    std::size_t n = 2;
};

enum class DcsRegime { AboveMinusOne, AtMinusOne, BelowMinusOne };

inline std::string to_string(DcsRegime regime) {
    switch (regime) {
        case DcsRegime::AboveMinusOne: return "min>-1";
        case DcsRegime::AtMinusOne: return "min=-1";
        case DcsRegime::BelowMinusOne: return "min<-1";
    }
    return "?";
}

struct DcsReport {
    double value = 0.0;
    DcsRegime regime = DcsRegime::AboveMinusOne;
    double bound = 1.0;
    double ratio = 0.0;
    /// Set when min{p,q} is within 1e-6 of -1 but outside the equality band.
    bool near_boundary = false;
};

inline constexpr double dcs_boundary_tol = 1e-12;

namespace detail {

inline void check_dcs(const DcsCase& c) {
    if (!(c.r > 0.0) || !std::isfinite(c.r)) throw DomainError("r", "grading exponent must be positive");
    if (!std::isfinite(c.p)) throw DomainError("p", "exponent must be finite");
    if (!std::isfinite(c.q)) throw DomainError("q", "exponent must be finite");
    if (c.n < 2) throw DomainError("n", "need at least two terms (n >= 2)");
}

}  // namespace detail

/// Compensated sum of the terms taken in descending magnitude.
inline double dcs_sum(const DcsCase& c) {
    detail::check_dcs(c);
    const double n = static_cast<double>(c.n);
    const double nr = std::pow(n, c.r);
    std::vector<double> terms;
    terms.reserve(c.n - 1);
    for (std::size_t k = 1; k < c.n; ++k) {
        const double kd = static_cast<double>(k);
        // n^r - k^r without cancellation for k close to n.
        const double gap = nr * -std::expm1(c.r * std::log1p(-(n - kd) / n));
        const double term = std::pow(gap, c.p) * std::pow(kd, c.q);
        if (!std::isfinite(term)) throw RangeError("dcs term overflows at k = " + std::to_string(k));
        terms.push_back(term);
    }
    std::sort(terms.begin(), terms.end(), [](double a, double b) { return a > b; });
    double sum = 0.0;
    double comp = 0.0;
    for (double t : terms) {
        const double s = sum + t;
        comp += std::abs(sum) >= std::abs(t) ? (sum - s) + t : (t - s) + sum;
        sum = s;
    }
    const double total = sum + comp;
    if (!std::isfinite(total)) throw RangeError("dcs sum overflows");
    return total;
}

inline DcsRegime dcs_regime(double p, double q) {
    const double m = std::min(p, q);
    if (std::abs(m + 1.0) <= dcs_boundary_tol) return DcsRegime::AtMinusOne;
    return m > -1.0 ? DcsRegime::AboveMinusOne : DcsRegime::BelowMinusOne;
}

inline DcsReport dcs_bound(const DcsCase& c) {
    DcsReport out;
    out.value = dcs_sum(c);
    out.regime = dcs_regime(c.p, c.q);
    const double m = std::min(c.p, c.q);
    out.near_boundary = out.regime != DcsRegime::AtMinusOne && std::abs(m + 1.0) <= 1e-6;
    const double n = static_cast<double>(c.n);
    switch (out.regime) {
        case DcsRegime::AboveMinusOne: out.bound = std::pow(n, c.r * c.p + c.q + 1.0); break;
        case DcsRegime::AtMinusOne: out.bound = std::pow(n, c.r * c.p + c.q + 1.0) * (1.0 + std::log(n)); break;
        case DcsRegime::BelowMinusOne:
            out.bound = std::pow(n, std::max(c.r * c.p, (c.r - 1.0) * c.p + c.q));
            break;
    }
    out.ratio = out.value / out.bound;
    return out;
}

struct DoublingScan {
    std::vector<DcsReport> reports;  ///< reports[j-1] at n = 2^j
    bool unbounded = false;
};

/// True when each of the last three values exceeds its predecessor by more than 2x.
inline bool grows_unboundedly(std::span<const double> ratios) {
    const std::size_t m = ratios.size();
    if (m < 3) return false;
    return ratios[m - 2] > 2.0 * ratios[m - 3] && ratios[m - 1] > 2.0 * ratios[m - 2];
}

/// Ratios at n = 2^j, j = 1..j_max, with the growth flag above.
inline DoublingScan doubling_scan(DcsCase tmpl, std::size_t j_max) {
    if (j_max < 1 || j_max > 24) throw DomainError("jmax", "scan length must lie in [1, 24]");
    DoublingScan out;
    for (std::size_t j = 1; j <= j_max; ++j) {
        tmpl.n = std::size_t{1} << j;
        out.reports.push_back(dcs_bound(tmpl));
    }
    std::vector<double> ratios;
    for (const auto& r : out.reports) ratios.push_back(r.ratio);
    out.unbounded = grows_unboundedly(ratios);
    return out;
}

/// log2(e_coarse / e_fine) for an N -> 2N refinement.
inline double observed_order(double e_coarse, double e_fine) {
    if (!(e_coarse > 0.0)) throw DomainError("e_coarse", "error must be positive");
    if (!(e_fine > 0.0)) throw DomainError("e_fine", "error must be positive");
    return std::log2(e_coarse / e_fine);
}

}  // namespace caputo
