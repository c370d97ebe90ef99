#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "caputo/errors.hpp"

namespace caputo {

namespace detail {

// Lanczos approximation, N = 13, g = 6.02468..., tuned for 53-bit doubles.
// Numerator/denominator are rational coefficients in z (denominator is
// z (z+1) ... (z+11) expanded), evaluated with Horner's rule.
inline double lanczos_sum(double z) {
    static constexpr std::array<double, 13> num = {
        23531376880.41075968857200767445163675473,
        42919803642.64909876895789904700198885093,
        35711959237.35566804944018545154716670596,
        17921034426.03720969991975575445893111267,
        6039542586.35202800506429164430729792107,
        1439720407.311721673663223072794912393972,
        248874557.8620541565114603864132294232163,
        31426415.58540019438061423162831820536287,
        2876370.628935372441225409051620849613599,
        186056.2653952234950402949897160456992822,
        8071.672002365816210638002902272250613822,
        210.8242777515793458725097339207133627117,
        2.506628274631000270164908177133837338626,
    };
    static constexpr std::array<double, 13> denom = {
        0.0, 39916800.0, 120543840.0, 150917976.0, 105258076.0, 45995730.0, 13339535.0,
        2637558.0, 357423.0, 32670.0, 1925.0, 66.0, 1.0,
    };
    if (z <= 1.0) {
        double n = num.back();
        double d = denom.back();
        for (std::size_t i = num.size() - 1; i-- > 0;) {
            n = n * z + num[i];
            d = d * z + denom[i];
        }
        return n / d;
    }
    // Large z: evaluate in powers of 1/z to keep magnitudes tame.
    const double w = 1.0 / z;
    double n = num.front();
    double d = denom.front();
    for (std::size_t i = 1; i < num.size(); ++i) {
        n = n * w + num[i];
        d = d * w + denom[i];
    }
    return n / d;
}

inline constexpr double lanczos_g = 6.024680040776729583740234375;

}  // namespace detail

/// Gamma function for x > 0. Relative error below 1e-13 on (0, 50].
inline double gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("x", "gamma requires a finite x > 0");
    if (x > 171.6) throw RangeError("gamma overflows for x > 171.6");
    // Small integers: (x-1)! is exact in double.
    if (x <= 23.0 && x == std::floor(x)) {
        double f = 1.0;
        for (double k = 2.0; k < x; k += 1.0) f *= k;
        return f;
    }
    // Tiny arguments: Gamma(x) = Gamma(x+1)/x keeps the Lanczos sum in its sweet spot.
    if (x < 1.0) return gamma(x + 1.0) / x;
    const double zgh = x + detail::lanczos_g - 0.5;
    const double half_power = std::pow(zgh, 0.5 * (x - 0.5));
    return detail::lanczos_sum(x) * (half_power / std::exp(zgh)) * half_power;
}

/// Gelfand-Shilov kernel omega_alpha(s) = s^(alpha-1) / Gamma(alpha).
inline double omega(double alpha, double s) {
    if (!(alpha > 0.0)) throw DomainError("alpha", "omega requires alpha > 0");
    if (!(s >= 0.0)) throw DomainError("s", "omega requires s >= 0");
    if (alpha == 1.0) return 1.0;
    if (s == 0.0) {
        if (alpha < 1.0) throw DomainError("s", "omega_alpha is singular at s = 0 for alpha < 1");
        return 0.0;
    }
    return std::pow(s, alpha - 1.0) / gamma(alpha);
}

struct MittagLefflerParams {
    double alpha = 0.5;
    double tol = 1e-14;
    std::size_t max_terms = 400;
};

/// One-parameter Mittag-Leffler function E_alpha(z) = sum_k z^k / Gamma(alpha k + 1), z >= 0.
///
/// Plain Taylor partial sums; stops once |term| <= tol |sum|. Throws
/// PrecisionError when max_terms is exhausted first.
inline double mittag_leffler(const MittagLefflerParams& params, double z) {
    if (!(params.alpha > 0.0 && params.alpha <= 1.0)) {
        throw DomainError("alpha", "Mittag-Leffler order must lie in (0, 1]");
    }
    if (!(params.tol > 0.0)) throw DomainError("tol", "tolerance must be positive");
    if (params.max_terms < 1) throw DomainError("max_terms", "need at least one term");
    if (!(z >= 0.0) || !std::isfinite(z)) throw DomainError("z", "argument must be finite and >= 0");

    double sum = 1.0;
    if (z == 0.0) return sum;
    const double log_z = std::log(z);
    double term = 1.0;
    for (std::size_t k = 1; k < params.max_terms; ++k) {
        const double arg = params.alpha * static_cast<double>(k) + 1.0;
        term = arg < 170.0 ? std::pow(z, static_cast<double>(k)) / gamma(arg)
                           : std::exp(static_cast<double>(k) * log_z - std::lgamma(arg));
        if (!std::isfinite(term)) break;
        sum += term;
        if (std::abs(term) <= params.tol * std::abs(sum)) return sum;
    }
    throw PrecisionError("Mittag-Leffler series did not converge within max_terms", std::abs(term));
}

inline double mittag_leffler(double alpha, double z) {
    return mittag_leffler(MittagLefflerParams{alpha, 1e-14, 400}, z);
}

}  // namespace caputo
