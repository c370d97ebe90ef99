#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "caputo/dcc.hpp"
#include "caputo/errors.hpp"
#include "caputo/kernels.hpp"
#include "caputo/mesh.hpp"
#include "caputo/special_functions.hpp"

namespace caputo {

/// Which node feeds the Mittag-Leffler factor: t_n (theorem statement) or t_{n-1} (end of its proof).
enum class NodeChoice { Current, Previous };

/// Data of the discrete inequality D_tau^alpha V_n <= kappa V_n + F_n.
struct GronwallInput {
    double v0 = 0.0;
    std::vector<double> f;  ///< F_1..F_N, f[j-1] = F_j
    double kappa = 1.0;
    double alpha = 0.5;
    Mesh mesh = uniform_mesh(1.0, 1);
    NodeChoice node_choice = NodeChoice::Current;

    void validate() const {
        if (!(v0 >= 0.0)) throw DomainError("v0", "initial value must be >= 0");
        if (!(kappa > 0.0)) throw DomainError("kappa", "kappa must be > 0");
        if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("alpha", "order must lie in (0, 1]");
        if (f.size() != mesh.size()) throw DomainError("f", "need one forcing value per mesh step");
        for (std::size_t j = 0; j < f.size(); ++j) {
            if (!(f[j] >= 0.0)) throw ValidationError(j + 1, "forcing values must be >= 0");
        }
    }
};

/// E_alpha(kappa t^alpha) (V_0 + max_{1<=nu<=n} sum_{j<=nu} p~^{(n)}_{n-j} F_j).
inline double gronwall_bound(const GronwallInput& input, std::size_t n) {
    input.validate();
    detail::check_level(input.mesh, n);
    const auto weights = dcc_surrogate(input.mesh, input.alpha, n);
    // Partial sums need not be monotone in nu, so keep a running maximum.
    double partial = 0.0;
    double best = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
        partial += weights[j - 1] * input.f[j - 1];
        best = std::max(best, partial);
    }
    const double t = input.node_choice == NodeChoice::Current ? input.mesh.t(n) : input.mesh.t(n - 1);
    const double growth = mittag_leffler(input.alpha, input.kappa * std::pow(t, input.alpha));
    return growth * (input.v0 + best);
}

/// Classical limit exp(kappa t_n) (V_0 + sum_{j<=n} tau_j F_j).
inline double exponential_limit_bound(const GronwallInput& input, std::size_t n) {
    input.validate();
    detail::check_level(input.mesh, n);
    double s = 0.0;
    for (std::size_t j = 1; j <= n; ++j) s += input.mesh.tau(j) * input.f[j - 1];
    const double t = input.node_choice == NodeChoice::Current ? input.mesh.t(n) : input.mesh.t(n - 1);
    return std::exp(input.kappa * t) * (input.v0 + s);
}

/// Sequence satisfying D_tau^alpha V_n = kappa V_n + F_n with the L1 kernels, V_0 given.
inline std::vector<double> equality_sequence(const GronwallInput& input) {
    input.validate();
    if (!(input.alpha < 1.0)) throw DomainError("alpha", "L1 kernels need alpha < 1");
    const std::size_t N = input.mesh.size();
    std::vector<double> v(N + 1, 0.0);
    v[0] = input.v0;
    for (std::size_t n = 1; n <= N; ++n) {
        const auto row = l1_row(input.mesh, input.alpha, n);
        const double lead = row[0] - input.kappa;
        if (!(lead > 0.0)) throw StepSizeError(n, "a_0 <= kappa, implicit step is not solvable");
        double history = 0.0;
        for (std::size_t k = 1; k < n; ++k) history += row.at_k(k) * (v[k] - v[k - 1]);
        v[n] = (input.f[n - 1] + row[0] * v[n - 1] - history) / lead;
    }
    return v;
}

struct GronwallLevel {
    std::size_t n = 0;
    double value = 0.0;  ///< V_n
    double bound = 0.0;
    double slack = 0.0;  ///< bound - V_n
};

/// Equality sequence and bound for every level 1..N.
inline std::vector<GronwallLevel> gronwall_profile(const GronwallInput& input) {
    const auto v = equality_sequence(input);
    std::vector<GronwallLevel> out;
    out.reserve(input.mesh.size());
    for (std::size_t n = 1; n <= input.mesh.size(); ++n) {
        const double b = gronwall_bound(input, n);
        out.push_back({n, v[n], b, b - v[n]});
    }
    return out;
}

}  // namespace caputo
