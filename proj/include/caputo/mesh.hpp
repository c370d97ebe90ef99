#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "caputo/errors.hpp"

namespace caputo {

/// Temporal grid 0 = t_0 < t_1 < ... < t_N = T.
///
/// Steps are always the differences of stored nodes, so tau(k) == t(k) - t(k-1)
/// holds bit-for-bit. Immutable after construction.
class Mesh {
public:
    /// Validates and takes ownership of the nodes.
    explicit Mesh(std::vector<double> nodes) : nodes_(std::move(nodes)) {
        if (nodes_.size() < 2) {
            throw ValidationError(nodes_.size(), "a mesh needs at least two nodes");
        }
        if (nodes_.front() != 0.0) {
            throw ValidationError(0, "first node must be 0");
        }
        steps_.resize(nodes_.size());
        steps_[0] = 0.0;
        for (std::size_t k = 1; k < nodes_.size(); ++k) {
            if (!(nodes_[k] > nodes_[k - 1]) || !std::isfinite(nodes_[k])) {
                throw ValidationError(k, "nodes must be finite and strictly increasing");
            }
            steps_[k] = nodes_[k] - nodes_[k - 1];
        }
    }

    /// Number of steps N.
    std::size_t size() const noexcept { return nodes_.size() - 1; }
    double horizon() const noexcept { return nodes_.back(); }

    /// Node t_k, 0 <= k <= N.
    double t(std::size_t k) const noexcept { return nodes_[k]; }
    /// Step tau_k = t_k - t_{k-1}, 1 <= k <= N.
    double tau(std::size_t k) const noexcept { return steps_[k]; }

    std::span<const double> nodes() const noexcept { return nodes_; }
    /// Steps tau_1..tau_N.
    std::span<const double> steps() const noexcept {
        return std::span<const double>(steps_).subspan(1);
    }

    /// Prefix mesh t_0..t_n (same node values).
    Mesh truncated(std::size_t n) const {
        if (n == 0 || n > size()) throw DomainError("n", "prefix length out of range");
        return Mesh(std::vector<double>(nodes_.begin(), nodes_.begin() + static_cast<std::ptrdiff_t>(n) + 1));
    }

    friend bool operator==(const Mesh&, const Mesh&) = default;

private:
    std::vector<double> nodes_;
    std::vector<double> steps_;  // steps_[0] unused
};

struct MeshStats {
    double rho = 1.0;      ///< max adjacent ratio tau_{n+1}/tau_n
    double tau_max = 0.0;
    double tau_min = 0.0;
};

/// t_n = T (n/N)^r. Nodes come straight from the formula, never by accumulation.
inline Mesh graded_mesh(double T, std::size_t N, double r) {
    if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("T", "horizon must be positive");
    if (N == 0) throw DomainError("N", "number of steps must be at least 1");
    if (!(r >= 1.0) || !std::isfinite(r)) throw DomainError("r", "grading exponent must be >= 1");
    std::vector<double> nodes(N + 1);
    const auto n_steps = static_cast<double>(N);
    for (std::size_t n = 0; n <= N; ++n) {
        const double x = static_cast<double>(n) / n_steps;
        nodes[n] = r == 1.0 ? T * x : T * std::pow(x, r);
    }
    nodes[N] = T;
    return Mesh(std::move(nodes));
}

inline Mesh uniform_mesh(double T, std::size_t N) { return graded_mesh(T, N, 1.0); }

/// Smooth oscillating steps tau_k = 0.4 sin(3 k pi / n) + 0.41; horizon is their sum.
inline Mesh sin_mesh(std::size_t n) {
    if (n == 0) throw DomainError("n", "number of steps must be at least 1");
    std::vector<double> nodes(n + 1, 0.0);
    const auto nn = static_cast<double>(n);
    for (std::size_t k = 1; k <= n; ++k) {
        const double step = 0.4 * std::sin(3.0 * static_cast<double>(k) * std::numbers::pi / nn) + 0.41;
        nodes[k] = nodes[k - 1] + step;
    }
    return Mesh(std::move(nodes));
}

/// User-supplied nodes; throws ValidationError at the first violating index.
inline Mesh custom_mesh(std::vector<double> nodes) { return Mesh(std::move(nodes)); }

inline MeshStats mesh_stats(const Mesh& mesh) {
    const auto steps = mesh.steps();
    MeshStats s;
    s.tau_max = *std::max_element(steps.begin(), steps.end());
    s.tau_min = *std::min_element(steps.begin(), steps.end());
    if (steps.size() < 2) return s;
    s.rho = 0.0;
    for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
        s.rho = std::max(s.rho, steps[i + 1] / steps[i]);
    }
    return s;
}

}  // namespace caputo
