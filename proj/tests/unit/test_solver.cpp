#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "caputo/analysis.hpp"
#include "caputo/gronwall.hpp"
#include "caputo/solver.hpp"
#include "oracles.hpp"

using namespace caputo;

namespace {

double end_error(double alpha, double beta, double r, std::size_t N) {
    return solve_ode({alpha, beta, 1.0, graded_mesh(1.0, N, r)}).errors.back();
}

/// Predicted end-level order in N, with the (1 + ln N) factor at r = r* applied locally.
double predicted_end_order(double alpha, double beta, double r, std::size_t N) {
    const double r_star = (2.0 - alpha) / (1.0 + beta - alpha);
    if (std::abs(r - r_star) < 1e-9) {
        const double n = static_cast<double>(N);
        return (2.0 - alpha) - std::log2((1.0 + std::log(n)) / (1.0 + std::log(n / 2.0)));
    }
    return std::min(r * (1.0 + beta - alpha), 2.0 - alpha);
}

}  // namespace

TEST(OdeProblem, ManufacturedPair) {
    // kappa = 0, beta = alpha: f = omega_1 = 1 and u = omega_{1+alpha}.
    const OdeProblem p{0.4, 0.4, 0.0, uniform_mesh(1.0, 4)};
    EXPECT_NEAR(p.source(0.3), 1.0, 1e-15);
    EXPECT_NEAR(p.exact(0.3), std::pow(0.3, 0.4) / std::tgamma(1.4), 1e-15);
    EXPECT_THROW((OdeProblem{0.4, 1.0, 1.0, uniform_mesh(1.0, 2)}.validate()), DomainError);
    EXPECT_THROW((OdeProblem{1.2, 0.5, 1.0, uniform_mesh(1.0, 2)}.validate()), DomainError);
}

TEST(SolveOde, TrajectoryShape) {
    const auto tr = solve_ode({0.5, 0.5, 1.0, graded_mesh(1.0, 10, 2.0)});
    ASSERT_EQ(tr.values.size(), 11u);
    ASSERT_EQ(tr.errors.size(), 11u);
    ASSERT_EQ(tr.times.size(), 11u);
    EXPECT_EQ(tr.values[0][0], 0.0);
    EXPECT_EQ(tr.errors[0], 0.0);
    for (double e : tr.errors) EXPECT_GE(e, 0.0);
}

TEST(SolveOde, ReproducesPrintedEndingLevel) {
    // Printed Table values, reproduced with alpha = 0.6, beta = 0.3, kappa = 1.
    const double e256 = end_error(0.6, 0.3, 3.0, 256);
    const double e512 = end_error(0.6, 0.3, 3.0, 512);
    EXPECT_NEAR(e512, 8.466e-04, 0.0005e-04);
    EXPECT_NEAR(observed_order(e256, e512), 1.399, 5e-4);
    const auto begin = solve_ode({0.6, 0.3, 1.0, uniform_mesh(1.0, 64)}).errors[1];
    EXPECT_NEAR(begin, 1.335e-01, 0.0005e-01);
}

TEST(SolveOde, StepSizeError) {
    try {
        solve_ode({0.5, 0.5, 2.0, uniform_mesh(4.0, 4)});
        FAIL();
    } catch (const StepSizeError& e) {
        EXPECT_EQ(e.level(), 1u);
    }
}

TEST(SolveOde, SmoothSolutionRate) {
    for (double a : {0.3, 0.6}) {
        const double e1 = solve_ode({a, 2.0, 1.0, uniform_mesh(1.0, 256)}).errors.back();
        const double e2 = solve_ode({a, 2.0, 1.0, uniform_mesh(1.0, 512)}).errors.back();
        EXPECT_GE(observed_order(e1, e2), 2.0 - a - 0.1) << "alpha=" << a;
    }
}

TEST(SolveOde, PointwiseRegimes) {
    // Both the reproducing pair (0.6, 0.3) and the captioned pair (0.3, 0.6).
    for (auto [alpha, beta] : {std::pair{0.6, 0.3}, std::pair{0.3, 0.6}}) {
        const double r_star = (2.0 - alpha) / (1.0 + beta - alpha);
        for (double r : {1.0, r_star, r_star + 1.0}) {
            const double order = observed_order(end_error(alpha, beta, r, 256), end_error(alpha, beta, r, 512));
            EXPECT_NEAR(order, predicted_end_order(alpha, beta, r, 512), 0.1)
                << "alpha=" << alpha << " beta=" << beta << " r=" << r;
        }
    }
}

// With F_n = |f(t_n)| the solution overshoots the fractional Gronwall bound:
// the bound inherits p <= p~ and samples the singular source at right endpoints.
TEST(SolveOde, StabilityMirrorIsViolated) {
    const OdeProblem p{0.6, 0.3, 1.0, graded_mesh(1.0, 64, 2.0)};
    const auto tr = solve_ode(p);
    GronwallInput in;
    in.mesh = p.mesh;
    in.alpha = p.alpha;
    in.kappa = p.kappa;
    for (std::size_t n = 1; n <= 64; ++n) in.f.push_back(std::abs(p.source(p.mesh.t(n))));
    double worst = 0.0;
    for (std::size_t n = 1; n <= 64; ++n) worst = std::min(worst, gronwall_bound(in, n) - tr.values[n][0]);
    EXPECT_LT(worst, -0.05);
}

TEST(SolveLinearScalar, ConstantSourceFromZero) {
    // D^alpha u = 1 has u = omega_{1+alpha}; L1 error is small on a fine graded mesh.
    const auto m = graded_mesh(1.0, 512, 2.0);
    const auto u = solve_linear_scalar(m, 0.5, 0.0, [](double) { return 1.0; });
    EXPECT_NEAR(u.back(), 1.0 / std::tgamma(1.5), 2e-4);
}

TEST(SolvePde, ReproducesPrintedBeginningLevel) {
    const auto tr = solve_pde({0.6, 0.3, 1.0, uniform_mesh(1.0, 64), 1024});
    EXPECT_NEAR(tr.errors[1], 2.192e-01, 0.0005e-01);
    EXPECT_EQ(tr.values.front().size(), 1023u);
}

TEST(SolvePde, ModalAmplitudeFollowsScalarSolve) {
    const std::size_t M = 64;
    const PdeProblem p{0.5, 0.5, 1.0, graded_mesh(1.0, 32, 2.0), M};
    const auto tr = solve_pde(p);
    const double h = p.h();
    const double lambda = 4.0 * std::pow(std::sin(0.5 * h), 2) / (h * h);
    auto g = [&](double t) { return omega(1.0 + p.beta - p.alpha, t) + (1.0 - p.kappa) * omega(1.0 + p.beta, t); };
    const auto amp = solve_linear_scalar(p.mesh, p.alpha, p.kappa - lambda, g);
    const std::size_t i = M / 4 - 1;  // x_{M/4} = -pi/2
    EXPECT_NEAR(p.x(i + 1), -std::numbers::pi / 2.0, 1e-14);
    for (std::size_t n = 1; n <= 32; ++n) {
        EXPECT_NEAR(tr.values[n][i] / std::sin(p.x(i + 1)), amp[n], 1e-8) << "n=" << n;
    }
}

TEST(SolvePde, Validation) {
    EXPECT_THROW(solve_pde({0.5, 0.5, 1.0, uniform_mesh(1.0, 4), 1}), DomainError);
}

TEST(TruncationBound, SmoothCase) {
    const auto m = graded_mesh(1.0, 12, 1.5);
    const OdeProblem p{0.4, 2.0, 1.0, m};
    for (std::size_t n : {1u, 5u, 12u}) {
        const auto row = l1_row(m, 0.4, n);
        double ref = row[0] * m.tau(n) * m.tau(n);
        for (std::size_t k = 1; k < n; ++k) ref += (row[n - k - 1] - row[n - k]) * m.tau(k) * m.tau(k);
        EXPECT_NEAR(truncation_bound(p, n) / ref, 1.0, 1e-13);
    }
}

TEST(TruncationBound, FirstLevelClosedForm) {
    const auto m = graded_mesh(1.0, 16, 2.0);
    for (double beta : {0.3, 0.6, 1.5}) {
        const OdeProblem p{0.3, beta, 1.0, m};
        const double u2 = 1.0 / std::abs(std::tgamma(beta - 1.0));
        const double ref = l1_row(m, 0.3, 1)[0] * 2.0 * u2 * std::pow(m.tau(1), beta) / beta;
        EXPECT_NEAR(truncation_bound(p, 1) / ref, 1.0, 1e-13) << "beta=" << beta;
    }
}

TEST(TruncationBound, WeightsAgainstQuadrature) {
    const auto m = graded_mesh(1.0, 32, 2.0);
    const OdeProblem p{0.3, 0.6, 1.0, m};
    const auto row = l1_row(m, 0.3, 32);
    auto G = [&](std::size_t k) {
        return 2.0 * oracle::integrate(
                         [&](double t) {
                             // log form avoids t^{beta-2} overflowing next to t = 0
                             const double dt = t - m.t(k - 1);
                             if (dt <= 0.0) return 0.0;
                             return std::exp(std::log(dt) + (0.6 - 2.0) * std::log(t)) / std::abs(std::tgamma(0.6 - 1.0));
                         },
                         m.t(k - 1), m.t(k));
    };
    double ref = row[0] * G(32);
    for (std::size_t k = 1; k < 32; ++k) ref += (row[32 - k - 1] - row[32 - k]) * G(k);
    const double b32 = truncation_bound(p, 32);
    EXPECT_NEAR(b32 / ref, 1.0, 1e-10);
    EXPECT_TRUE(std::isfinite(b32));
    const OdeProblem fine{0.3, 0.6, 1.0, graded_mesh(1.0, 64, 2.0)};
    EXPECT_LT(truncation_bound(fine, 64), b32);
}

TEST(TruncationBound, PdeScalesByDiscreteNorm) {
    const PdeProblem p{0.5, 0.5, 1.0, uniform_mesh(1.0, 8), 256};
    // h * sum sin^2(x_i) = pi on the uniform grid.
    EXPECT_NEAR(truncation_bound(p, 8) / truncation_bound(p.as_ode(), 8), std::sqrt(std::numbers::pi), 1e-12);
}
