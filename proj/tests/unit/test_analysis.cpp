#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "caputo/analysis.hpp"

using namespace caputo;

TEST(DcsSum, Examples) {
    EXPECT_EQ(dcs_sum({1.0, 0.0, 0.0, 10}), 9.0);
    EXPECT_NEAR(dcs_sum({1.0, 1.0, 0.0, 4}), 6.0, 1e-13);
    EXPECT_THROW(dcs_sum({1.0, 0.0, 0.0, 1}), DomainError);
    EXPECT_THROW(dcs_sum({0.0, 0.0, 0.0, 4}), DomainError);
}

TEST(DcsSum, CountsExactly) {
    for (std::size_t n : {2u, 3u, 1000u, 65536u}) {
        for (double r : {0.3, 1.0, 2.5}) EXPECT_EQ(dcs_sum({r, 0.0, 0.0, n}), static_cast<double>(n - 1));
    }
}

TEST(DcsSum, MatchesLongDoubleDirectSum) {
    for (auto c : {DcsCase{0.3, -1.0, 2.0, 1000}, DcsCase{2.0, 0.5, 0.5, 777}, DcsCase{1.0, -2.0, 1.0, 500}}) {
        long double ref = 0.0L;
        const long double n = c.n;
        for (std::size_t k = 1; k < c.n; ++k) {
            const long double kl = k;
            ref += std::pow(std::pow(n, (long double)c.r) - std::pow(kl, (long double)c.r), (long double)c.p) *
                   std::pow(kl, (long double)c.q);
        }
        EXPECT_NEAR(dcs_sum(c) / static_cast<double>(ref), 1.0, 1e-12);
    }
}

TEST(DcsSum, OverflowIsRangeError) { EXPECT_THROW(dcs_sum({1.0, 400.0, 0.0, 100}), RangeError); }

TEST(DcsBound, BetaLimit) {
    const auto rep = dcs_bound({1.0, 0.5, 0.5, std::size_t{1} << 16});
    EXPECT_EQ(rep.regime, DcsRegime::AboveMinusOne);
    const double beta = std::tgamma(1.5) * std::tgamma(1.5) / std::tgamma(3.0);
    EXPECT_NEAR(beta, 0.3927, 1e-4);
    EXPECT_NEAR(rep.ratio / beta, 1.0, 0.02);
}

TEST(DcsBound, LogRegime) {
    const auto rep = dcs_bound({1.0, 1.0, -1.0, std::size_t{1} << 14});
    EXPECT_EQ(rep.regime, DcsRegime::AtMinusOne);
    EXPECT_GT(rep.ratio, 0.0);
    EXPECT_LT(rep.ratio, 2.0);
}

TEST(DcsBound, SteepRegime) {
    const DcsCase c{2.0, -1.0, -2.0, std::size_t{1} << 12};
    const auto rep = dcs_bound(c);
    EXPECT_EQ(rep.regime, DcsRegime::BelowMinusOne);
    EXPECT_NEAR(rep.bound, std::pow(static_cast<double>(c.n), -2.0), 1e-20);
}

TEST(DcsBound, RegimeSelectionTolerance) {
    EXPECT_EQ(dcs_regime(-1.0 + 1e-13, 3.0), DcsRegime::AtMinusOne);
    EXPECT_EQ(dcs_regime(-1.0 + 1e-9, 3.0), DcsRegime::AboveMinusOne);
    EXPECT_EQ(dcs_regime(-1.0 - 1e-9, 3.0), DcsRegime::BelowMinusOne);
    EXPECT_TRUE(dcs_bound({1.0, -1.0 + 1e-9, 1.0, 64}).near_boundary);
    EXPECT_FALSE(dcs_bound({1.0, -1.0, 1.0, 64}).near_boundary);
    EXPECT_EQ(to_string(DcsRegime::AtMinusOne), "min=-1");
}

TEST(DoublingScan, CountingCaseApproachesOne) {
    const auto scan = doubling_scan({1.0, 0.0, 0.0, 2}, 12);
    ASSERT_EQ(scan.reports.size(), 12u);
    double prev = 0.0;
    for (const auto& r : scan.reports) {
        EXPECT_GT(r.ratio, prev);
        EXPECT_LT(r.ratio, 1.0);
        prev = r.ratio;
    }
    EXPECT_NEAR(prev, 1.0 - 1.0 / 4096.0, 1e-15);
    EXPECT_FALSE(scan.unbounded);
}

TEST(DoublingScan, SnippetCaseStaysBounded) {
    const auto scan = doubling_scan({0.3, -1.0, 2.0, 2}, 16);
    EXPECT_FALSE(scan.unbounded);
    EXPECT_EQ(scan.reports.front().regime, DcsRegime::AtMinusOne);
    for (std::size_t j = 1; j < scan.reports.size(); ++j) {
        const double growth = scan.reports[j].ratio / scan.reports[j - 1].ratio;
        if (j >= 10) {
            EXPECT_LT(growth, 1.05) << "j=" << j + 1;
        }
    }
    const double last = scan.reports.back().ratio;
    EXPECT_GT(last, 0.1);
    EXPECT_LT(last, 10.0);
}

TEST(DoublingScan, RegimeOneConstant) {
    const auto scan = doubling_scan({2.0, 0.5, 0.5, 2}, 14);
    EXPECT_NEAR(scan.reports[13].ratio / scan.reports[12].ratio, 1.0, 0.05);
}

TEST(DoublingScan, FlagsGrowth) {
    const std::vector<double> growing{1.0, 2.1, 4.5};
    const std::vector<double> slowing{1.0, 2.1, 4.1};
    const std::vector<double> short_seq{1.0, 3.0};
    EXPECT_TRUE(grows_unboundedly(growing));
    EXPECT_FALSE(grows_unboundedly(slowing));
    EXPECT_FALSE(grows_unboundedly(short_seq));
    EXPECT_THROW(doubling_scan({1.0, 0.0, 0.0, 2}, 0), DomainError);
}

TEST(DcsProperty, RatiosBoundedUnderDoubling) {
    std::mt19937_64 gen(29);
    std::uniform_real_distribution<double> r_dist(0.3, 3.0);
    std::uniform_real_distribution<double> above(-0.9, 2.0);
    std::uniform_real_distribution<double> below(-3.0, -1.1);
    std::uniform_real_distribution<double> any(-0.5, 2.0);
    for (int trial = 0; trial < 60; ++trial) {
        const double r = r_dist(gen);
        DcsCase c;
        switch (trial % 3) {
            case 0: c = {r, above(gen), above(gen), 0}; break;
            case 1: c = trial % 2 ? DcsCase{r, -1.0, any(gen), 0} : DcsCase{r, any(gen), -1.0, 0}; break;
            default: c = trial % 2 ? DcsCase{r, below(gen), any(gen), 0} : DcsCase{r, any(gen), below(gen), 0}; break;
        }
        for (std::size_t n : {std::size_t{1} << 10, std::size_t{1} << 12}) {
            c.n = n;
            const double a = dcs_bound(c).ratio;
            c.n = 2 * n;
            const double b = dcs_bound(c).ratio;
            EXPECT_GE(a / b, 0.5) << "r=" << c.r << " p=" << c.p << " q=" << c.q << " n=" << n;
            EXPECT_LE(a / b, 2.0) << "r=" << c.r << " p=" << c.p << " q=" << c.q << " n=" << n;
        }
    }
}

TEST(ObservedOrder, Examples) {
    EXPECT_NEAR(observed_order(0.4, 0.1), 2.0, 1e-15);
    EXPECT_NEAR(observed_order(1.056e-01, 8.429e-02), 0.325, 5e-4);
    EXPECT_NEAR(observed_order(3.480e-03, 1.433e-03), 1.280, 5e-4);
    EXPECT_THROW(observed_order(0.0, 1.0), DomainError);
    EXPECT_THROW(observed_order(1.0, -1.0), DomainError);
}
