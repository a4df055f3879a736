#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "exclusia/errors.hpp"
#include "exclusia/orthopoly.hpp"

using namespace exclusia;
using namespace exclusia::orthopoly;

TEST(Laguerre, LowDegrees) {
    for (double lambda : {-0.5, 0.0, 2.0})
        for (double x : {0.0, 0.7, 3.0}) {
            EXPECT_EQ(laguerre_eval(0, lambda, x), 1.0);
            EXPECT_NEAR(laguerre_eval(1, lambda, x), lambda + 1 - x, 1e-15);
            // closed form of degree 2
            const double l2 = (x * x - 2 * (lambda + 2) * x + (lambda + 1) * (lambda + 2)) / 2;
            EXPECT_NEAR(laguerre_eval(2, lambda, x), l2, 1e-13);
        }
    EXPECT_DOUBLE_EQ(laguerre_eval(2, 0.0, 0.0), 1.0);
}

TEST(Laguerre, ValueAtZero) {
    // L_n^(lambda)(0) = binom(n + lambda, n)
    for (int n = 0; n <= 12; ++n) {
        const double expected = std::exp(std::lgamma(n + 1.7 + 1) - std::lgamma(1.7 + 1) - std::lgamma(n + 1.0));
        EXPECT_NEAR(laguerre_eval(n, 1.7, 0.0), expected, 1e-11 * expected);
    }
}

TEST(Laguerre, Orthogonality) {
    const auto a = laguerre_orthogonality_check(0, 0, 0.0);
    EXPECT_NEAR(a.integral, 1.0, 1e-14);
    for (double lambda : {-0.5, 0.0, 1.0, 2.7})
        EXPECT_NEAR(laguerre_orthogonality_check(0, 1, lambda).integral, 0.0, 1e-12);
    const auto c = laguerre_orthogonality_check(3, 3, 1.5);
    EXPECT_NEAR(c.integral, std::tgamma(5.5) / 6.0, 1e-10);
    EXPECT_NEAR(c.expected, std::tgamma(5.5) / 6.0, 1e-12);
    EXPECT_LT(c.deviation, 1e-10);
}

TEST(Laguerre, GramIsIdentity) {
    for (double lambda : {-0.5, 0.0, 1.0, 2.7}) {
        const auto g = laguerre_gram(10, lambda);
        ASSERT_EQ(g.size(), 11u);
        for (int m = 0; m <= 10; ++m)
            for (int n = 0; n <= 10; ++n) EXPECT_NEAR(g[m][n], m == n ? 1.0 : 0.0, 1e-10) << m << " " << n;
    }
}

TEST(Laguerre, QuadratureMoments) {
    // sum of weights is Gamma(lambda+1); first moment is Gamma(lambda+2)
    const auto r = gauss_laguerre(8, 0.5);
    double s0 = 0, s1 = 0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        s0 += r.weights[i];
        s1 += r.weights[i] * r.nodes[i];
        EXPECT_GT(r.nodes[i], 0.0);
    }
    EXPECT_NEAR(s0, std::tgamma(1.5), 1e-13);
    EXPECT_NEAR(s1, std::tgamma(2.5), 1e-12);
}

TEST(Laguerre, Validation) {
    EXPECT_THROW(laguerre_eval(2, -1.0, 0.3), ValidationError);
    EXPECT_THROW(laguerre_eval(-1, 0.0, 0.3), ValidationError);
    EXPECT_THROW(laguerre_orthogonality_check(41, 0, 0.0), ValidationError);
    EXPECT_THROW(gauss_laguerre(0, 0.0), ValidationError);
}

TEST(Lambda, Examples) {
    EXPECT_DOUBLE_EQ(lambda_from_rates(1, 1, 0, 0), 1.0);
    EXPECT_DOUBLE_EQ(lambda_from_rates(1, 1, 1, 1), 0.0);
    const double l = lambda_from_rates(0.3, 1.2, 0.7, 2.0);
    for (double c : {0.5, 3.0})
        EXPECT_NEAR(lambda_from_rates(c * 0.3, c * 1.2, c * 0.7, c * 2.0), (l + 1) / c - 1, 1e-14);
    EXPECT_THROW(lambda_from_rates(0, 1, 0, 1), ValidationError);
    EXPECT_THROW(lambda_from_rates(1, 0, 1, 0), ValidationError);
}

TEST(Kappa, RootIdentityAndOrdering) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.01, 3.0), uq(0.0, 0.999);
    for (int k = 0; k < 100; ++k) {
        const double nu = u(rng), tau = u(rng), q = uq(rng);
        const double kp = kappa(nu, tau, q, KappaBranch::Plus);
        const double km = kappa(nu, tau, q, KappaBranch::Minus);
        for (double x : {kp, km}) {
            const double scale = std::max({std::abs(nu * x * x), std::abs((nu - tau - (1 - q)) * x), tau});
            EXPECT_LT(std::abs(nu * x * x + (nu - tau - (1 - q)) * x - tau) / scale, 1e-12);
        }
        EXPECT_GE(kp, km);
        EXPECT_NEAR(kp * km, -tau / nu, 1e-12 * std::max(1.0, tau / nu));
    }
}

TEST(Kappa, TasepLimit) {
    for (double a : {0.2, 0.5, 0.9}) {
        EXPECT_NEAR(kappa(a, 0.0, 0.0, KappaBranch::Plus), (1 - a) / a, 1e-14);
        EXPECT_EQ(kappa(a, 0.0, 0.0, KappaBranch::Minus), 0.0);
    }
    EXPECT_THROW(kappa(0.0, 1.0, 0.5, KappaBranch::Plus), ValidationError);
}

TEST(Kappa, FlippedTau) {
    const double nu = 1.3, tau = 0.05, q = 0.4;
    const double k = kappa(nu, tau, q, KappaBranch::Plus, true);
    EXPECT_NEAR(nu * k * k + (nu + tau - (1 - q)) * k + tau, 0.0, 1e-13);
}

TEST(Kappa, AwParameters) {
    const auto p = aw_parameters(0.8, 1.1, 0.3, 0.4, 0.5);
    EXPECT_DOUBLE_EQ(p.a, kappa(0.8, 0.3, 0.5, KappaBranch::Plus));
    EXPECT_DOUBLE_EQ(p.b, kappa(1.1, 0.4, 0.5, KappaBranch::Plus));
    EXPECT_DOUBLE_EQ(p.c, kappa(0.8, 0.3, 0.5, KappaBranch::Minus));
    EXPECT_DOUBLE_EQ(p.d, kappa(1.1, 0.4, 0.5, KappaBranch::Minus));
    EXPECT_NEAR(p.a * p.c, -0.3 / 0.8, 1e-14);
    EXPECT_FALSE(p.provenance.empty());
}

TEST(MeixnerPollaczek, LowDegrees) {
    for (double mu : {0.5, 1.2})
        for (double phi : {0.3, 1.5, 2.8})
            for (double x : {-1.0, 0.0, 2.5}) {
                const auto p0 = meixner_pollaczek_eval(0, mu, x, phi);
                EXPECT_NEAR(p0.real(), 1.0, 1e-15);
                const auto p1 = meixner_pollaczek_eval(1, mu, x, phi);
                EXPECT_NEAR(p1.real(), 2 * (mu * std::cos(phi) + x * std::sin(phi)), 1e-13);
                EXPECT_LT(std::abs(p1.imag()), 1e-12);
            }
}

TEST(MeixnerPollaczek, SumMatchesRecurrence) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> umu(0.1, 3.0), uphi(0.1, 3.0), ux(-3.0, 3.0);
    for (int k = 0; k < 40; ++k) {
        const double mu = umu(rng), phi = uphi(rng), x = ux(rng);
        for (int n : {2, 5, 9}) {
            const auto direct = meixner_pollaczek_eval(n, mu, x, phi);
            const double rec = meixner_pollaczek_recurrence(n, mu, x, phi);
            const double scale = std::max(1.0, std::abs(rec));
            EXPECT_LT(std::abs(direct.real() - rec) / scale, 1e-9) << n;
            EXPECT_LT(std::abs(direct.imag()) / scale, 1e-9);
        }
    }
}

// Every correction to the limit is even in phi, so the error falls like phi^2.
TEST(MeixnerPollaczek, LaguerreLimit) {
    for (double lambda : {0.0, 1.5})
        for (int n : {1, 3, 5}) {
            const double e2 = meixner_pollaczek_limit_error(n, lambda, 1.3, 1e-2);
            const double e3 = meixner_pollaczek_limit_error(n, lambda, 1.3, 1e-3);
            const double ratio = e2 / e3;
            EXPECT_GT(ratio, 100.0 / 5) << n;
            EXPECT_LT(ratio, 100.0 * 5) << n;
        }
}

TEST(MeixnerPollaczek, Validation) {
    EXPECT_THROW(meixner_pollaczek_eval(31, 1.0, 0.0, 1.0), ValidationError);
    EXPECT_THROW(meixner_pollaczek_eval(2, 0.0, 0.0, 1.0), ValidationError);
}
