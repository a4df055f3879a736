#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "exclusia/errors.hpp"
#include "exclusia/process.hpp"

using namespace exclusia;

namespace {

ProcessParams make(double q, double a, double b, double g, double d, int L) {
    ProcessParams p;
    p.q = q;
    p.alpha = a;
    p.beta = b;
    p.gamma = g;
    p.delta = d;
    p.L = L;
    return p;
}

ProcessParams random_params(std::mt19937_64& rng, int L) {
    std::uniform_real_distribution<double> u(0.1, 2.0);
    return make(u(rng), u(rng), u(rng), u(rng), u(rng), L);
}

// Stationary vector of the uniformized chain I + Gamma / Lambda by plain
// power iteration; independent of the LU path in steady_state.
Eigen::VectorXd power_oracle(const MarkovGenerator& g) {
    Eigen::MatrixXd G(g.gamma);
    const double lam = 1.1 * G.diagonal().cwiseAbs().maxCoeff();
    const Eigen::MatrixXd P = Eigen::MatrixXd::Identity(G.rows(), G.cols()) + G / lam;
    Eigen::VectorXd x = Eigen::VectorXd::Constant(G.rows(), 1.0 / G.rows());
    for (int it = 0; it < 200000; ++it) {
        Eigen::VectorXd y = P * x;
        const double diff = (y - x).cwiseAbs().maxCoeff();
        x = y / y.sum();
        if (diff < 1e-17) break;
    }
    return x;
}

}  // namespace

TEST(Generator, TwoStateExchange) {
    const auto g = build_generator(make(1, 1, 1, 0, 0, 1));
    Eigen::MatrixXd G(g.gamma);
    Eigen::Matrix2d expect;
    expect << -1, 1, 1, -1;
    EXPECT_EQ(G, Eigen::MatrixXd(expect));
}

TEST(Generator, TasepTwoSitesHasFiveTransitions) {
    const auto g = build_generator(make(0, 1, 1, 0, 0, 2));
    Eigen::MatrixXd G(g.gamma);
    // index: site 1 is the high bit, so 00=0, 01=1, 10=2, 11=3; G(dest, src)
    Eigen::Matrix4d off = Eigen::Matrix4d::Zero();
    off(2, 0) = 1;  // 00 -> 10
    off(3, 1) = 1;  // 01 -> 11
    off(0, 1) = 1;  // 01 -> 00
    off(2, 3) = 1;  // 11 -> 10
    off(1, 2) = 1;  // 10 -> 01
    Eigen::MatrixXd got = G;
    got.diagonal().setZero();
    EXPECT_EQ(got, Eigen::MatrixXd(off));
}

TEST(Generator, ColumnSumsAndEventCount) {
    std::mt19937_64 rng(11);
    for (int L = 1; L <= 7; ++L) {
        const ProcessParams p = random_params(rng, L);
        const auto g = build_generator(p);
        Eigen::MatrixXd G(g.gamma);
        const double scale = G.cwiseAbs().maxCoeff();
        EXPECT_LT((Eigen::RowVectorXd::Ones(G.rows()) * G).cwiseAbs().maxCoeff(), 1e-14 * scale);
        std::size_t events = 0, offdiag = 0;
        for (std::uint64_t s = 0; s < g.dim(); ++s) {
            events += enabled_events(config_from_index(s, L), p).size();
            for (std::uint64_t t = 0; t < g.dim(); ++t) {
                if (s == t || G(t, s) == 0.0) continue;
                ++offdiag;
                EXPECT_GT(G(t, s), 0.0);
                // one boundary flip or one adjacent exchange
                const auto a = config_from_index(s, L), b = config_from_index(t, L);
                int first = -1, last = -1, count = 0;
                for (int i = 0; i < L; ++i)
                    if (a[i] != b[i]) {
                        if (first < 0) first = i;
                        last = i;
                        ++count;
                    }
                const bool boundary = count == 1 && (first == 0 || first == L - 1);
                const bool exchange = count == 2 && last == first + 1;
                EXPECT_TRUE(boundary || exchange);
            }
        }
        // at L = 1 both injections lead to the same target
        if (L > 1) EXPECT_EQ(events, offdiag);
        else EXPECT_EQ(offdiag, 2u);
    }
}

TEST(Generator, CapacityCap) {
    EXPECT_THROW(build_generator(make(1, 1, 1, 0, 0, 15)), CapacityError);
    EXPECT_THROW(build_generator(make(1, 1, 1, 0, 0, 9), 8), CapacityError);
}

TEST(Params, Validation) {
    EXPECT_THROW(make(-1, 1, 1, 0, 0, 2).validate(), ValidationError);
    EXPECT_THROW(make(1, -1, 1, 0, 0, 2).validate(), ValidationError);
    EXPECT_THROW(make(1, 1, 1, 0, 0, 0).validate(), ValidationError);
    EXPECT_THROW(make(1, 1, NAN, 0, 0, 2).validate(), ValidationError);
    EXPECT_NO_THROW(make(0, 1, 1, 0, 0, 2).validate());
}

TEST(ConfigIndex, RoundTrip) {
    for (std::uint64_t s = 0; s < 64; ++s) EXPECT_EQ(config_index(config_from_index(s, 6)), s);
    EXPECT_EQ(config_index({1, 0, 0}), 4u);
}

TEST(SteadyState, TwoState) {
    const auto ss = steady_state(build_generator(make(1, 1, 1, 0, 0, 1)));
    EXPECT_NEAR(ss.probs(0), 0.5, 1e-15);
    EXPECT_NEAR(ss.probs(1), 0.5, 1e-15);
}

TEST(SteadyState, TasepTwoSites) {
    const auto ss = steady_state(build_generator(make(0, 1, 1, 0, 0, 2)));
    const double expect[] = {0.2, 0.2, 0.4, 0.2};
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(ss.probs(i), expect[i], 1e-14);
}

TEST(SteadyState, SingleSiteGeneralRates) {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 20; ++k) {
        const ProcessParams p = random_params(rng, 1);
        const auto ss = steady_state(build_generator(p));
        EXPECT_NEAR(ss.probs(1), (p.alpha + p.delta) / (p.alpha + p.beta + p.gamma + p.delta), 1e-14);
    }
}

TEST(SteadyState, MatchesPowerIteration) {
    std::mt19937_64 rng(7);
    for (int L : {3, 5, 9}) {  // dense and sparse paths
        const ProcessParams p = random_params(rng, L);
        const auto g = build_generator(p);
        const auto ss = steady_state(g);
        const Eigen::VectorXd ref = power_oracle(g);
        EXPECT_LT((ss.probs - ref).cwiseAbs().maxCoeff(), 1e-11) << "L=" << L;
        EXPECT_NEAR(ss.probs.sum(), 1.0, 1e-12);
        EXPECT_GE(ss.probs.minCoeff(), 0.0);
        EXPECT_LE(ss.residual, 1e-12 * Eigen::MatrixXd(g.gamma).cwiseAbs().maxCoeff());
    }
}

TEST(SteadyState, GlobalBalance) {
    std::mt19937_64 rng(8);
    const ProcessParams p = random_params(rng, 10);
    const auto g = build_generator(p);
    const auto ss = steady_state(g);
    EXPECT_LT((g.gamma * ss.probs).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(SteadyState, ReducibleRejected) {
    // no injection anywhere: the empty chain absorbs
    EXPECT_FALSE(is_irreducible(make(1, 0, 1, 1, 0, 3)));
    EXPECT_THROW(steady_state(build_generator(make(1, 0, 1, 1, 0, 3))), ReducibleChainError);
    // no extraction anywhere
    EXPECT_THROW(steady_state(build_generator(make(0.5, 1, 0, 0, 1, 3))), ReducibleChainError);
    // TASEP with q = 0 and no right injection is still irreducible
    EXPECT_TRUE(is_irreducible(make(0, 1, 1, 0, 0, 4)));
    // injection and extraction at one boundary only
    EXPECT_TRUE(is_irreducible(make(1, 1, 0, 1, 0, 3)));
}

TEST(Observables, SsepTwoSites) {
    const auto r = exact_observables(make(1, 1, 1, 0, 0, 2));
    EXPECT_NEAR(r.densities[0], 2.0 / 3.0, 1e-14);
    EXPECT_NEAR(r.densities[1], 1.0 / 3.0, 1e-14);
    EXPECT_NEAR(r.current, 1.0 / 3.0, 1e-14);
}

TEST(Observables, TasepTwoSites) {
    const auto r = exact_observables(make(0, 1, 1, 0, 0, 2));
    EXPECT_NEAR(r.densities[0], 0.6, 1e-14);
    EXPECT_NEAR(r.densities[1], 0.4, 1e-14);
    EXPECT_NEAR(r.current, 0.4, 1e-14);
}

TEST(Observables, UniformCurrent) {
    std::mt19937_64 rng(9);
    for (int L = 1; L <= 8; ++L) {
        const auto r = exact_observables(random_params(rng, L));
        ASSERT_EQ(r.currents.size(), static_cast<std::size_t>(L + 1));
        EXPECT_LT(r.current_spread, 1e-10);
        for (double d : r.densities) {
            EXPECT_GE(d, 0.0);
            EXPECT_LE(d, 1.0);
        }
    }
}

TEST(Observables, ParticleHoleReflection) {
    std::mt19937_64 rng(10);
    for (int L = 1; L <= 6; ++L) {
        const ProcessParams p = random_params(rng, L);
        const auto a = exact_observables(p);
        const auto b = exact_observables(particle_hole_mirror(p));
        for (int i = 0; i < L; ++i) EXPECT_NEAR(a.densities[i], 1.0 - b.densities[L - 1 - i], 1e-12);
        EXPECT_NEAR(a.current, b.current, 1e-12);
    }
}

TEST(Events, Enumeration) {
    const ProcessParams tasep = make(0, 1, 1, 0, 0, 2);
    const auto ev = enabled_events({1, 0}, tasep);
    ASSERT_EQ(ev.size(), 1u);
    EXPECT_EQ(ev[0].kind, EventKind::HopRight);
    EXPECT_EQ(ev[0].rate, 1.0);

    const auto only = enabled_events({0, 0}, make(1, 0, 0, 0, 0.7, 2));
    ASSERT_EQ(only.size(), 1u);
    EXPECT_EQ(only[0].kind, EventKind::InjectRight);
    EXPECT_EQ(only[0].site, 2);
    EXPECT_EQ(only[0].rate, 0.7);

    Configuration c{0, 1};
    apply_event(c, Event{EventKind::HopLeft, 1, 0.5});
    EXPECT_EQ(c, (Configuration{1, 0}));
}

// ---- XXZ ----------------------------------------------------------------

TEST(Xxz, AnisotropyAndField) {
    const auto m1 = build_xxz(make(1, 0.3, 0.4, 0.1, 0.2, 2), 1.0);
    EXPECT_DOUBLE_EQ(m1.delta_q, -1.0);
    EXPECT_DOUBLE_EQ(m1.h, 0.0);
    const auto m2 = build_xxz(make(0.25, 0.3, 0.4, 0.1, 0.2, 2), 1.0);
    EXPECT_NEAR(m2.delta_q, -1.25, 1e-15);
    EXPECT_NEAR(m2.h, -0.75, 1e-15);
    EXPECT_THROW(build_xxz(make(0, 1, 1, 0, 0, 2), 1.0), ValidationError);
    EXPECT_THROW(build_xxz(make(0.5, 1, 1, 0, 0, 2), 0.0), ValidationError);
}

TEST(Xxz, BoundaryBlocks) {
    const double q = 0.36;
    const auto a = build_xxz(make(q, 0.3, 0.4, 0.1, 0.2, 2), 1.5);
    const auto b = build_xxz(make(q, 0.3, 0.4, 0.1, 0.2, 3), 1.5);
    EXPECT_EQ(a.b1, b.b1);
    EXPECT_NEAR(a.bL(0, 0), b.bL(0, 0), 1e-15);
    EXPECT_NEAR(a.bL(1, 1), b.bL(1, 1), 1e-15);
    EXPECT_NEAR(b.bL(1, 0) / a.bL(1, 0), std::sqrt(q), 1e-14);
    EXPECT_NEAR(b.bL(0, 1) / a.bL(0, 1), 1.0 / std::sqrt(q), 1e-14);
}

TEST(Xxz, SimilarityExample) {
    const auto s = similarity_residual(make(0.5, 0.3, 0.4, 0.1, 0.2, 2), 1.0);
    EXPECT_LT(s.residual, 1e-12);
    EXPECT_LT(s.spectrum_distance, 1e-10);
    EXPECT_EQ(s.candidate_residuals.size(), basis_candidates().size());
}

TEST(Xxz, SpectrumIndependentOfMu) {
    const ProcessParams p = make(0.4, 0.7, 0.2, 0.5, 0.9, 4);
    const auto a = sorted_spectrum(-std::sqrt(p.q) * build_xxz(p, 1.0).hamiltonian);
    const auto b = sorted_spectrum(-std::sqrt(p.q) * build_xxz(p, 2.0).hamiltonian);
    EXPECT_LT(spectrum_distance(a, b), 1e-10);
}

TEST(Xxz, SimilarityIsExactForRandomRates) {
    std::mt19937_64 rng(12);
    for (int L = 1; L <= 5; ++L) {
        ProcessParams p = random_params(rng, L);
        const auto s = similarity_residual(p, 0.7);
        EXPECT_LT(s.residual, 1e-10) << "L=" << L;
    }
}

TEST(Xxz, DenseCap) {
    EXPECT_THROW(similarity_residual(make(0.5, 1, 1, 0, 0, kDenseMaxSites + 1), 1.0), CapacityError);
}
