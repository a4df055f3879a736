#include <gtest/gtest.h>

#include <cmath>

#include "exclusia/errors.hpp"
#include "exclusia/kmc.hpp"

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

}  // namespace

TEST(Kmc, SingleSiteSymmetric) {
    kmc::TrajectoryConfig cfg;
    cfg.t_measure = 1e4;
    cfg.n_replicas = 16;
    cfg.seed = 2024;
    const auto e = kmc::estimate(make(1, 1, 1, 0, 0, 1), cfg);
    EXPECT_LT(std::abs(e.density_mean[0] - 0.5), 3 * e.density_stderr[0]);
    EXPECT_GT(e.events, 0u);
}

TEST(Kmc, TasepTwoSites) {
    kmc::TrajectoryConfig cfg;
    cfg.t_measure = 5e3;
    cfg.n_replicas = 16;
    cfg.seed = 99;
    const auto e = kmc::estimate(make(0, 1, 1, 0, 0, 2), cfg);
    EXPECT_LT(std::abs(e.density_mean[0] - 0.6), 3 * e.density_stderr[0]);
    EXPECT_LT(std::abs(e.density_mean[1] - 0.4), 3 * e.density_stderr[1]);
    EXPECT_LT(std::abs(e.current - 0.4), 3 * e.current_stderr);
}

TEST(Kmc, Deterministic) {
    kmc::TrajectoryConfig cfg;
    cfg.t_measure = 200;
    cfg.n_replicas = 4;
    cfg.seed = 7;
    const ProcessParams p = make(0.5, 0.8, 0.6, 0.2, 0.1, 4);
    const auto a = kmc::estimate(p, cfg);
    cfg.threads = 3;
    const auto b = kmc::estimate(p, cfg);
    EXPECT_EQ(a.density_mean, b.density_mean);
    EXPECT_EQ(a.density_stderr, b.density_stderr);
    EXPECT_EQ(a.current, b.current);
    EXPECT_EQ(a.events, b.events);
    cfg.seed = 8;
    const auto c = kmc::estimate(p, cfg);
    EXPECT_NE(a.density_mean, c.density_mean);
}

TEST(Kmc, BoundaryAndBulkCurrentsAgree) {
    kmc::TrajectoryConfig cfg;
    cfg.t_measure = 2e3;
    cfg.n_replicas = 16;
    cfg.seed = 3;
    const auto e = kmc::estimate(make(0.3, 0.9, 0.7, 0.1, 0.2, 5), cfg);
    auto close = [](double x, double sx, double y, double sy) {
        return std::abs(x - y) <= 3.0 * std::sqrt(sx * sx + sy * sy);
    };
    EXPECT_TRUE(close(e.current, e.current_stderr, e.current_left, e.current_left_stderr));
    EXPECT_TRUE(close(e.current, e.current_stderr, e.current_right, e.current_right_stderr));
}

// Consistency over a battery of seeds: the 3-sigma band should hold for the
// large majority of runs.
TEST(Kmc, SeedBattery) {
    const ProcessParams p = make(0.5, 1.0, 0.5, 0.25, 0.1, 3);
    const auto exact = exact_observables(p);
    int inside = 0, total = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        kmc::TrajectoryConfig cfg;
        cfg.t_measure = 200;
        cfg.n_replicas = 16;
        cfg.seed = seed;
        const auto e = kmc::estimate(p, cfg);
        for (int i = 0; i < p.L; ++i, ++total)
            inside += std::abs(e.density_mean[i] - exact.densities[i]) <= 3 * e.density_stderr[i];
        inside += std::abs(e.current - exact.current) <= 3 * e.current_stderr;
        ++total;
    }
    EXPECT_GE(inside, total - 2);
}

TEST(Kmc, HoldingTime) {
    const ProcessParams p = make(0.5, 0.8, 0.6, 0.2, 0.1, 4);
    const Configuration c{1, 0, 1, 1};
    double total = 0.0;
    for (const auto& e : enabled_events(c, p)) total += e.rate;
    const int n = 40000;
    const double mean = kmc::mean_holding_time(c, p, n, 17);
    // exponential: standard deviation equals the mean
    EXPECT_LT(std::abs(mean - 1.0 / total), 3.0 * (1.0 / total) / std::sqrt(n));
}

TEST(Kmc, ReplicaSeedsDiffer) {
    EXPECT_NE(kmc::replica_seed(1, 0), kmc::replica_seed(1, 1));
    EXPECT_NE(kmc::replica_seed(1, 0), kmc::replica_seed(2, 0));
    EXPECT_EQ(kmc::replica_seed(5, 3), kmc::replica_seed(5, 3));
}

TEST(Kmc, Validation) {
    kmc::TrajectoryConfig cfg;
    cfg.t_measure = 0;
    EXPECT_THROW(kmc::estimate(make(1, 1, 1, 0, 0, 2), cfg), ValidationError);
    cfg = {};
    cfg.n_replicas = 0;
    EXPECT_THROW(kmc::estimate(make(1, 1, 1, 0, 0, 2), cfg), ValidationError);
    cfg = {};
    EXPECT_THROW(kmc::estimate(make(1, 0, 1, 1, 0, 2), cfg), ReducibleChainError);
}

TEST(Kmc, DefaultBurnIn) {
    EXPECT_DOUBLE_EQ(kmc::default_burn_in(make(0.5, 0.25, 1, 0, 0, 4)), 10.0 * 4 / 0.25);
    EXPECT_DOUBLE_EQ(kmc::default_burn_in(make(0, 2, 3, 0, 0, 2)), 20.0);
}
