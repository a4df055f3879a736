#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "exclusia/charges.hpp"
#include "exclusia/errors.hpp"

using namespace exclusia;
using namespace exclusia::charges;
using algebra::commutator;
using algebra::inf_norm;

namespace {

ProcessParams rates(double a, double b, double g, double d) {
    ProcessParams p;
    p.q = 1.0;
    p.alpha = a;
    p.beta = b;
    p.gamma = g;
    p.delta = d;
    p.L = 1;
    return p;
}

}  // namespace

TEST(Charges, CommutingGenerators) {
    const Matrix A = Eigen::Vector3d(1, -2, 0.5).asDiagonal();
    const Matrix As = Eigen::Vector3d(0.3, 4, -1).asDiagonal();
    const auto cs = charge_sequence(A, As, 2.0, 2.0, 1.0, 0.7, 3);
    ASSERT_EQ(cs.R.size(), 4u);
    ASSERT_EQ(cs.Q.size(), 4u);
    EXPECT_EQ(cs.R[0], A);
    EXPECT_EQ(cs.Rtilde[0], As);
    EXPECT_EQ(cs.R[1], Matrix(-As));
    EXPECT_EQ(cs.Rtilde[1], Matrix(-A));
    EXPECT_EQ(cs.Q[0], cs.H);
    EXPECT_EQ(max_commutator(cs), 0.0);
}

TEST(Charges, SpinHalfExample) {
    const auto cs = ssep_charge_sequence(rates(1, 1, 1, 1), 0.5, 1.0, 1.0, 1);
    EXPECT_LT(inf_norm(commutator(cs.Q[0], cs.Q[1])), 1e-12);
}

TEST(Charges, RandomRatesCommute) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.2, 2.0);
    for (int k = 0; k < 6; ++k) {
        const ProcessParams p = rates(u(rng), u(rng), u(rng), u(rng));
        for (double j : {0.5, 1.0, 2.0, 3.5, 5.0}) {
            const auto cs = ssep_charge_sequence(p, j, u(rng), u(rng), 3);
            EXPECT_LE(max_commutator(cs), 1e-10) << "j=" << j;
        }
    }
}

TEST(Charges, DoublePrecisionInput) {
    const ProcessParams p = rates(0.6, 1.3, 0.9, 0.4);
    const auto rep = algebra::build_uq_su2_rep(1.5, 1.0);
    const auto bp = algebra::build_boundary_ops_ssep(rep, p, 1.0);
    const double rho = std::pow(p.beta + p.delta, 2), rho_star = std::pow(p.alpha + p.gamma, 2);
    const auto cs = charge_sequence(bp.A, bp.Astar, rho, rho_star, 1.0, 0.5, 3);
    EXPECT_LE(max_commutator(cs), 1e-10);
    EXPECT_NEAR(cs.astar_scale, (p.beta + p.delta) / (p.alpha + p.gamma), 1e-15);
}

TEST(Charges, WrongRecursionConstantFails) {
    // halving rho breaks commutation
    const ProcessParams p = rates(0.6, 1.3, 0.9, 0.4);
    const auto rep = algebra::build_uq_su2_rep(1.5, 1.0);
    const auto bp = algebra::build_boundary_ops_ssep(rep, p, 1.0);
    const double rho = std::pow(p.beta + p.delta, 2), rho_star = std::pow(p.alpha + p.gamma, 2);
    const auto cs = charge_sequence(bp.A, bp.Astar, rho / 2, rho_star / 2, 1.0, 0.5, 3);
    EXPECT_GT(max_commutator(cs), 1e-3);
}

TEST(Charges, Duality) {
    // rho = rho* so no rescale is involved
    const ProcessParams p = rates(0.7, 0.4, 0.5, 0.8);
    const auto rep = algebra::build_uq_su2_rep(2.0, 1.0);
    const auto bp = algebra::build_boundary_ops_ssep(rep, p, 1.0);
    const double rho = std::pow(p.beta + p.delta, 2);
    const auto a = charge_sequence(bp.A, bp.Astar, rho, rho, 1.0, 0.3, 3);
    const auto b = charge_sequence(bp.Astar, bp.A, rho, rho, 0.3, 1.0, 3);
    for (int n = 0; n <= 3; ++n) {
        const double s = std::max(1.0, inf_norm(a.R[n]));
        EXPECT_LT(inf_norm(a.R[n] - b.Rtilde[n]) / s, 1e-13);
        EXPECT_LT(inf_norm(a.Rtilde[n] - b.R[n]) / s, 1e-13);
        EXPECT_LT(inf_norm(a.Q[n] - b.Q[n]) / std::max(1.0, inf_norm(a.Q[n])), 1e-13);
    }
}

TEST(Charges, Errors) {
    const Matrix A = Matrix::Identity(2, 2);
    EXPECT_THROW(charge_sequence(A, A, 0.0, 1.0, 1, 1, 2), ValidationError);
    EXPECT_THROW(charge_sequence(A, A, 1.0, 0.0, 1, 1, 2), ValidationError);
    EXPECT_THROW(charge_sequence(A, A, 1.0, -1.0, 1, 1, 2), ValidationError);
    EXPECT_THROW(charge_sequence(A, Matrix::Identity(3, 3), 1.0, 1.0, 1, 1, 2), ValidationError);
    EXPECT_THROW(charge_sequence(A, A, 1.0, 1.0, 1, 1, -1), ValidationError);
}

TEST(BoundaryCharges, GenericRates) {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> u(0.2, 2.0);
    for (int k = 0; k < 8; ++k) {
        const ProcessParams p = rates(u(rng), u(rng), u(rng), u(rng));
        for (double j : {0.5, 1.0, 3.0, 5.0}) {
            const auto r = ssep_boundary_charges(p, algebra::build_uq_su2_rep(j, 1.0));
            EXPECT_LT(r.residual(), 1e-12);
        }
    }
}

TEST(BoundaryCharges, PrintedCoefficientsFail) {
    const auto r = ssep_boundary_charges(rates(0.6, 1.3, 0.9, 0.4), algebra::build_uq_su2_rep(1.0, 1.0));
    EXPECT_DOUBLE_EQ(r.printed_rho, 1.3 * 0.4);
    EXPECT_DOUBLE_EQ(r.printed_rho_star, 0.6 * 0.9);
    EXPECT_GT(r.printed_residual(), 1e-3);
}

TEST(BoundaryCharges, DegenerateExamples) {
    // gamma = delta = 0 and all rates equal leave [B^R, B^L] = 0
    for (const auto& p : {rates(0.7, 1.4, 0, 0), rates(1, 1, 1, 1)}) {
        const auto r = ssep_boundary_charges(p, algebra::build_uq_su2_rep(2.0, 1.0));
        EXPECT_LT(r.residual(), 1e-12);
        EXPECT_LT(r.printed_residual(), 1e-12);
    }
}

TEST(BoundaryCharges, ScalingOfRho) {
    const auto r = ssep_boundary_charges(rates(0.6, 1.3, 0.9, 0.4), algebra::build_uq_su2_rep(1.5, 1.0));
    const double rho = algebra::fit_dolan_grady(r.BR, r.BL).first;
    EXPECT_NEAR(rho, r.rho, 1e-10 * r.rho);
    for (double c : {0.5, 3.0}) {
        const double rc = algebra::fit_dolan_grady(c * r.BR, r.BL).first;
        EXPECT_NEAR(rc, c * c * rho, 1e-10 * c * c * rho);
    }
}

TEST(BoundaryCharges, Gauge) {
    // x0 enters as an overall factor: rho scales with x0^2
    const ProcessParams p = rates(0.6, 1.3, 0.9, 0.4);
    const auto r = ssep_boundary_charges(p, algebra::build_uq_su2_rep(1.0, 1.0), -2.0);
    EXPECT_NEAR(r.rho, 4 * std::pow(1.7, 2), 1e-12);
    EXPECT_LT(r.residual(), 1e-12);
}
