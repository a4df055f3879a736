#pragma once

#include <algorithm>
#include <vector>

#include "exclusia/algebra.hpp"

namespace exclusia::charges {

using algebra::Matrix;

struct ChargeSequence {
    double f = 1.0, f_star = 1.0;
    double rho = 0.0, rho_star = 0.0;
    // When rho != rho*, A* is replaced by s A* (and f* by f*/s) with
    // s = sqrt(rho/rho*) so both Dolan-Grady constants equal rho.
    double astar_scale = 1.0;
    Matrix H;  // f A + f* A*
    std::vector<Matrix> R, Rtilde, Q;
};

// R_{2n} = -(2/rho)[A,[A*,R_{2n-2}]] - R~_{2n-2}, R~ by the dual recursion,
// Q_{2n} = f (R_{2n} - R~_{2n-2}) + f* (R~_{2n} - R_{2n-2}). Entries 0..n_max.
ChargeSequence charge_sequence(const Matrix& A, const Matrix& Astar, double rho, double rho_star, double f,
                               double f_star, int n_max);

// Same recursion on the SSEP boundary pair of spin j, built directly in
// extended precision so that rounding of A and A* is not amplified.
ChargeSequence ssep_charge_sequence(const ProcessParams& p, double j, double f, double f_star, int n_max,
                                    double x0 = 1.0);

// max over m < n <= n_max of ||[Q_m, Q_n]|| / max(||Q_m||, ||Q_n||)^2
double max_commutator(const ChargeSequence& cs);

struct BoundaryChargeReport {
    Matrix BR, BL;
    double rho = 0.0, rho_star = 0.0;          // x0^2 (beta+delta)^2, x0^2 (alpha+gamma)^2
    double printed_rho = 0.0, printed_rho_star = 0.0;  // -x0 x1 beta delta, -x0 x1 alpha gamma
    double residual_right = 0.0, residual_left = 0.0;
    double printed_residual_right = 0.0, printed_residual_left = 0.0;
    double residual() const { return std::max(residual_right, residual_left); }
    double printed_residual() const { return std::max(printed_residual_right, printed_residual_left); }
};

// B^R = beta D1 - delta D0 and B^L = alpha D0 - gamma D1 realized on a q = 1
// spin-j module, with the Dolan-Grady residuals of both lines.
BoundaryChargeReport ssep_boundary_charges(const ProcessParams& p, const algebra::UqSu2Rep& rep, double x0 = 1.0);

}  // namespace exclusia::charges
