#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "exclusia/ncpoly.hpp"
#include "exclusia/process.hpp"

namespace exclusia::algebra {

using Matrix = Eigen::MatrixXd;

Matrix commutator(const Matrix& x, const Matrix& y);
Matrix anticommutator(const Matrix& x, const Matrix& y);
// q^{1/2} XY - q^{-1/2} YX
Matrix q_commutator(const Matrix& x, const Matrix& y, double q);

double inf_norm(const Matrix& m);

// Finite-dimensional U_q(su(2)) module of spin j. N is diag(-j..j), A+ has
// unit entries on the subdiagonal so that [N, A+] = A+, and A- carries the
// weights h_m on the superdiagonal.
struct UqSu2Rep {
    double j = 0.5;
    double q = 1.0;
    Matrix N;
    Matrix Aplus;
    Matrix Aminus;
    double casimir = 0.0;
    int dim() const { return static_cast<int>(N.rows()); }
};

UqSu2Rep build_uq_su2_rep(double j, double q);

// A+A- - (q^{N-1/2} + q^{-N+1/2})/(q^{1/2}-q^{-1/2})^2, and A+A- - (N-1/2)^2
// at q = 1. Proportional to the identity on every irreducible module.
Matrix casimir_matrix(const UqSu2Rep& rep);

// The same expression with a minus sign between the two exponentials.
Matrix casimir_matrix_minus_variant(const UqSu2Rep& rep);

// Largest deviation of m from (mean of its diagonal) * I, relative to that mean.
double scalar_deviation(const Matrix& m);

struct TriPairScalars {
    double beta_s = 0.0;
    double gamma_s = 0.0;
    double gamma_s_star = 0.0;
    double rho = 0.0;
    double rho_star = 0.0;
    double omega = 0.0;
    double eta = 0.0;
    double eta_star = 0.0;
    std::optional<double> k, k_star;
    std::optional<double> t, t_star, c, c_star;
};

struct BoundaryPair {
    Matrix A;
    Matrix Astar;
    std::string provenance;
};

BoundaryPair build_boundary_ops_pasep(const UqSu2Rep& rep, const ProcessParams& p, double x0);
BoundaryPair build_boundary_ops_ssep(const UqSu2Rep& rep, const ProcessParams& p, double x0);

// Constants for which the boundary pair satisfies the AW13 relations (0<q<1)
// or the Dolan-Grady relations (q = 1); Q is the scalar Casimir value.
TriPairScalars structure_constants(const ProcessParams& p, double Q, double q, double x0);

// The constants as they appear in the printed closed forms. They do not make
// the residuals vanish; kept to document and test the discrepancy.
TriPairScalars printed_structure_constants(const ProcessParams& p, double Q, double q, double x0);

// Least-squares fit of (rho, rho*, omega, eta, eta*) from the AW13 system.
struct FitResult {
    TriPairScalars scalars;
    double residual = 0.0;  // normalized residual with the fitted constants
};
FitResult fit_structure_constants(const Matrix& A, const Matrix& Astar, double q);

// Least-squares rho and rho* for [X,[X,[X,Y]]] = rho [X,Y] and its dual.
std::pair<double, double> fit_dolan_grady(const Matrix& A, const Matrix& Astar);

// Scalars after A -> tA + c, A* -> t*A* + c* (AW20 normal form).
TriPairScalars affine_transform(const TriPairScalars& s, double t, double t_star, double c, double c_star);

struct RelationInput {
    std::vector<Matrix> mats;
    TriPairScalars scalars;
    double q = 1.0;
    double x0 = 1.0;
    double a = 1.0;        // TASEP constants; e1 = a + b, e2 = ab
    double b = 1.0;
    double c_tilde = 0.0;  // ABA = c~ A
    bool truncated = false;  // evaluate on the leading (n - degree) block
};

struct RelationLine {
    std::string name;
    double residual = 0.0;  // ||lhs - rhs||_inf / largest term norm
    double absolute = 0.0;
    int degree = 0;
};

struct RelationReport {
    std::string kind;
    std::vector<RelationLine> lines;
    double max_residual = 0.0;
    bool passed(double tol) const { return max_residual < tol; }
};

std::vector<std::string> relation_kinds();

// Symbolic form of a relation kind; generators are indexed as in mats.
std::vector<std::pair<std::string, NcPoly>> relation_polys(const std::string& kind, const RelationInput& in);

RelationReport check_relations(const std::string& kind, const RelationInput& in);

// Residual of one polynomial evaluated on matrices.
RelationLine evaluate_relation(const std::string& name, const NcPoly& poly, const std::vector<Matrix>& mats,
                               bool truncated);

// Affine shift that removes the gamma-type scalars: PASEP shift for q != 1,
// D0 + x0, D1 - x1 for q = 1.
std::pair<Matrix, Matrix> shift_generators(const Matrix& D0, const Matrix& D1, double q, double x0);
double pasep_shift(double q, double x0);  // x0 q^{-1/2}/(q^{1/2} - q^{-1/2})

// Bulk representations used by the checks.
// x0 times the truncated q-oscillator pair: D1D0 - q D0D1 = x0 (D0 + D1).
std::pair<Matrix, Matrix> scaled_oscillator_pair(double q, int M, double x0);
// Finite pair with [D1, D0] = x0 (D0 + D1) exactly.
std::pair<Matrix, Matrix> ssep_bulk_pair(int M, double x0, double offset, const std::vector<double>& weights);
// Interior-exact TASEP matrices on an M-dim truncation.
Matrix upper_shift(int M);
Matrix lower_shift(int M);

struct TasepAlgebraData {
    double a = 1.0, b = 1.0;
    double e1 = 2.0, e2 = 1.0;
    double Z = 1.0;
    Matrix D, Dstar;  // D = D0 + D1 + a + b, D* = [D1, D0]
    Matrix D0, D1;    // a L and b U
};

TasepAlgebraData build_tasep_data(double a, double b, int M);

// Reference representation and scalars for each relation kind:
// boundary pairs on spin j for AW13, TD33 and DG38, M-dimensional bulk or
// TASEP matrices otherwise. printed selects the printed constants where the
// kind has them (AW13, TD33, DG38, DG-generic).
RelationInput standard_case(const std::string& kind, const ProcessParams& p, double j, int M, double x0,
                            bool printed = false);

}  // namespace exclusia::algebra
