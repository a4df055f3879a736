#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "exclusia/process.hpp"

namespace exclusia::mpa {

// Sign record for the quadratic algebra. The evaluation uses
// D1 D0 - q D0 D1 = x1 D0 - x0 D1 with (x0, x1) = (-1, 1), and boundary
// eigenvalue +1 on both vectors.
struct Convention {
    double x0 = -1.0;
    double x1 = 1.0;
    std::string note = "D1D0 - qD0D1 = D0 + D1; (beta D1 - delta D0)|v> = |v>; <w|(alpha D0 - gamma D1) = <w|";
};

struct QOscillator {
    Eigen::SparseMatrix<double> D0;  // (I + a^dagger)/(1-q), lower bidiagonal
    Eigen::SparseMatrix<double> D1;  // (I + a)/(1-q), upper bidiagonal
};

// 1 - q^n evaluated without cancellation near q = 1.
double one_minus_qn(double q, int n);

QOscillator build_q_oscillator_rep(double q, int M);

// Boundary vectors stored with a separate log scale: the true vector is
// exp(log_scale) * values. Rescaling keeps the recursion finite when the
// components pass through very large magnitudes (q close to 1).
struct ScaledVector {
    Eigen::VectorXd values;
    double log_scale = 0.0;
};

struct BoundaryVectors {
    ScaledVector w;
    ScaledVector v;
};

BoundaryVectors boundary_vectors(const ProcessParams& p, int M);

struct MpaRep {
    int M = 0;
    double q = 0.0;
    QOscillator ops;
    BoundaryVectors vecs;
    Convention convention;
};

MpaRep build_mpa_rep(const ProcessParams& p, int M);

struct RepResiduals {
    double bulk = 0.0;   // leading (M-1) block of D1D0 - qD0D1 - (D0 + D1)
    double right = 0.0;  // leading M-1 components of (beta D1 - delta D0)v - v, relative
    double left = 0.0;   // leading M-1 components of w(alpha D0 - gamma D1) - w, relative
};

RepResiduals rep_residuals(const MpaRep& rep, const ProcessParams& p);

struct PartitionResult {
    std::vector<double> Z;  // Z_0..Z_L, each multiplied by exp(-log_scale)
    double log_scale = 0.0;
    double rel_error = 0.0;  // max_k |Z_k(M/2) - Z_k(M)| / |Z_k(M)|
    int M = 0;
    std::vector<std::pair<int, double>> history;  // (M, rel_error) per doubling
};

inline constexpr int kDefaultMmax = 1 << 17;

PartitionResult partition_functions(const ProcessParams& p, double tol, int M_max = kDefaultMmax);

// Observables from explicit matrices and vectors (any consistent truncation).
ObservableReport observables_from_rep(const QOscillator& ops, const BoundaryVectors& bv, const ProcessParams& p,
                                      bool with_probabilities);

// Steady-state observables from the matrix product. For q > 1 the problem is
// solved on the reflected process and mapped back.
ObservableReport mpa_observables(const ProcessParams& p, double tol, int M_max = kDefaultMmax);

// q > 1 maps onto q' = 1/q by reversing the chain and rescaling time by q:
// alpha' = delta/q, beta' = gamma/q, gamma' = beta/q, delta' = alpha/q.
// Densities come back as rho_i = rho'_{L+1-i} and the current as J = -q J'.
struct ReflectedParams {
    ProcessParams params;
    bool sites_reversed = true;
    bool labels_flipped = false;
    double time_scale = 1.0;
};

ReflectedParams reflect_params(const ProcessParams& p);

ObservableReport unreflect(const ObservableReport& mirror, const ReflectedParams& r);

struct SsepClosedForm {
    double lambda = 0.0;
    double log_Z = 0.0;  // log Z_L
    double Z = 0.0;      // Z_L, infinite when it overflows
    double z_ratio = 0.0;  // Z_{L-1}/Z_L = 1/(lambda+L)
    // bond current (alpha beta - gamma delta)/((alpha+gamma)(beta+delta)) * Z_{L-1}/Z_L
    double current = 0.0;
    std::vector<double> densities;
};

SsepClosedForm ssep_closed_forms(const ProcessParams& p);

ObservableReport ssep_observables(const ProcessParams& p);

}  // namespace exclusia::mpa
