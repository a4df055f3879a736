#pragma once

#include <complex>
#include <string>
#include <vector>

namespace exclusia::orthopoly {

// Generalized Laguerre polynomial L_n^(lambda)(x) by forward recurrence.
double laguerre_eval(int n, double lambda, double x);

// l_n = (-1)^n (n! Gamma(lambda+1) / Gamma(n+lambda+1))^{1/2} L_n, orthonormal
// under e^{-x} x^lambda / Gamma(lambda+1).
double laguerre_normalized(int n, double lambda, double x);

// log(Gamma(n+lambda+1)/n!), the squared norm under e^{-x} x^lambda.
double laguerre_log_norm(int n, double lambda);

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Generalized Gauss-Laguerre rule for the weight e^{-x} x^lambda (Golub-Welsch).
QuadratureRule gauss_laguerre(int nodes, double lambda);

struct OrthogonalityCheck {
    double integral = 0.0;
    double expected = 0.0;
    double deviation = 0.0;
};

OrthogonalityCheck laguerre_orthogonality_check(int m, int n, double lambda);

// Gram matrix of l_0..l_{n_max} under e^{-x} x^lambda / Gamma(lambda+1).
std::vector<std::vector<double>> laguerre_gram(int n_max, double lambda);

double lambda_from_rates(double alpha, double beta, double gamma, double delta);

enum class KappaBranch { Plus, Minus };

// Roots of nu k^2 + (nu - tau - (1-q)) k - tau = 0. With flip_tau the
// (nu, -tau) variant is evaluated instead.
double kappa(double nu, double tau, double q, KappaBranch branch, bool flip_tau = false);

struct AwParameters {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
    std::string provenance;
};

AwParameters aw_parameters(double alpha, double beta, double gamma, double delta, double q);

// P_n^{(mu)}(x; phi) from the terminating 2F1 sum.
std::complex<double> meixner_pollaczek_eval(int n, double mu, double x, double phi);

// Same polynomial by its three-term recurrence.
double meixner_pollaczek_recurrence(int n, double mu, double x, double phi);

// |P_n^{((lambda+1)/2)}(-x/(2 phi); phi) - L_n^(lambda)(x)|
double meixner_pollaczek_limit_error(int n, double lambda, double x, double phi);

}  // namespace exclusia::orthopoly
