#include "exclusia/orthopoly.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "exclusia/errors.hpp"

namespace exclusia::orthopoly {

namespace {

void require_lambda(double lambda) {
    if (!(lambda > -1.0)) throw ValidationError("lambda must be > -1");
}

}  // namespace

double laguerre_eval(int n, double lambda, double x) {
    if (n < 0) throw ValidationError("polynomial degree must be >= 0");
    require_lambda(lambda);
    double prev = 0.0, cur = 1.0;
    for (int k = 0; k < n; ++k) {
        const double next = ((2.0 * k + lambda + 1.0 - x) * cur - (k + lambda) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

double laguerre_log_norm(int n, double lambda) {
    require_lambda(lambda);
    return std::lgamma(n + lambda + 1.0) - std::lgamma(n + 1.0);
}

double laguerre_normalized(int n, double lambda, double x) {
    const double scale = std::exp(0.5 * (std::lgamma(lambda + 1.0) - laguerre_log_norm(n, lambda)));
    return (n % 2 ? -1.0 : 1.0) * scale * laguerre_eval(n, lambda, x);
}

QuadratureRule gauss_laguerre(int nodes, double lambda) {
    require_lambda(lambda);
    if (nodes < 1) throw ValidationError("quadrature needs at least one node");
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(nodes, nodes);
    for (int k = 0; k < nodes; ++k) {
        jac(k, k) = 2.0 * k + lambda + 1.0;
        if (k > 0) jac(k, k - 1) = jac(k - 1, k) = std::sqrt(k * (k + lambda));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    QuadratureRule rule;
    const double mass = std::tgamma(lambda + 1.0);
    for (int i = 0; i < nodes; ++i) {
        rule.nodes.push_back(es.eigenvalues()(i));
        const double v0 = es.eigenvectors()(0, i);
        rule.weights.push_back(mass * v0 * v0);
    }
    return rule;
}

OrthogonalityCheck laguerre_orthogonality_check(int m, int n, double lambda) {
    if (m < 0 || n < 0 || m > 40 || n > 40) throw ValidationError("degrees must lie in [0, 40]");
    const QuadratureRule rule = gauss_laguerre((m + n) / 2 + 2, lambda);
    OrthogonalityCheck out;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        out.integral += rule.weights[i] * laguerre_eval(m, lambda, rule.nodes[i]) * laguerre_eval(n, lambda, rule.nodes[i]);
    out.expected = m == n ? std::exp(laguerre_log_norm(n, lambda)) : 0.0;
    out.deviation = std::abs(out.integral - out.expected);
    return out;
}

std::vector<std::vector<double>> laguerre_gram(int n_max, double lambda) {
    const QuadratureRule rule = gauss_laguerre(n_max + 2, lambda);
    const double mass = std::tgamma(lambda + 1.0);
    std::vector<std::vector<double>> g(n_max + 1, std::vector<double>(n_max + 1, 0.0));
    for (int m = 0; m <= n_max; ++m)
        for (int n = 0; n <= n_max; ++n)
            for (std::size_t i = 0; i < rule.nodes.size(); ++i)
                g[m][n] += rule.weights[i] / mass * laguerre_normalized(m, lambda, rule.nodes[i]) *
                           laguerre_normalized(n, lambda, rule.nodes[i]);
    return g;
}

double lambda_from_rates(double alpha, double beta, double gamma, double delta) {
    const double left = alpha + gamma, right = beta + delta;
    if (!(left > 0.0) || !(right > 0.0)) throw ValidationError("lambda needs alpha+gamma > 0 and beta+delta > 0");
    return (alpha + beta + gamma + delta) / (left * right) - 1.0;
}

double kappa(double nu, double tau, double q, KappaBranch branch, bool flip_tau) {
    if (nu == 0.0) throw ValidationError("kappa needs nu != 0");
    const double t = flip_tau ? -tau : tau;
    const double b = nu - t - (1.0 - q);
    const double disc = b * b + 4.0 * nu * t;
    if (disc < 0.0) throw ValidationError("kappa discriminant is negative");
    const double root = std::sqrt(disc);
    return (-b + (branch == KappaBranch::Plus ? root : -root)) / (2.0 * nu);
}

AwParameters aw_parameters(double alpha, double beta, double gamma, double delta, double q) {
    AwParameters p;
    p.a = kappa(alpha, gamma, q, KappaBranch::Plus);
    p.b = kappa(beta, delta, q, KappaBranch::Plus);
    p.c = kappa(alpha, gamma, q, KappaBranch::Minus);
    p.d = kappa(beta, delta, q, KappaBranch::Minus);
    p.provenance = "a=k+(alpha,gamma) b=k+(beta,delta) c=k-(alpha,gamma) d=k-(beta,delta)";
    return p;
}

std::complex<double> meixner_pollaczek_eval(int n, double mu, double x, double phi) {
    if (n < 0 || n > 30) throw ValidationError("degree must lie in [0, 30]");
    if (!(mu > 0.0)) throw ValidationError("mu must be > 0");
    using C = std::complex<double>;
    const C z = 1.0 - std::exp(C(0.0, -2.0 * phi));
    const C a(mu, x);
    C term = 1.0, sum = 1.0;
    for (int k = 0; k < n; ++k) {
        term *= C(-n + k) * (a + double(k)) / ((2.0 * mu + k) * (k + 1.0)) * z;
        sum += term;
    }
    double pre = 1.0;  // (2 mu)_n / n!
    for (int k = 0; k < n; ++k) pre *= (2.0 * mu + k) / (k + 1.0);
    return pre * std::exp(C(0.0, n * phi)) * sum;
}

double meixner_pollaczek_recurrence(int n, double mu, double x, double phi) {
    double prev = 0.0, cur = 1.0;
    for (int k = 0; k < n; ++k) {
        const double next = (2.0 * (x * std::sin(phi) + (k + mu) * std::cos(phi)) * cur - (k + 2.0 * mu - 1.0) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

double meixner_pollaczek_limit_error(int n, double lambda, double x, double phi) {
    const std::complex<double> p = meixner_pollaczek_eval(n, 0.5 * (lambda + 1.0), -x / (2.0 * phi), phi);
    return std::abs(p - laguerre_eval(n, lambda, x));
}

}  // namespace exclusia::orthopoly
