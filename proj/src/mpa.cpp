#include "exclusia/mpa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "exclusia/errors.hpp"
#include "exclusia/orthopoly.hpp"

namespace exclusia::mpa {

namespace {

using SpMat = Eigen::SparseMatrix<double>;

// Vector with a running log scale; renormalized after every product.
struct LogVec {
    Eigen::VectorXd x;
    double s = 0.0;

    void renorm() {
        const double m = x.cwiseAbs().maxCoeff();
        if (m > 0.0 && std::isfinite(m)) {
            x /= m;
            s += std::log(m);
        }
    }
    LogVec times(const SpMat& a) const {  // a * x
        LogVec r{a * x, s};
        r.renorm();
        return r;
    }
    LogVec times_left(const SpMat& a) const {  // x^T a, stored as a column
        LogVec r{a.transpose() * x, s};
        r.renorm();
        return r;
    }
};

struct LogScalar {
    double m = 0.0;
    double s = 0.0;
};

LogScalar dot(const LogVec& a, const LogVec& b) { return {a.x.dot(b.x), a.s + b.s}; }

double ratio(const LogScalar& a, const LogScalar& b) { return a.m / b.m * std::exp(a.s - b.s); }

LogVec from_scaled(const ScaledVector& v) {
    LogVec r{v.values, v.log_scale};
    r.renorm();
    return r;
}

void require_convergent_domain(const ProcessParams& p) {
    p.validate();
    if (!(p.q < 1.0)) throw ValidationError("the q-oscillator evaluation needs 0 <= q < 1");
    if (!(p.alpha > 0.0) || !(p.beta > 0.0))
        throw ValidationError("boundary recursion needs alpha > 0 and beta > 0; use the exact solver instead");
}

// Forward recursion for either boundary vector; nu is the pivot rate and tau
// the opposing rate on the same boundary.
ScaledVector recurse(double q, double nu, double tau, int M) {
    ScaledVector out;
    out.values = Eigen::VectorXd::Zero(M);
    out.values(0) = 1.0;
    const double c = (1.0 - q) - nu + tau;
    constexpr double big = 1e150;
    for (int n = 0; n + 1 < M; ++n) {
        const double lower = n > 0 ? out.values(n - 1) : 0.0;
        double next = c * out.values(n);
        if (tau != 0.0) next += tau * std::sqrt(one_minus_qn(q, n)) * lower;
        next /= nu * std::sqrt(one_minus_qn(q, n + 1));
        if (!std::isfinite(next)) throw NonConvergenceError("boundary vector recursion overflowed");
        out.values(n + 1) = next;
        const double a = std::abs(next);
        if (a > big) {
            out.values.head(n + 2) /= a;
            out.log_scale += std::log(a);
        }
    }
    return out;
}

// Z_0..Z_L at truncation M, each as (mantissa, log).
std::vector<LogScalar> z_list(const MpaRep& rep, int L) {
    const SpMat C = rep.ops.D0 + rep.ops.D1;
    const LogVec w = from_scaled(rep.vecs.w);
    LogVec u = from_scaled(rep.vecs.v);
    std::vector<LogScalar> z;
    for (int k = 0; k <= L; ++k) {
        z.push_back(dot(w, u));
        if (k < L) u = u.times(C);
    }
    return z;
}

double z_rel_error(const std::vector<LogScalar>& coarse, const std::vector<LogScalar>& fine) {
    double worst = 0.0;
    for (std::size_t k = 0; k < fine.size(); ++k) {
        if (fine[k].m == 0.0) return std::numeric_limits<double>::infinity();
        const double r = std::abs(ratio(coarse[k], fine[k]) - 1.0);
        if (!std::isfinite(r)) return std::numeric_limits<double>::infinity();
        worst = std::max(worst, r);
    }
    return worst;
}

}  // namespace

double one_minus_qn(double q, int n) {
    if (n == 0) return 0.0;
    if (q == 0.0) return 1.0;
    return -std::expm1(n * std::log(q));
}

QOscillator build_q_oscillator_rep(double q, int M) {
    if (!(q >= 0.0) || !(q < 1.0)) throw ValidationError("q-oscillator needs 0 <= q < 1");
    if (M < 2) throw ValidationError("truncation M must be >= 2");
    std::vector<Eigen::Triplet<double>> t0, t1;
    const double inv = 1.0 / (1.0 - q);
    for (int n = 0; n < M; ++n) {
        t0.emplace_back(n, n, inv);
        t1.emplace_back(n, n, inv);
        if (n + 1 < M) {
            const double a = std::sqrt(one_minus_qn(q, n + 1)) * inv;
            t1.emplace_back(n, n + 1, a);
            t0.emplace_back(n + 1, n, a);
        }
    }
    QOscillator ops;
    ops.D0.resize(M, M);
    ops.D1.resize(M, M);
    ops.D0.setFromTriplets(t0.begin(), t0.end());
    ops.D1.setFromTriplets(t1.begin(), t1.end());
    return ops;
}

BoundaryVectors boundary_vectors(const ProcessParams& p, int M) {
    require_convergent_domain(p);
    if (M < 2) throw ValidationError("truncation M must be >= 2");
    return {recurse(p.q, p.alpha, p.gamma, M), recurse(p.q, p.beta, p.delta, M)};
}

MpaRep build_mpa_rep(const ProcessParams& p, int M) {
    MpaRep rep;
    rep.M = M;
    rep.q = p.q;
    rep.vecs = boundary_vectors(p, M);
    rep.ops = build_q_oscillator_rep(p.q, M);
    return rep;
}

RepResiduals rep_residuals(const MpaRep& rep, const ProcessParams& p) {
    const int m = rep.M - 1;
    const Eigen::MatrixXd d0 = Eigen::MatrixXd(rep.ops.D0);
    const Eigen::MatrixXd d1 = Eigen::MatrixXd(rep.ops.D1);
    const Eigen::MatrixXd bulk = d1 * d0 - p.q * d0 * d1 - (d0 + d1);
    RepResiduals r;
    r.bulk = bulk.topLeftCorner(m, m).cwiseAbs().maxCoeff();
    const Eigen::VectorXd& v = rep.vecs.v.values;
    const Eigen::VectorXd& w = rep.vecs.w.values;
    const Eigen::VectorXd rv = (p.beta * d1 - p.delta * d0) * v - v;
    const Eigen::VectorXd lw = (p.alpha * d0 - p.gamma * d1).transpose() * w - w;
    r.right = rv.head(m).cwiseAbs().maxCoeff() / std::max(v.head(m).cwiseAbs().maxCoeff(), 1e-300);
    r.left = lw.head(m).cwiseAbs().maxCoeff() / std::max(w.head(m).cwiseAbs().maxCoeff(), 1e-300);
    return r;
}

PartitionResult partition_functions(const ProcessParams& p, double tol, int M_max) {
    require_convergent_domain(p);
    if (!(tol > 0.0)) throw ValidationError("tolerance must be > 0");
    int M = std::max(4 * p.L, 16);
    if (M > M_max) throw ValidationError("M_max is below the initial truncation");
    PartitionResult out;
    std::vector<LogScalar> coarse = z_list(build_mpa_rep(p, M), p.L);
    while (2 * M <= M_max) {
        M *= 2;
        std::vector<LogScalar> fine = z_list(build_mpa_rep(p, M), p.L);
        const double err = z_rel_error(coarse, fine);
        out.history.emplace_back(M, err);
        if (err < tol) {
            out.M = M;
            out.rel_error = err;
            out.log_scale = fine.back().s;
            for (const auto& z : fine) out.Z.push_back(z.m * std::exp(z.s - out.log_scale));
            return out;
        }
        coarse = std::move(fine);
    }
    std::ostringstream os;
    os << "partition functions did not converge by M_max = " << M_max << "; relative change per doubling:";
    for (const auto& [m, e] : out.history) os << " M=" << m << ":" << e;
    throw NonConvergenceError(os.str());
}

ObservableReport observables_from_rep(const QOscillator& ops, const BoundaryVectors& bv, const ProcessParams& p,
                                      bool with_probabilities) {
    const int L = p.L;
    const SpMat C = ops.D0 + ops.D1;
    const LogVec w = from_scaled(bv.w);
    const LogVec v = from_scaled(bv.v);

    // right[k] = C^k v, left[k] = w C^k
    std::vector<LogVec> right{v}, left{w};
    for (int k = 1; k <= L; ++k) {
        right.push_back(right.back().times(C));
        left.push_back(left.back().times_left(C));
    }
    const LogScalar zL = dot(w, right[L]);
    const LogScalar zL1 = dot(w, right[L - 1]);

    ObservableReport r;
    r.method = "mpa";
    r.current = ratio(zL1, zL);
    for (int i = 1; i <= L; ++i) r.densities.push_back(ratio(dot(left[i - 1], right[L - i].times(ops.D1)), zL));

    const SpMat bulk = SpMat(ops.D1 * ops.D0) - p.q * SpMat(ops.D0 * ops.D1);
    r.currents.push_back(p.alpha * (1.0 - r.densities.front()) - p.gamma * r.densities.front());
    for (int i = 1; i < L; ++i) r.currents.push_back(ratio(dot(left[i - 1], right[L - i - 1].times(bulk)), zL));
    r.currents.push_back(p.beta * r.densities.back() - p.delta * (1.0 - r.densities.back()));
    const auto [lo, hi] = std::minmax_element(r.currents.begin(), r.currents.end());
    r.current_spread = *hi - *lo;

    if (with_probabilities) {
        const std::uint64_t n = std::uint64_t{1} << L;
        r.probabilities.resize(n);
        for (std::uint64_t s = 0; s < n; ++s) {
            const Configuration c = config_from_index(s, L);
            LogVec u = v;
            for (int i = L - 1; i >= 0; --i) u = u.times(c[i] ? ops.D1 : ops.D0);
            r.probabilities[s] = ratio(dot(w, u), zL);
        }
    }
    return r;
}

ObservableReport mpa_observables(const ProcessParams& p, double tol, int M_max) {
    p.validate();
    if (p.q > 1.0) {
        const ReflectedParams refl = reflect_params(p);
        return unreflect(mpa_observables(refl.params, tol, M_max), refl);
    }
    const PartitionResult part = partition_functions(p, tol, M_max);
    const MpaRep rep = build_mpa_rep(p, part.M);
    ObservableReport r = observables_from_rep(rep.ops, rep.vecs, p, p.L <= 14);
    r.Z.assign(part.Z.begin() + 1, part.Z.end());
    r.z_log_scale = part.log_scale;
    r.tolerance = part.rel_error;
    r.truncation = part.M;
    return r;
}

ReflectedParams reflect_params(const ProcessParams& p) {
    p.validate();
    if (!(p.q > 0.0)) throw ValidationError("reflection needs q > 0");
    ReflectedParams r;
    r.time_scale = p.q;
    r.params = p;
    r.params.q = 1.0 / p.q;
    r.params.alpha = p.delta / p.q;
    r.params.beta = p.gamma / p.q;
    r.params.gamma = p.beta / p.q;
    r.params.delta = p.alpha / p.q;
    return r;
}

ObservableReport unreflect(const ObservableReport& m, const ReflectedParams& r) {
    ObservableReport o = m;
    std::reverse(o.densities.begin(), o.densities.end());
    std::reverse(o.density_stderr.begin(), o.density_stderr.end());
    o.current = -r.time_scale * m.current;
    o.currents.clear();
    for (auto it = m.currents.rbegin(); it != m.currents.rend(); ++it) o.currents.push_back(-r.time_scale * *it);
    o.current_spread = r.time_scale * m.current_spread;
    if (!m.probabilities.empty()) {
        const int L = static_cast<int>(m.densities.size());
        for (std::uint64_t s = 0; s < m.probabilities.size(); ++s) {
            Configuration c = config_from_index(s, L);
            std::reverse(c.begin(), c.end());
            o.probabilities[config_index(c)] = m.probabilities[s];
        }
    }
    o.Z.clear();  // weights of the mirrored chain are not those of the original
    o.method = m.method + "-reflected";
    return o;
}

SsepClosedForm ssep_closed_forms(const ProcessParams& p) {
    p.validate();
    if (p.q != 1.0) throw ValidationError("closed forms hold only for q = 1");
    const double a = p.alpha + p.gamma, b = p.beta + p.delta;
    SsepClosedForm f;
    f.lambda = orthopoly::lambda_from_rates(p.alpha, p.beta, p.gamma, p.delta);
    if (!(f.lambda > -1.0)) throw ValidationError("lambda <= -1 hits a pole of the gamma function");
    f.log_Z = std::lgamma(f.lambda + p.L + 1.0) - std::lgamma(f.lambda + 1.0);
    f.Z = std::exp(f.log_Z);
    f.z_ratio = 1.0 / (f.lambda + p.L);
    const double slope = (p.alpha * p.beta - p.gamma * p.delta) / (a * b);
    f.current = slope * f.z_ratio;
    for (int i = 1; i <= p.L; ++i) f.densities.push_back(p.alpha / a - f.current * (1.0 / a + i - 1.0));
    return f;
}

ObservableReport ssep_observables(const ProcessParams& p) {
    const SsepClosedForm f = ssep_closed_forms(p);
    ObservableReport r;
    r.method = "ssep";
    r.current = f.current;
    r.densities = f.densities;
    for (int k = 1; k <= p.L; ++k) r.Z.push_back(std::exp(std::lgamma(f.lambda + k + 1.0) - std::lgamma(f.lambda + 1.0)));
    r.currents.push_back(p.alpha * (1.0 - f.densities.front()) - p.gamma * f.densities.front());
    for (int i = 0; i + 1 < p.L; ++i) r.currents.push_back(f.densities[i] - f.densities[i + 1]);
    r.currents.push_back(p.beta * f.densities.back() - p.delta * (1.0 - f.densities.back()));
    const auto [lo, hi] = std::minmax_element(r.currents.begin(), r.currents.end());
    r.current_spread = *hi - *lo;
    return r;
}

}  // namespace exclusia::mpa
