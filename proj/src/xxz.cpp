#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "exclusia/errors.hpp"
#include "exclusia/process.hpp"

namespace exclusia {

namespace {

// Spin-1/2 matrices in the (up, down) basis.
Eigen::Matrix2d sigma_z() { return (Eigen::Matrix2d() << 1, 0, 0, -1).finished(); }
Eigen::Matrix2d sigma_plus() { return (Eigen::Matrix2d() << 0, 1, 0, 0).finished(); }
Eigen::Matrix2d sigma_minus() { return (Eigen::Matrix2d() << 0, 0, 1, 0).finished(); }

struct Layout {
    int L;
    BasisConvention conv;

    int site_of_factor(int k) const { return conv.reversed_sites ? L + 1 - k : k; }
    int bit_of_factor(int k) const { return L - site_of_factor(k); }
    int spin_of(std::uint64_t c, int k) const {
        const int occ = static_cast<int>((c >> bit_of_factor(k)) & 1u);
        return conv.occupied_is_down ? occ : 1 - occ;
    }
    std::uint64_t with_spin(std::uint64_t c, int k, int spin) const {
        const int occ = conv.occupied_is_down ? spin : 1 - spin;
        const std::uint64_t mask = std::uint64_t{1} << bit_of_factor(k);
        return occ ? (c | mask) : (c & ~mask);
    }
};

// H += coef * O_k
void add_one(Eigen::MatrixXd& h, const Layout& lay, double coef, const Eigen::Matrix2d& o, int k) {
    const auto n = static_cast<std::uint64_t>(h.cols());
    for (std::uint64_t c = 0; c < n; ++c) {
        const int s = lay.spin_of(c, k);
        for (int t = 0; t < 2; ++t) {
            const double v = o(t, s);
            if (v != 0.0) h(static_cast<Eigen::Index>(lay.with_spin(c, k, t)), static_cast<Eigen::Index>(c)) += coef * v;
        }
    }
}

// H += coef * O_k P_l
void add_two(Eigen::MatrixXd& h, const Layout& lay, double coef, const Eigen::Matrix2d& o, int k,
             const Eigen::Matrix2d& p, int l) {
    const auto n = static_cast<std::uint64_t>(h.cols());
    for (std::uint64_t c = 0; c < n; ++c) {
        const int s1 = lay.spin_of(c, k);
        const int s2 = lay.spin_of(c, l);
        for (int t1 = 0; t1 < 2; ++t1) {
            const double v1 = o(t1, s1);
            if (v1 == 0.0) continue;
            for (int t2 = 0; t2 < 2; ++t2) {
                const double v2 = p(t2, s2);
                if (v2 == 0.0) continue;
                const std::uint64_t d = lay.with_spin(lay.with_spin(c, k, t1), l, t2);
                h(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(c)) += coef * v1 * v2;
            }
        }
    }
}

double inf_norm(const Eigen::MatrixXd& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }

}  // namespace

std::string BasisConvention::describe() const {
    std::string s = occupied_is_down ? "occupied=down" : "occupied=up";
    s += reversed_sites ? ",factor k=site L+1-k" : ",factor k=site k";
    return s;
}

std::vector<BasisConvention> basis_candidates() {
    return {{true, false}, {true, true}, {false, false}, {false, true}};
}

XxzModel build_xxz(const ProcessParams& p, double mu, const BasisConvention& conv) {
    p.validate();
    if (p.q == 0.0) throw ValidationError("the XXZ mapping needs q > 0");
    if (mu == 0.0 || !std::isfinite(mu)) throw ValidationError("mu must be finite and nonzero");
    if (p.L > kDenseMaxSites) throw CapacityError("L exceeds the dense diagonalization cap");

    const int L = p.L;
    const double sq = std::sqrt(p.q);
    XxzModel m;
    m.L = L;
    m.q = p.q;
    m.mu = mu;
    m.convention = conv;
    m.delta_q = -0.5 * (sq + 1.0 / sq);
    m.h = 0.5 * (sq - 1.0 / sq);

    const Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
    const Eigen::Matrix2d sz = sigma_z(), sp = sigma_plus(), sm = sigma_minus();
    m.b1 = ((p.alpha + p.gamma) * id + (p.alpha - p.gamma) * sz - 2.0 * p.alpha * mu * sm -
            2.0 * p.gamma / mu * sp) / (2.0 * sq);
    const double qe = std::pow(p.q, 0.5 * (L - 1));
    m.bL = ((p.beta + p.delta) * id - (p.beta - p.delta) * sz - 2.0 * p.delta * mu * qe * sm -
            2.0 * p.beta / mu / qe * sp) / (2.0 * sq);

    const Eigen::Index n = Eigen::Index{1} << L;
    const Layout lay{L, conv};
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < L; ++k) {
        // sx sx + sy sy = 2 (s+ s- + s- s+)
        add_two(h, lay, -1.0, sp, k, sm, k + 1);
        add_two(h, lay, -1.0, sm, k, sp, k + 1);
        add_two(h, lay, 0.5 * m.delta_q, sz, k, sz, k + 1);
        add_one(h, lay, -0.5 * m.h, sz, k + 1);
        add_one(h, lay, 0.5 * m.h, sz, k);
        h.diagonal().array() -= 0.5 * m.delta_q;
    }
    add_one(h, lay, 1.0, m.b1, 1);
    add_one(h, lay, 1.0, m.bL, L);
    m.hamiltonian = std::move(h);

    m.u_mu.resize(n);
    for (std::uint64_t c = 0; c < static_cast<std::uint64_t>(n); ++c) {
        double u = 1.0;
        for (int k = 1; k <= L; ++k)
            if (lay.spin_of(c, k) == 1) u *= mu * std::pow(sq, k - 1);
        m.u_mu(static_cast<Eigen::Index>(c)) = u;
    }
    return m;
}

std::vector<std::complex<double>> sorted_spectrum(const Eigen::MatrixXd& m) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    if (es.info() != Eigen::Success) throw NonConvergenceError("eigenvalue solver did not converge");
    std::vector<std::complex<double>> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return ev;
}

double spectrum_distance(const std::vector<std::complex<double>>& a, const std::vector<std::complex<double>>& b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    std::vector<char> used(b.size(), 0);
    double worst = 0.0;
    for (const auto& x : a) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t arg = 0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(x - b[j]);
            if (d < best) {
                best = d;
                arg = j;
            }
        }
        used[arg] = 1;
        worst = std::max(worst, best);
    }
    return worst;
}

SimilarityReport similarity_residual(const ProcessParams& p, double mu) {
    const Eigen::MatrixXd g = Eigen::MatrixXd(build_generator(p, kDenseMaxSites).gamma);
    const double sq = std::sqrt(p.q);
    SimilarityReport rep;
    rep.residual = std::numeric_limits<double>::infinity();
    Eigen::MatrixXd chosen_h;
    for (const BasisConvention& conv : basis_candidates()) {
        const XxzModel m = build_xxz(p, mu, conv);
        const Eigen::MatrixXd sim =
            m.u_mu.cwiseInverse().asDiagonal() * m.hamiltonian * m.u_mu.asDiagonal();
        const double r = inf_norm(g + sq * sim);
        rep.candidate_residuals.push_back(r);
        if (r < rep.residual) {
            rep.residual = r;
            rep.convention = conv;
            chosen_h = m.hamiltonian;
        }
    }
    rep.spectrum_generator = sorted_spectrum(g);
    rep.spectrum_hamiltonian = sorted_spectrum(-sq * chosen_h);
    rep.spectrum_distance = spectrum_distance(rep.spectrum_generator, rep.spectrum_hamiltonian);
    return rep;
}

}  // namespace exclusia
