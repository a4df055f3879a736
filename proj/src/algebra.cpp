#include "exclusia/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "exclusia/errors.hpp"

namespace exclusia::algebra {

namespace {

Matrix qpow_diag(const UqSu2Rep& rep, double e) {  // q^{e N}
    return rep.N.diagonal().unaryExpr([&](double m) { return std::pow(rep.q, e * m); }).asDiagonal();
}

void require_square_pair(const std::vector<Matrix>& mats, std::size_t count) {
    if (mats.size() != count) {
        std::ostringstream os;
        os << "expected " << count << " matrices, got " << mats.size();
        throw ValidationError(os.str());
    }
    for (const Matrix& m : mats)
        if (m.rows() != m.cols() || m.rows() != mats.front().rows())
            throw ValidationError("relation operands must be square and of equal dimension");
}

}  // namespace

Matrix commutator(const Matrix& x, const Matrix& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols()) throw ValidationError("dimension mismatch");
    return x * y - y * x;
}

Matrix anticommutator(const Matrix& x, const Matrix& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols()) throw ValidationError("dimension mismatch");
    return x * y + y * x;
}

Matrix q_commutator(const Matrix& x, const Matrix& y, double q) {
    if (x.rows() != y.rows() || x.cols() != y.cols() || x.rows() != x.cols())
        throw ValidationError("dimension mismatch");
    if (!(q > 0.0)) throw ValidationError("q-commutator needs q > 0");
    return std::sqrt(q) * (x * y) - (1.0 / std::sqrt(q)) * (y * x);
}

double inf_norm(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().rowwise().sum().maxCoeff(); }

UqSu2Rep build_uq_su2_rep(double j, double q) {
    const double twoj = 2.0 * j;
    if (std::abs(twoj - std::round(twoj)) > 1e-12 || twoj < 1.0) throw ValidationError("2j must be an integer >= 1");
    if (!(q > 0.0) || !std::isfinite(q)) throw ValidationError("q must be > 0");
    const int d = static_cast<int>(std::lround(twoj)) + 1;
    UqSu2Rep rep;
    rep.j = j;
    rep.q = q;
    rep.N = Matrix::Zero(d, d);
    rep.Aplus = Matrix::Zero(d, d);
    rep.Aminus = Matrix::Zero(d, d);
    const double s = std::sqrt(q) - 1.0 / std::sqrt(q);
    double h = 0.0;
    for (int k = 0; k < d; ++k) {
        const double m = -j + k;
        rep.N(k, k) = m;
        if (k + 1 < d) {
            h += q == 1.0 ? 2.0 * m : (std::pow(q, m) - std::pow(q, -m)) / s;
            rep.Aplus(k + 1, k) = 1.0;
            rep.Aminus(k, k + 1) = h;
        }
    }
    rep.casimir = casimir_matrix(rep).diagonal().mean();
    return rep;
}

Matrix casimir_matrix(const UqSu2Rep& rep) {
    const Matrix aa = rep.Aplus * rep.Aminus;
    Eigen::VectorXd shift(rep.dim());
    for (int k = 0; k < rep.dim(); ++k) {
        const double m = rep.N(k, k);
        if (rep.q == 1.0) {
            shift(k) = (m - 0.5) * (m - 0.5);
        } else {
            const double s = std::sqrt(rep.q) - 1.0 / std::sqrt(rep.q);
            shift(k) = (std::pow(rep.q, m - 0.5) + std::pow(rep.q, -m + 0.5)) / (s * s);
        }
    }
    return aa - Matrix(shift.asDiagonal());
}

Matrix casimir_matrix_minus_variant(const UqSu2Rep& rep) {
    const double s = std::sqrt(rep.q) - 1.0 / std::sqrt(rep.q);
    if (s == 0.0) throw ValidationError("the minus variant is singular at q = 1");
    Eigen::VectorXd shift(rep.dim());
    for (int k = 0; k < rep.dim(); ++k) {
        const double m = rep.N(k, k);
        shift(k) = (std::pow(rep.q, m - 0.5) - std::pow(rep.q, -m + 0.5)) / (s * s);
    }
    return rep.Aplus * rep.Aminus - Matrix(shift.asDiagonal());
}

double scalar_deviation(const Matrix& m) {
    const double mean = m.diagonal().mean();
    const Matrix dev = m - mean * Matrix::Identity(m.rows(), m.cols());
    return dev.cwiseAbs().maxCoeff() / std::max(std::abs(mean), 1e-300);
}

BoundaryPair build_boundary_ops_pasep(const UqSu2Rep& rep, const ProcessParams& p, double x0) {
    const double q = rep.q;
    if (!(q > 0.0 && q < 1.0)) throw ValidationError("PASEP boundary operators need 0 < q < 1");
    const double x1 = -x0;
    const double r = std::sqrt(1.0 - q);
    const Matrix kp = qpow_diag(rep, 0.5), km = qpow_diag(rep, -0.5);
    BoundaryPair bp;
    bp.A = -(x1 * p.beta / r) * kp * rep.Aplus - (x0 * p.delta / r) * rep.Aminus * kp -
           ((x1 * p.beta * std::sqrt(q) + x0 * p.delta) / (1.0 - q)) * qpow_diag(rep, 1.0);
    bp.Astar = (x0 * p.alpha / r) * km * rep.Aplus + (x1 * p.gamma / r) * rep.Aminus * km +
               ((x0 * p.alpha / std::sqrt(q) + x1 * p.gamma) / (1.0 - q)) * qpow_diag(rep, -1.0);
    bp.provenance = "pasep";
    return bp;
}

BoundaryPair build_boundary_ops_ssep(const UqSu2Rep& rep, const ProcessParams& p, double x0) {
    if (rep.q != 1.0) throw ValidationError("SSEP boundary operators need the q = 1 representation");
    const double x1 = -x0;
    BoundaryPair bp;
    bp.A = -x1 * p.beta * rep.Aplus - x0 * p.delta * rep.Aminus - (x1 * p.beta + x0 * p.delta) * rep.N;
    bp.Astar = x0 * p.alpha * rep.Aplus + x1 * p.gamma * rep.Aminus + (x0 * p.alpha + x1 * p.gamma) * rep.N;
    bp.provenance = "ssep";
    return bp;
}

TriPairScalars structure_constants(const ProcessParams& p, double Q, double q, double x0) {
    if (!(q > 0.0)) throw ValidationError("structure constants need q > 0");
    const double al = p.alpha, be = p.beta, ga = p.gamma, de = p.delta;
    TriPairScalars s;
    if (q == 1.0) {
        s.beta_s = 2.0;
        s.rho = x0 * x0 * (be + de) * (be + de);
        s.rho_star = x0 * x0 * (al + ga) * (al + ga);
        s.k = std::sqrt(s.rho);
        s.k_star = std::sqrt(s.rho_star);
        return s;
    }
    const double u = std::sqrt(q);
    const double x2 = x0 * x0, x3 = x2 * x0;
    const double mix = al * de + be * ga;
    s.beta_s = q + 1.0 / q;
    s.rho = x2 * be * de * (1 + q) * (1 + q) / (u * (1 - q));
    s.rho_star = x2 * al * ga * (1 + q) * (1 + q) / (u * u * u * (1 - q));
    s.omega = x2 * (ga * u - al) * (be * u - de) / (u * u * u) + x2 * (1 - q) * mix * Q / q;
    s.eta = x3 * (1 + q) * mix * (be * u - de) / (u * (1 - q) * (1 - q)) +
            x3 * be * de * (al - ga * u) * (1 + q) * Q / (u * u * u);
    s.eta_star = x3 * (1 + q) * (al - ga * u) * mix / (q * (1 - q) * (1 - q)) +
                 x3 * al * ga * (1 + q) * (be * u - de) * Q / (q * q);
    return s;
}

TriPairScalars printed_structure_constants(const ProcessParams& p, double Q, double q, double x0) {
    if (!(q > 0.0)) throw ValidationError("structure constants need q > 0");
    const double al = p.alpha, be = p.beta, ga = p.gamma, de = p.delta;
    const double x1 = -x0;
    TriPairScalars s;
    if (q == 1.0) {
        s.beta_s = 2.0;
        s.rho = -x0 * x1 * be * de;
        s.rho_star = -x0 * x1 * al * ga;
        return s;
    }
    const double u = std::sqrt(q), sm = u - 1.0 / u, sp = u + 1.0 / u;
    const double x2 = x0 * x0, x3 = x2 * x0;
    s.beta_s = q + 1.0 / q;
    s.rho = x2 * be * de / q * sp * sp;
    s.rho_star = x2 * al * ga / q * sp * sp;
    s.omega = -(x2 * (be - de) * (ga - al) - x2 * (be * ga + al * de) * sm * Q);
    s.eta = u * sp * x3 * (be * de * (ga - al) * Q + (be - de) * (be * ga + al * de) / sm);
    s.eta_star = u * sp * x3 * (al * ga * (be - de) * Q + (al - ga) * (al * de + be * ga) / sm);
    return s;
}

FitResult fit_structure_constants(const Matrix& A, const Matrix& As, double q) {
    require_square_pair({A, As}, 2);
    const Eigen::Index n = A.rows(), n2 = n * n;
    const Matrix I = Matrix::Identity(n, n);
    const Matrix qc = q_commutator(A, As, q);
    const Matrix l1 = q_commutator(qc, A, q);
    const Matrix l2 = q_commutator(As, qc, q);
    auto vec = [n2](const Matrix& m) { return Eigen::Map<const Eigen::VectorXd>(m.data(), n2); };
    // unknowns: rho, rho*, omega, eta, eta*
    Matrix sys = Matrix::Zero(2 * n2, 5);
    Eigen::VectorXd rhs(2 * n2);
    sys.block(0, 0, n2, 1) = -vec(As);
    sys.block(0, 2, n2, 1) = -vec(A);
    sys.block(0, 3, n2, 1) = -vec(I);
    sys.block(n2, 1, n2, 1) = -vec(A);
    sys.block(n2, 2, n2, 1) = -vec(As);
    sys.block(n2, 4, n2, 1) = -vec(I);
    rhs << vec(l1), vec(l2);
    Eigen::VectorXd x = sys.colPivHouseholderQr().solve(rhs);
    // Entries of the cubic terms carry rounding proportional to their absolute
    // size, which spans many decades on large spins. Reweight every equation by
    // its own error scale and solve again.
    const double sq = std::sqrt(q);
    const Matrix a = A.cwiseAbs(), as = As.cwiseAbs();
    const Matrix qb = sq * a * as + as * a / sq;
    const Matrix b1 = sq * qb * a + a * qb / sq;
    const Matrix b2 = sq * as * qb + qb * as / sq;
    Eigen::VectorXd bound(2 * n2);
    bound << vec(b1), vec(b2);
    for (int pass = 0; pass < 2; ++pass) {
        const Eigen::VectorXd scale = bound + sys.cwiseAbs() * x.cwiseAbs();
        Eigen::VectorXd w(2 * n2);
        for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = scale(i) > 0.0 ? 1.0 / scale(i) : 1.0;
        x = (w.asDiagonal() * sys).colPivHouseholderQr().solve(w.asDiagonal() * rhs);
    }
    FitResult fr;
    fr.scalars.beta_s = q + 1.0 / q;
    fr.scalars.rho = x(0);
    fr.scalars.rho_star = x(1);
    fr.scalars.omega = x(2);
    fr.scalars.eta = x(3);
    fr.scalars.eta_star = x(4);
    RelationInput in;
    in.mats = {A, As};
    in.scalars = fr.scalars;
    in.q = q;
    fr.residual = check_relations("AW13", in).max_residual;
    return fr;
}

std::pair<double, double> fit_dolan_grady(const Matrix& A, const Matrix& As) {
    require_square_pair({A, As}, 2);
    auto fit = [](const Matrix& x, const Matrix& y) {
        const Matrix c = commutator(x, y);
        const Matrix t = commutator(x, commutator(x, c));
        const double cc = c.cwiseProduct(c).sum();
        return cc == 0.0 ? 0.0 : t.cwiseProduct(c).sum() / cc;
    };
    return {fit(A, As), fit(As, A)};
}

TriPairScalars affine_transform(const TriPairScalars& s, double t, double ts, double c, double cs) {
    const double b2 = s.beta_s - 2.0;
    TriPairScalars r = s;
    r.gamma_s = s.gamma_s * t - b2 * c;
    r.gamma_s_star = s.gamma_s_star * ts - b2 * cs;
    r.rho = b2 * c * c - 2.0 * c * s.gamma_s * t + s.rho * t * t;
    r.rho_star = b2 * cs * cs - 2.0 * cs * s.gamma_s_star * ts + s.rho_star * ts * ts;
    r.omega = 2.0 * b2 * c * cs - 2.0 * c * s.gamma_s_star * ts - 2.0 * cs * s.gamma_s * t + s.omega * t * ts;
    r.eta = -(b2 * c * c * cs - c * c * s.gamma_s_star * ts - 2.0 * c * cs * s.gamma_s * t + c * s.omega * t * ts +
              cs * s.rho * t * t - s.eta * t * t * ts);
    r.eta_star = -(b2 * cs * cs * c - cs * cs * s.gamma_s * t - 2.0 * cs * c * s.gamma_s_star * ts +
                   cs * s.omega * ts * t + c * s.rho_star * ts * ts - s.eta_star * ts * ts * t);
    r.t = t;
    r.t_star = ts;
    r.c = c;
    r.c_star = cs;
    return r;
}

std::vector<std::string> relation_kinds() {
    return {"AW13",      "AW20",        "TD33",      "qSerre27",        "bulkPASEP", "bulkPASEP-printed",
            "bulkSSEP",  "bulkSSEP-printed", "DG38", "DG-generic",      "TASEP65-77", "TASEP85",
            "TASEP86",   "TASEP88-90",  "TASEP93"};
}

std::vector<std::pair<std::string, NcPoly>> relation_polys(const std::string& kind, const RelationInput& in) {
    using P = NcPoly;
    const P X = P::gen(0), Y = P::gen(1), I = P::scalar(1.0);
    const TriPairScalars& s = in.scalars;
    const double q = in.q;
    std::vector<std::pair<std::string, P>> out;

    if (kind == "AW13") {
        const P c = qcomm(X, Y, q);
        out.emplace_back("[[A,A*]_q,A]_q + rho A* + omega A + eta", qcomm(c, X, q) + s.rho * Y + s.omega * X + s.eta * I);
        out.emplace_back("[A*,[A,A*]_q]_q + rho* A + omega A* + eta*",
                         qcomm(Y, c, q) + s.rho_star * X + s.omega * Y + s.eta_star * I);
    } else if (kind == "AW20") {
        const double b = s.beta_s;
        out.emplace_back("A^2A* - bAA*A + A*A^2 - g{A,A*} - (rho A* + g* A^2 + omega A + eta)",
                         X * X * Y - b * (X * Y * X) + Y * X * X - s.gamma_s * anticomm(X, Y) -
                             (s.rho * Y + s.gamma_s_star * (X * X) + s.omega * X + s.eta * I));
        out.emplace_back("A*^2A - bA*AA* + AA*^2 - g*{A,A*} - (rho* A + g A*^2 + omega A* + eta*)",
                         Y * Y * X - b * (Y * X * Y) + X * Y * Y - s.gamma_s_star * anticomm(X, Y) -
                             (s.rho_star * X + s.gamma_s * (Y * Y) + s.omega * Y + s.eta_star * I));
    } else if (kind == "TD33") {
        out.emplace_back("[A,[A,[A,A*]_q]_{1/q}] - rho [A,A*]",
                         comm(X, qcomm(X, qcomm(X, Y, q), 1.0 / q)) - s.rho * comm(X, Y));
        out.emplace_back("[A*,[A*,[A*,A]_q]_{1/q}] - rho* [A*,A]",
                         comm(Y, qcomm(Y, qcomm(Y, X, q), 1.0 / q)) - s.rho_star * comm(Y, X));
    } else if (kind == "qSerre27") {
        const double b = q + 1.0 / q;
        // generators: 0 = D0, 1 = D1
        out.emplace_back("[D1, D0D1^2 - bD1D0D1 + D1^2D0]", comm(Y, X * Y * Y - b * (Y * X * Y) + Y * Y * X));
        out.emplace_back("[D0, D1D0^2 - bD0D1D0 + D0^2D1]", comm(X, Y * X * X - b * (X * Y * X) + X * X * Y));
    } else if (kind == "bulkPASEP" || kind == "bulkPASEP-printed") {
        const double x0 = in.x0, x1 = -in.x0;
        const double r = 1.0 / std::sqrt(q), sm = std::sqrt(q) - 1.0 / std::sqrt(q), b = q + 1.0 / q;
        const P D0 = X, D1 = Y, ac = anticomm(D0, D1);
        const double last = kind == "bulkPASEP" ? 1.0 : -1.0;
        out.emplace_back("[D1,[D0,D1]_q]_q",
                         qcomm(D1, qcomm(D0, D1, q), q) -
                             (r * x1 * sm * ac - (x1 * x1 / q) * D0 + (x0 * x1 / q) * D1 - x0 * r * sm * (D1 * D1)));
        out.emplace_back("[[D0,D1]_q,D0]_q",
                         qcomm(qcomm(D0, D1, q), D0, q) - (-x0 * r * sm * ac - (x0 * x0 / q) * D1 +
                                                           (x0 * x1 / q) * D0 + last * x1 * r * sm * (D0 * D0)));
        out.emplace_back("D0D1^2 - bD1D0D1 + D1^2D0 (two-relation form)",
                         D0 * D1 * D1 - b * (D1 * D0 * D1) + D1 * D1 * D0 + x1 * r * sm * ac -
                             ((x1 * x1 / q) * D0 - (x0 * x1 / q) * D1 + x0 * r * sm * (D1 * D1)));
        out.emplace_back("D0^2D1 - bD0D1D0 + D1D0^2 (two-relation form)",
                         D0 * D0 * D1 - b * (D0 * D1 * D0) + D1 * D0 * D0 - x0 * r * sm * ac -
                             ((x0 * x0 / q) * D1 - (x0 * x1 / q) * D0 - last * x1 * r * sm * (D0 * D0)));
    } else if (kind == "bulkSSEP") {
        const double x0 = in.x0, x1 = -in.x0;
        const P D0 = X, D1 = Y;
        out.emplace_back("[D1,[D0,D1]] + x1^2 D0 - x0x1 D1", comm(D1, comm(D0, D1)) + (x1 * x1) * D0 - (x0 * x1) * D1);
        out.emplace_back("[[D0,D1],D0] + x0^2 D1 - x0x1 D0", comm(comm(D0, D1), D0) + (x0 * x0) * D1 - (x0 * x1) * D0);
        out.emplace_back("D0D1^2 - 2D1D0D1 + D1^2D0 - x1^2 D0 + x0x1 D1",
                         D0 * D1 * D1 - 2.0 * (D1 * D0 * D1) + D1 * D1 * D0 - (x1 * x1) * D0 + (x0 * x1) * D1);
        out.emplace_back("D0^2D1 - 2D0D1D0 + D1D0^2 - x0^2 D1 + x0x1 D0",
                         D0 * D0 * D1 - 2.0 * (D0 * D1 * D0) + D1 * D0 * D0 - (x0 * x0) * D1 + (x0 * x1) * D0);
    } else if (kind == "bulkSSEP-printed") {
        const double x0 = in.x0, x1 = -in.x0;
        const P D0 = X, D1 = Y, ac = anticomm(D0, D1);
        out.emplace_back("[D1,[D0,D1]]", comm(D1, comm(D0, D1)) -
                                             (x1 * ac - (x1 * x1) * D0 + (x0 * x1) * D1 - x0 * (D1 * D1)));
        out.emplace_back("[[D0,D1],D0]", comm(comm(D0, D1), D0) -
                                             (-x0 * ac - (x0 * x0) * D1 + (x0 * x1) * D0 - x1 * (D0 * D0)));
    } else if (kind == "DG38" || kind == "DG-generic") {
        const double r1 = kind == "DG-generic" && s.k ? *s.k * *s.k : s.rho;
        const double r2 = kind == "DG-generic" && s.k_star ? *s.k_star * *s.k_star : s.rho_star;
        out.emplace_back("[A,[A,[A,A*]]] - rho [A,A*]", comm(X, comm(X, comm(X, Y))) - r1 * comm(X, Y));
        out.emplace_back("[A*,[A*,[A*,A]]] - rho* [A*,A]", comm(Y, comm(Y, comm(Y, X))) - r2 * comm(Y, X));
    } else if (kind == "TASEP65-77") {
        const P D0 = X, D1 = Y, k = comm(D0, D1);
        out.emplace_back("65: D1D0 - D1 - D0", D1 * D0 - D1 - D0);
        out.emplace_back("66a: D1D0D1 - D1^2 - D0D1", D1 * D0 * D1 - D1 * D1 - D0 * D1);
        out.emplace_back("66b: D0D1D0 - D0D1 - D0^2", D0 * D1 * D0 - D0 * D1 - D0 * D0);
        out.emplace_back("67a: D1^2D0 - D1^2 - D1 - D0", D1 * D1 * D0 - D1 * D1 - D1 - D0);
        out.emplace_back("67b: D1D0^2 - D1 - D0 - D0^2", D1 * D0 * D0 - D1 - D0 - D0 * D0);
        out.emplace_back("68a: D1D0D1 - D1^2D0 - [D0,D1]", D1 * D0 * D1 - D1 * D1 * D0 - k);
        out.emplace_back("68b: D0D1D0 - D1D0^2 - [D0,D1]", D0 * D1 * D0 - D1 * D0 * D0 - k);
        out.emplace_back("69/70a: D1[D0,D1] - [D0,D1]", D1 * k - k);
        out.emplace_back("69/70b: [D0,D1]D0 - [D0,D1]", k * D0 - k);
        // shifted generators E = D - 1 satisfy E1E0 = Z with Z = 1
        const P E0 = D0 - I, E1 = D1 - I, ks = comm(E0, E1), ds = comm(E1, E0), Z = I;
        out.emplace_back("72: E1E0 - Z", E1 * E0 - Z);
        out.emplace_back("73a: E1E0E1 - Z E1", E1 * E0 * E1 - E1);
        out.emplace_back("73b: E0E1E0 - Z E0", E0 * E1 * E0 - E0);
        out.emplace_back("74a: E1^2E0 - Z E1", E1 * E1 * E0 - E1);
        out.emplace_back("74b: E1E0^2 - Z E0", E1 * E0 * E0 - E0);
        out.emplace_back("75a: E1E0E1 - E1^2E0", E1 * E0 * E1 - E1 * E1 * E0);
        out.emplace_back("75b: E0E1E0 - E1E0^2", E0 * E1 * E0 - E1 * E0 * E0);
        out.emplace_back("76a: E1[E0,E1]", E1 * ks);
        out.emplace_back("76b: [E0,E1]E0", ks * E0);
        out.emplace_back("77a: E1E0E1^2 - E1^2E0E1", E1 * E0 * E1 * E1 - E1 * E1 * E0 * E1);
        out.emplace_back("77b: E0^2E1E0 - E0E1E0^2", E0 * E0 * E1 * E0 - E0 * E1 * E0 * E0);
        out.emplace_back("([E1,E0])^2 - Z [E1,E0]", ds * ds - ds);
        out.emplace_back("[E1,E0](E0+E1)[E1,E0]", ds * (E0 + E1) * ds);
    } else if (kind == "TASEP85") {
        const double e1 = in.a + in.b, e2 = in.a * in.b;
        // generators: 0 = D, 1 = D*
        out.emplace_back("D*DD* - e1e2 D*", Y * X * Y - (e1 * e2) * Y);
        out.emplace_back("(D*)^2 - e2 D*", Y * Y - e2 * Y);
    } else if (kind == "TASEP86") {
        const double ab = in.a * in.b;
        out.emplace_back("D1D0D1 - ab D1", Y * X * Y - ab * Y);
        out.emplace_back("D0D1D0 - ab D0", X * Y * X - ab * X);
    } else if (kind == "TASEP88-90") {
        const double c = in.c_tilde;
        out.emplace_back("ABA - c A", X * Y * X - c * X);
        if (c == 0.0) out.emplace_back("ABAB - BABA", X * Y * X * Y - Y * X * Y * X);
        else out.emplace_back("ABAB - BABA - c(AB - BA)", X * Y * X * Y - Y * X * Y * X - c * comm(X, Y));
    } else if (kind == "TASEP93") {
        // generators: 0 = D^R = beta D1, 1 = D^L = alpha D0
        const double ab = in.a * in.b;
        out.emplace_back("DRDLDRDL - DLDRDLDR - ab(DRDL - DLDR)",
                         X * Y * X * Y - Y * X * Y * X - ab * comm(X, Y));
        const P E1 = (1.0 / in.b) * X, E0 = (1.0 / in.a) * Y;
        out.emplace_back("bulk: D1D0D1D0 - D0D1D0D1 - (D1D0 - D0D1)",
                         E1 * E0 * E1 * E0 - E0 * E1 * E0 * E1 - comm(E1, E0));
    } else {
        throw ValidationError("unknown relation kind '" + kind + "'");
    }
    return out;
}

RelationLine evaluate_relation(const std::string& name, const NcPoly& poly, const std::vector<Matrix>& mats,
                               bool truncated) {
    const Eigen::Index n = mats.front().rows();
    RelationLine line;
    line.name = name;
    line.degree = poly.degree();
    const Eigen::Index m = truncated ? n - line.degree : n;
    if (m <= 0) throw ValidationError("matrices too small for interior-block evaluation");
    Matrix total = Matrix::Zero(m, m);
    double scale = 0.0;
    for (const auto& [word, coef] : poly.terms()) {
        Matrix prod = Matrix::Identity(n, n);
        for (int g : word) {
            if (g < 0 || static_cast<std::size_t>(g) >= mats.size()) throw ValidationError("relation uses a missing operand");
            prod = prod * mats[g];
        }
        const Matrix term = coef * prod.topLeftCorner(m, m);
        scale = std::max(scale, inf_norm(term));
        total += term;
    }
    line.absolute = inf_norm(total);
    line.residual = scale > 0.0 ? line.absolute / scale : line.absolute;
    return line;
}

RelationReport check_relations(const std::string& kind, const RelationInput& in) {
    const auto polys = relation_polys(kind, in);
    require_square_pair(in.mats, 2);
    if ((kind == "AW13" || kind == "TD33" || kind.rfind("bulkPASEP", 0) == 0 || kind == "qSerre27") && !(in.q > 0.0))
        throw ValidationError("q-deformed relations need q > 0");
    RelationReport rep;
    rep.kind = kind;
    for (const auto& [name, poly] : polys) {
        rep.lines.push_back(evaluate_relation(name, poly, in.mats, in.truncated));
        rep.max_residual = std::max(rep.max_residual, rep.lines.back().residual);
    }
    return rep;
}

double pasep_shift(double q, double x0) {
    const double s = std::sqrt(q) - 1.0 / std::sqrt(q);
    if (!(q > 0.0) || s == 0.0) throw ValidationError("PASEP shift needs q > 0 and q != 1");
    return x0 / std::sqrt(q) / s;
}

std::pair<Matrix, Matrix> shift_generators(const Matrix& D0, const Matrix& D1, double q, double x0) {
    const double x1 = -x0;
    const Matrix I = Matrix::Identity(D0.rows(), D0.cols());
    if (q == 1.0) return {D0 + x0 * I, D1 - x1 * I};
    const double c = pasep_shift(q, x0);
    // D1 moves by -x1 q^{-1/2}/s = +c
    return {D0 + c * I, D1 + c * I};
}

std::pair<Matrix, Matrix> scaled_oscillator_pair(double q, int M, double x0) {
    if (!(q >= 0.0 && q < 1.0) || M < 2) throw ValidationError("oscillator pair needs 0 <= q < 1 and M >= 2");
    Matrix a = Matrix::Zero(M, M);
    for (int n = 1; n < M; ++n) a(n - 1, n) = std::sqrt(1.0 - std::pow(q, n));
    const Matrix I = Matrix::Identity(M, M);
    const Matrix D1 = x0 * (I + a) / (1.0 - q);
    const Matrix D0 = x0 * (I + a.transpose()) / (1.0 - q);
    return {D0, D1};
}

std::pair<Matrix, Matrix> ssep_bulk_pair(int M, double x0, double offset, const std::vector<double>& weights) {
    if (M < 2) throw ValidationError("pair needs M >= 2");
    Matrix S = Matrix::Zero(M, M), T = Matrix::Zero(M, M);
    for (int n = 0; n < M; ++n) {
        T(n, n) = 2.0 * x0 * n + offset;
        if (n + 1 < M) S(n + 1, n) = weights.empty() ? 1.0 : weights[static_cast<std::size_t>(n) % weights.size()];
    }
    return {(S - T) / 2.0, (S + T) / 2.0};
}

}  // namespace exclusia::algebra
