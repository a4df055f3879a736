#include "exclusia/charges.hpp"

#include <algorithm>
#include <cmath>

#include "exclusia/errors.hpp"

namespace exclusia::charges {

using algebra::commutator;
using algebra::inf_norm;

namespace {

using MatX = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

void validate_constants(double rho, double rho_star, int n_max) {
    if (rho == 0.0 || rho_star == 0.0)
        throw ValidationError("degenerate charge recursion: rho and rho* must be nonzero (needs beta delta > 0 and alpha gamma > 0)");
    if (rho / rho_star < 0.0) throw ValidationError("rho and rho* must have the same sign");
    if (n_max < 0) throw ValidationError("n_max must be >= 0");
}

// The recursion cancels terms that grow like (|A| |A*| / rho)^n, so it runs in
// extended precision; a and as must already satisfy the relations with a
// common constant rho.
void run_recursion(ChargeSequence& cs, const MatX& a, const MatX& as, int n_max) {
    const long double c = 2.0L / cs.rho;
    const long double f = cs.f, fs = cs.f_star / cs.astar_scale;
    auto comm = [](const MatX& x, const MatX& y) -> MatX { return x * y - y * x; };
    MatX r = a, rt = as;
    cs.H = (f * a + fs * as).cast<double>();
    cs.R = {a.cast<double>()};
    cs.Rtilde = {as.cast<double>()};
    cs.Q = {cs.H};
    for (int n = 1; n <= n_max; ++n) {
        MatX rn = -c * comm(a, comm(as, r)) - rt;
        MatX rtn = -c * comm(as, comm(a, rt)) - r;
        cs.Q.push_back((f * (rn - rt) + fs * (rtn - r)).cast<double>());
        cs.R.push_back(rn.cast<double>());
        cs.Rtilde.push_back(rtn.cast<double>());
        r = std::move(rn);
        rt = std::move(rtn);
    }
}

ChargeSequence prepare(double rho, double rho_star, double f, double f_star) {
    ChargeSequence cs;
    cs.f = f;
    cs.f_star = f_star;
    cs.rho = rho;
    cs.rho_star = rho_star;
    cs.astar_scale = std::sqrt(rho / rho_star);
    return cs;
}

}  // namespace

ChargeSequence charge_sequence(const Matrix& A, const Matrix& Astar, double rho, double rho_star, double f,
                               double f_star, int n_max) {
    if (A.rows() != A.cols() || Astar.rows() != Astar.cols() || A.rows() != Astar.rows())
        throw ValidationError("A and A* must be square and of equal dimension");
    validate_constants(rho, rho_star, n_max);
    ChargeSequence cs = prepare(rho, rho_star, f, f_star);
    const MatX a = A.cast<long double>();
    const MatX as = static_cast<long double>(cs.astar_scale) * Astar.cast<long double>();
    run_recursion(cs, a, as, n_max);
    return cs;
}

ChargeSequence ssep_charge_sequence(const ProcessParams& p, double j, double f, double f_star, int n_max, double x0) {
    const long double x1 = -x0;
    const double rho = x0 * x0 * (p.beta + p.delta) * (p.beta + p.delta);
    const double rho_star = x0 * x0 * (p.alpha + p.gamma) * (p.alpha + p.gamma);
    validate_constants(rho, rho_star, n_max);
    const algebra::UqSu2Rep rep = algebra::build_uq_su2_rep(j, 1.0);
    // entries of N, A+ and A- are exact at q = 1
    const MatX N = rep.N.cast<long double>(), Ap = rep.Aplus.cast<long double>(), Am = rep.Aminus.cast<long double>();
    const long double al = p.alpha, be = p.beta, ga = p.gamma, de = p.delta, y0 = x0;
    const MatX a = -x1 * be * Ap - y0 * de * Am - (x1 * be + y0 * de) * N;
    ChargeSequence cs = prepare(rho, rho_star, f, f_star);
    const long double s = (be + de) / (al + ga);  // sqrt(rho / rho*) without rounding the square root
    cs.astar_scale = static_cast<double>(s);
    const MatX as = s * (y0 * al * Ap + x1 * ga * Am + (y0 * al + x1 * ga) * N);
    run_recursion(cs, a, as, n_max);
    return cs;
}

double max_commutator(const ChargeSequence& cs) {
    double worst = 0.0;
    for (std::size_t m = 0; m < cs.Q.size(); ++m)
        for (std::size_t n = m + 1; n < cs.Q.size(); ++n) {
            const double scale = std::max(inf_norm(cs.Q[m]), inf_norm(cs.Q[n]));
            if (scale == 0.0) continue;
            worst = std::max(worst, inf_norm(commutator(cs.Q[m], cs.Q[n])) / (scale * scale));
        }
    return worst;
}

BoundaryChargeReport ssep_boundary_charges(const ProcessParams& p, const algebra::UqSu2Rep& rep, double x0) {
    const algebra::BoundaryPair bp = algebra::build_boundary_ops_ssep(rep, p, x0);
    const double x1 = -x0;
    const Matrix I = Matrix::Identity(rep.dim(), rep.dim());
    BoundaryChargeReport out;
    out.BR = bp.A - (x1 * p.beta + x0 * p.delta) * I;
    out.BL = bp.Astar + (x0 * p.alpha + x1 * p.gamma) * I;
    out.rho = x0 * x0 * (p.beta + p.delta) * (p.beta + p.delta);
    out.rho_star = x0 * x0 * (p.alpha + p.gamma) * (p.alpha + p.gamma);
    out.printed_rho = -x0 * x1 * p.beta * p.delta;
    out.printed_rho_star = -x0 * x1 * p.alpha * p.gamma;

    algebra::RelationInput in;
    in.mats = {out.BR, out.BL};
    in.q = 1.0;
    in.x0 = x0;
    in.scalars.rho = out.rho;
    in.scalars.rho_star = out.rho_star;
    auto rep_ok = algebra::check_relations("DG38", in);
    out.residual_right = rep_ok.lines[0].residual;
    out.residual_left = rep_ok.lines[1].residual;
    in.scalars.rho = out.printed_rho;
    in.scalars.rho_star = out.printed_rho_star;
    auto rep_pr = algebra::check_relations("DG38", in);
    out.printed_residual_right = rep_pr.lines[0].residual;
    out.printed_residual_left = rep_pr.lines[1].residual;
    return out;
}

}  // namespace exclusia::charges
