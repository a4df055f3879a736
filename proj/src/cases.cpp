#include <cmath>
#include <tuple>

#include "exclusia/algebra.hpp"
#include "exclusia/errors.hpp"

namespace exclusia::algebra {

namespace {

TriPairScalars bulk_aw_scalars(double q, double x0) {
    const double x1 = -x0, r = 1.0 / std::sqrt(q), s = std::sqrt(q) - 1.0 / std::sqrt(q);
    TriPairScalars sc;
    sc.beta_s = q + 1.0 / q;
    sc.rho = x1 * x1 / q;
    sc.rho_star = x0 * x0 / q;
    sc.omega = -x0 * x1 / q;
    sc.gamma_s = -x1 * r * s;
    sc.gamma_s_star = x0 * r * s;
    return sc;
}

}  // namespace

RelationInput standard_case(const std::string& kind, const ProcessParams& p, double j, int M, double x0, bool printed) {
    RelationInput in;
    in.q = p.q;
    in.x0 = x0;
    const auto constants = printed ? printed_structure_constants : structure_constants;

    if (kind == "AW13" || kind == "TD33") {
        const UqSu2Rep rep = build_uq_su2_rep(j, p.q);
        const BoundaryPair bp = build_boundary_ops_pasep(rep, p, x0);
        in.mats = {bp.A, bp.Astar};
        in.scalars = constants(p, rep.casimir, p.q, x0);
    } else if (kind == "DG38") {
        const UqSu2Rep rep = build_uq_su2_rep(j, 1.0);
        const BoundaryPair bp = build_boundary_ops_ssep(rep, p, x0);
        in.mats = {bp.A, bp.Astar};
        in.q = 1.0;
        in.scalars = constants(p, rep.casimir, 1.0, x0);
    } else if (kind == "AW20" || kind == "qSerre27" || kind == "bulkPASEP" || kind == "bulkPASEP-printed") {
        if (!(p.q > 0.0 && p.q < 1.0)) throw ValidationError(kind + " needs 0 < q < 1");
        auto [D0, D1] = scaled_oscillator_pair(p.q, M, x0);
        if (kind == "qSerre27") std::tie(D0, D1) = shift_generators(D0, D1, p.q, x0);
        in.mats = {D0, D1};
        in.scalars = bulk_aw_scalars(p.q, x0);
        in.truncated = true;
    } else if (kind == "bulkSSEP" || kind == "bulkSSEP-printed" || kind == "DG-generic") {
        auto [D0, D1] = ssep_bulk_pair(M, x0, 0.5, {1.0, 2.0, 0.5});
        in.q = 1.0;
        if (kind == "DG-generic") {
            std::tie(D0, D1) = shift_generators(D0, D1, 1.0, x0);
            in.scalars.beta_s = 2.0;
            in.scalars.k = printed ? 0.0 : std::abs(x0);
            in.scalars.k_star = in.scalars.k;
        }
        in.mats = {D0, D1};
    } else if (kind.rfind("TASEP", 0) == 0) {
        const double a = p.alpha, b = p.beta;
        const TasepAlgebraData d = build_tasep_data(a, b, M);
        const Matrix I = Matrix::Identity(M, M);
        in.a = a;
        in.b = b;
        in.truncated = true;
        if (kind == "TASEP65-77") in.mats = {I + lower_shift(M), I + upper_shift(M)};
        else if (kind == "TASEP85") in.mats = {d.D, d.Dstar};
        else if (kind == "TASEP86") in.mats = {d.D0, d.D1};
        else if (kind == "TASEP88-90") {
            in.mats = {d.D1, d.D0};
            in.c_tilde = a * b;
        } else if (kind == "TASEP93") in.mats = {b * upper_shift(M), a * lower_shift(M)};
        else throw ValidationError("unknown relation kind '" + kind + "'");
    } else {
        throw ValidationError("unknown relation kind '" + kind + "'");
    }
    return in;
}

}  // namespace exclusia::algebra
