#include "exclusia/algebra.hpp"
#include "exclusia/errors.hpp"

namespace exclusia::algebra {

Matrix upper_shift(int M) {
    if (M < 2) throw ValidationError("shift needs M >= 2");
    Matrix u = Matrix::Zero(M, M);
    for (int n = 0; n + 1 < M; ++n) u(n, n + 1) = 1.0;
    return u;
}

Matrix lower_shift(int M) { return upper_shift(M).transpose(); }

// UL = 1 on the interior and [U, L] = P0, the projector on the first state.
TasepAlgebraData build_tasep_data(double a, double b, int M) {
    if (!(a > 0.0) || !(b > 0.0)) throw ValidationError("TASEP constants a, b must be > 0");
    TasepAlgebraData d;
    d.a = a;
    d.b = b;
    d.e1 = a + b;
    d.e2 = a * b;
    d.Z = 1.0;
    const Matrix U = upper_shift(M), L = lower_shift(M);
    d.D1 = b * U;
    d.D0 = a * L;
    d.Dstar = d.D1 * d.D0 - d.D0 * d.D1;
    d.D = d.D0 + d.D1 + (a + b) * Matrix::Identity(M, M);
    return d;
}

}  // namespace exclusia::algebra
