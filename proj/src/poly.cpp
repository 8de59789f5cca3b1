#include "plab/poly.hpp"

#include "plab/errors.hpp"

namespace plab {

Poly char_poly(const Matrix& a) {
    int n = a.dim();
    // M_0 = I, c_n = 1; M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k
    Poly c((size_t)n + 1);
    c[n] = Scalar(1);
    Matrix m = Matrix::identity(n);
    for (int k = 1; k <= n; ++k) {
        m = a * m;
        Scalar t = m.trace() * Scalar(1, k);
        c[n - k] = -t;
        for (int i = 0; i < n; ++i) m.at(i, i) -= t;
    }
    return c;
}

Scalar poly_eval(const Poly& p, const Scalar& t) {
    Scalar v;
    for (size_t k = p.size(); k-- > 0;) v = v * t + p[k];
    return v;
}

Poly poly_negate_arg(const Poly& p) {
    Poly q = p;
    for (size_t k = 1; k < q.size(); k += 2) q[k] = -q[k];
    return q;
}

namespace {

Poly strip(const Poly& p) {
    Poly q = p;
    while (q.size() > 1 && q.back().is_zero()) q.pop_back();
    return q;
}

} // namespace

Scalar resultant(const Poly& p0, const Poly& q0) {
    Poly p = strip(p0), q = strip(q0);
    int m = (int)p.size() - 1, n = (int)q.size() - 1;
    if (m < 0 || n < 0) throw PreconditionError("resultant of empty polynomial");
    if (m == 0 && n == 0) return Scalar(1);
    if (m == 0) { // res(c, q) = c^deg(q)
        Scalar r(1);
        for (int k = 0; k < n; ++k) r *= p[0];
        return r;
    }
    if (n == 0) {
        Scalar r(1);
        for (int k = 0; k < m; ++k) r *= q[0];
        return r;
    }
    Matrix s(m + n, m + n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k <= m; ++k) s.at(i, i + k) = p[m - k];
    for (int i = 0; i < m; ++i)
        for (int k = 0; k <= n; ++k) s.at(n + i, i + k) = q[n - k];
    return det(s);
}

bool spectra_disjoint(const Matrix& a, const Matrix& b) {
    return !resultant(char_poly(a), poly_negate_arg(char_poly(b))).is_zero();
}

} // namespace plab
