#include "plab/generators.hpp"

#include "plab/errors.hpp"

namespace plab {

Scalar random_scalar(Rng& rng) {
    auto part = [&rng]() {
        long num = rng.int_in(-9, 9);
        long den = rng.coin() ? 1 : rng.int_in(1, 9);
        return Scalar(num, den);
    };
    Scalar s = part();
    if (rng.coin()) s += Scalar::i() * part();
    return s;
}

Scalar random_small_int(Rng& rng) {
    long v = rng.int_in(-4, 4);
    if (v == 0) v = 1;
    return Scalar(v);
}

Vec random_vec(int n, Rng& rng) {
    Vec v((size_t)n);
    for (auto& s : v) s = random_scalar(rng);
    return v;
}

Vec random_nonzero_vec(int n, Rng& rng) {
    for (;;) {
        Vec v = random_vec(n, rng);
        if (!vec_is_zero(v)) return v;
    }
}

Matrix random_matrix(int n, Rng& rng) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = random_scalar(rng);
    return m;
}

Matrix random_nonzero_matrix(int n, Rng& rng) {
    for (;;) {
        Matrix m = random_matrix(n, rng);
        if (!m.is_zero()) return m;
    }
}

Matrix random_invertible(int n, Rng& rng) {
    for (;;) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                long v = rng.int_in(-4, 4);
                m.at(i, j) = rng.pick(8) == 0 ? Scalar(v) + Scalar::i() * Scalar(rng.int_in(-2, 2))
                                              : Scalar(v);
            }
        if (rank(m) == n) return m;
    }
}

Matrix random_idempotent(int n, int r, Rng& rng) {
    if (r < 0 || r > n) throw PreconditionError("random_idempotent: rank out of range");
    Matrix t = random_invertible(n, rng);
    Matrix d(n, n);
    for (int i = 0; i < r; ++i) d.at(i, i) = Scalar(1);
    return t * d * inverse(t);
}

Matrix random_involution(int n, Rng& rng) {
    if (n < 2) throw PreconditionError("random_involution: n >= 2 required");
    Matrix t = random_invertible(n, rng);
    Vec d((size_t)n);
    for (;;) {
        bool plus = false, minus = false;
        for (int i = 0; i < n; ++i) {
            bool up = rng.coin();
            d[i] = Scalar(up ? 1 : -1);
            (up ? plus : minus) = true;
        }
        if (plus && minus) break;
    }
    return t * Matrix::diag(d) * inverse(t);
}

Matrix random_square_zero(int n, Rng& rng) {
    int r = (int)rng.int_in(1, n / 2);
    Matrix nil(n, n);
    for (int i = 0; i < r; ++i) nil.at(i, r + i) = Scalar(1);
    Matrix t = random_invertible(n, rng);
    return t * nil * inverse(t);
}

Matrix random_tripotent(int n, int p, int q, Rng& rng) {
    if (p < 1 || q < 0 || p + q > n) throw PreconditionError("random_tripotent: bad signature");
    Matrix d(n, n);
    for (int i = 0; i < p; ++i) d.at(i, i) = Scalar(1);
    for (int i = 0; i < q; ++i) d.at(p + i, p + i) = Scalar(-1);
    Matrix t = random_invertible(n, rng);
    return t * d * inverse(t);
}

Vec random_functional_at(const Vec& x, const Scalar& value, Rng& rng) {
    if (vec_is_zero(x)) throw PreconditionError("random_functional_at: zero vector");
    int n = (int)x.size();
    int p = 0;
    while (x[p].is_zero()) ++p;
    // f = (value/x_p) e_p + random combination of the annihilator basis
    Vec f((size_t)n);
    f[p] = value / x[p];
    for (int j = 0; j < n; ++j) {
        if (j == p) continue;
        Scalar c = random_scalar(rng);
        f[j] += c;
        f[p] -= c * x[j] / x[p];
    }
    return f;
}

Vec random_annihilating_functional(const Vec& x, Rng& rng) {
    if (x.size() < 2) throw PreconditionError("random_annihilating_functional: n >= 2 required");
    for (;;) {
        Vec f = random_functional_at(x, Scalar(0), rng);
        if (!vec_is_zero(f)) return f;
    }
}

} // namespace plab
