#include "plab/canonical.hpp"

#include "plab/errors.hpp"
#include "plab/generators.hpp"

namespace plab {

Matrix solve_sylvester(const Matrix& a, const Matrix& b, const Matrix& c) {
    int m = a.dim(), k = b.dim();
    if (c.rows() != m || c.cols() != k) throw DimensionError("solve_sylvester: rhs shape");
    if (!spectra_disjoint(a, b))
        throw SpectraError("solve_sylvester: spectra of a and -b intersect; not uniquely solvable");

    // column-major vec: vec(aX) = (I (x) a) vec X, vec(Xb) = (b^T (x) I) vec X
    Matrix sys = kron(Matrix::identity(k), a) + kron(b.transpose(), Matrix::identity(m));
    Vec rhs((size_t)m * k);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < m; ++i) rhs[(size_t)j * m + i] = c.at(i, j);
    auto v = solve(sys, rhs);
    if (!v) throw SpectraError("solve_sylvester: inconsistent system despite disjoint spectra");
    Matrix x(m, k);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < m; ++i) x.at(i, j) = (*v)[(size_t)j * m + i];
    if (a * x + x * b != c) throw Error("solve_sylvester: substitution check failed");
    return x;
}

TripotentParts tripotent_decompose(const Matrix& a) {
    Matrix sq = a * a;
    if (sq * a != a) throw PreconditionError("tripotent_decompose: a^3 != a");
    Scalar half(1, 2);
    TripotentParts out{(sq + a) * half, (sq - a) * half};
    if (!is_idempotent(out.p) || !is_idempotent(out.q))
        throw Error("tripotent_decompose: parts not idempotent");
    if (!is_orthogonal(out.p, out.q)) throw Error("tripotent_decompose: parts not orthogonal");
    if (out.p - out.q != a) throw Error("tripotent_decompose: parts do not recombine");
    return out;
}

CornerReport corner_trace_check(const Matrix& a, const Matrix& x_block, int k,
                                const std::vector<Matrix>& r_samples) {
    int n = a.dim();
    if (k < 1 || k >= n) throw DimensionError("corner_trace_check: 1 <= k < n required");
    if (x_block.rows() != k || x_block.cols() != k) throw DimensionError("corner_trace_check: x_block is k x k");

    CornerReport rep;
    rep.probes_all_idempotent = true;
    for (const Matrix& r : r_samples) {
        if (r.rows() != k || r.cols() != n - k) throw DimensionError("corner_trace_check: sample shape");
        Matrix t(n, n);
        t.set_block(0, 0, x_block);
        t.set_block(0, k, r);
        if (!is_nonzero_idempotent(jordan(a, t))) {
            rep.probes_all_idempotent = false;
            break;
        }
    }
    rep.a21_zero = a.block(k, 0, n - k, k).is_zero();
    rep.corner_idem = is_nonzero_idempotent(jordan(a.block(0, 0, k, k), x_block));
    return rep;
}

std::vector<Matrix> corner_probe_family(int n, int k) {
    std::vector<Matrix> out;
    out.emplace_back(k, n - k); // R = 0, the bare corner probe
    for (int p = 0; p < k; ++p)
        for (int q = 0; q < n - k; ++q)
            for (long c = 1; c <= 2 * k + 2; ++c) {
                Matrix r(k, n - k);
                r.at(p, q) = Scalar(c);
                out.push_back(std::move(r));
            }
    return out;
}

std::vector<Scalar> default_lambda_set() {
    return {Scalar(1), Scalar(-1), Scalar(2), Scalar(1, 2), Scalar::i()};
}

std::vector<TSetElement> build_t_set(int n, const std::vector<Scalar>& lambdas, Rng& rng, int count) {
    if (n < 3) throw PreconditionError("build_t_set: n >= 3 required");
    for (const auto& l : lambdas)
        if (l.is_zero()) throw PreconditionError("build_t_set: zero lambda");
    int kmax = n == 3 ? 2 : 3;

    std::vector<TSetElement> out;
    size_t li = 0;
    for (int c = 0; c < count; ++c) {
        switch (c % 3) {
            case 0: { // rank-one square-zero
                Vec x = random_nonzero_vec(n, rng);
                Vec f = random_annihilating_functional(x, rng);
                TSetElement e{TSetKind::Nilpotent1, outer(x, f), 0, Scalar(0), std::nullopt};
                if (!(e.matrix * e.matrix).is_zero() || rank(e.matrix) != 1)
                    throw Error("build_t_set: bad nilpotent");
                out.push_back(std::move(e));
                break;
            }
            case 1: { // conjugated signature tripotent
                int p = (int)rng.int_in(1, n);
                int q = (int)rng.int_in(0, n - p);
                TSetElement e{TSetKind::Tripotent, random_tripotent(n, p, q, rng), 0, Scalar(0),
                              std::nullopt};
                Matrix m = e.matrix;
                if (m * m * m != m) throw Error("build_t_set: bad tripotent");
                out.push_back(std::move(e));
                break;
            }
            default: { // conjugate of J_k(lambda) + 0
                int k = (int)rng.int_in(2, kmax);
                Scalar lam = lambdas[li++ % lambdas.size()];
                Matrix s = random_invertible(n, rng);
                Matrix jk = direct_sum(jordan_block(k, lam), Matrix::zero(n - k));
                TSetElement e{TSetKind::JordanConjugate, s * jk * inverse(s), k, lam, s};
                // minimal polynomial is (t - lam)^k * t here: check both the
                // annihilation and the minimality of the (t - lam) factor
                Matrix shifted = e.matrix - Matrix::identity(n) * lam;
                Matrix pw = Matrix::identity(n);
                for (int t = 0; t < k - 1; ++t) pw = pw * shifted;
                if (!(pw * shifted * e.matrix).is_zero() || (pw * e.matrix).is_zero())
                    throw Error("build_t_set: bad jordan conjugate");
                out.push_back(std::move(e));
                break;
            }
        }
    }
    return out;
}

} // namespace plab
