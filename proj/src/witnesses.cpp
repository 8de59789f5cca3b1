#include "plab/witnesses.hpp"

#include "plab/errors.hpp"

namespace plab {

namespace {

void require(Witness& w, const std::string& name, bool ok) {
    w.checks.emplace_back(name, ok);
    if (!ok) throw Error("witness check failed: " + name);
}

} // namespace

RankOneOp factor_rank_one(const Matrix& m) {
    int n = m.dim();
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            if (m.at(i, j).is_zero()) continue;
            Vec x = m.col(j);
            Vec f = vec_scale(m.at(i, j).inv(), m.row(i));
            if (outer(x, f) != m) throw PreconditionError("factor_rank_one: rank exceeds one");
            return {std::move(x), std::move(f)};
        }
    throw PreconditionError("factor_rank_one: zero matrix");
}

Witness witness_square_zero(const Matrix& a) {
    int n = a.dim();
    if (a.is_zero()) throw PreconditionError("witness_square_zero: a == 0");
    if (!(a * a).is_zero()) throw PreconditionError("witness_square_zero: a^2 != 0");

    int ix = 0;
    while (vec_is_zero(a * basis_vec(n, ix))) ++ix; // a != 0, so some column moves
    Vec x = basis_vec(n, ix);
    Vec ax = a * x;
    auto f = solve_functional({{x, Scalar(0)}, {ax, Scalar(2)}}, n);
    if (!f) throw PreconditionError("witness_square_zero: functional system inconsistent");
    // x and ax are independent (f exists), as a^2 = 0 forces ax outside span{x}

    Vec af = *f * a;
    Matrix b = outer(x, af) - outer(ax, *f) + outer(x, *f);

    Witness w{b, {}};
    require(w, "rank(B) <= 2", rank(b) <= 2);
    require(w, "B x == 2 x", b * x == vec_scale(Scalar(2), x));
    require(w, "a o B nonzero idempotent", is_nonzero_idempotent(jordan(a, b)));
    require(w, "B o B not idempotent", !is_idempotent(jordan(b, b)));
    return w;
}

Witness witness_involution(const Matrix& a) {
    int n = a.dim();
    if (a * a != Matrix::identity(n)) throw PreconditionError("witness_involution: a^2 != I");
    if (a == Matrix::identity(n) || a == -Matrix::identity(n))
        throw PreconditionError("witness_involution: a is scalar");

    Matrix q = (Matrix::identity(n) - a) * Scalar(1, 2); // projection onto the -1 eigenspace
    Matrix p = Matrix::identity(n) - q;

    auto first_nonzero_col = [n](const Matrix& m) {
        for (int j = 0; j < n; ++j)
            if (!vec_is_zero(m.col(j))) return m.col(j);
        throw PreconditionError("witness_involution: eigenspace empty");
    };
    Vec y = first_nonzero_col(p); // a y = y
    Vec z = first_nonzero_col(q); // a z = -z

    std::vector<std::pair<Vec, Scalar>> gsys, hsys;
    for (int j = 0; j < n; ++j) gsys.push_back({p.col(j), Scalar(0)});
    gsys.push_back({z, Scalar(2)});
    for (int j = 0; j < n; ++j) hsys.push_back({q.col(j), Scalar(0)});
    hsys.push_back({y, Scalar(1)});
    auto g = solve_functional(gsys, n);
    auto h = solve_functional(hsys, n);
    if (!g || !h) throw PreconditionError("witness_involution: functional system inconsistent");

    Matrix b = outer(y, *g) + outer(z, *h);

    Witness w{b, {}};
    require(w, "rank(B) <= 2", rank(b) <= 2);
    require(w, "B y == z", b * y == z);
    require(w, "B z == 2 y", b * z == vec_scale(Scalar(2), y));
    require(w, "a o B == 0", jordan(a, b).is_zero());
    require(w, "B o B not idempotent", !is_idempotent(jordan(b, b)));
    return w;
}

Witness witness_distinguish_idem(const Matrix& p, const Matrix& q) {
    int n = p.dim();
    if (n < 3) throw PreconditionError("witness_distinguish_idem: n >= 3 required");
    if (p == q) throw PreconditionError("witness_distinguish_idem: p == q");
    if (!is_nonzero_idempotent(p) || rank(p) != 1 || !is_nonzero_idempotent(q) || rank(q) != 1)
        throw PreconditionError("witness_distinguish_idem: rank-one idempotents required");
    if (!is_idempotent(jordan(q, Matrix::identity(n) - p)))
        throw PreconditionError("witness_distinguish_idem: q o (I-p) not idempotent");

    RankOneOp pf = factor_rank_one(p), qf = factor_rank_one(q);
    const Vec &x1 = pf.x, &x2 = qf.x;
    const Vec &f1 = pf.f, &f2 = qf.f;
    Scalar f1x2 = dot(f1, x2), f2x1 = dot(f2, x1);
    if (!f1x2.is_zero() && !f2x1.is_zero())
        throw PreconditionError("witness_distinguish_idem: hypothesis forces f1(x2) = 0 or f2(x1) = 0");

    // y: in ker f1 ^ ker f2, outside span{x1, x2}; first kernel basis vector
    // that is independent of x1, x2 (one always exists for n >= 3)
    Matrix cons(2, n);
    for (int j = 0; j < n; ++j) { cons.at(0, j) = f1[j]; cons.at(1, j) = f2[j]; }
    Vec y;
    {
        Matrix span(3, n);
        for (int j = 0; j < n; ++j) { span.at(0, j) = x1[j]; span.at(1, j) = x2[j]; }
        bool found = false;
        for (const Vec& k : kernel_basis(cons)) {
            for (int j = 0; j < n; ++j) span.at(2, j) = k[j];
            if (rank(span) == 3) { y = k; found = true; break; }
        }
        if (!found) throw PreconditionError("witness_distinguish_idem: no admissible y");
    }
    auto g = solve_functional({{x1, Scalar(0)}, {x2, Scalar(0)}, {y, Scalar(1)}}, n);
    if (!g) throw PreconditionError("witness_distinguish_idem: g system inconsistent");

    Vec u, phi;
    if (f1x2.is_zero()) {
        u = vec_sub(vec_add(y, x1), vec_scale(f2x1, x2));
        phi = vec_add(*g, f1);
    } else {
        u = vec_add(y, x1);
        phi = vec_sub(vec_add(*g, f1), vec_scale(f1x2, f2));
    }
    Matrix r = outer(u, phi) * Scalar(1, 2);

    Witness w{r, {}};
    require(w, "R rank-one idempotent", is_nonzero_idempotent(r) && rank(r) == 1);
    require(w, "q o R == 0", jordan(q, r).is_zero());
    Matrix pr = jordan(p, r);
    require(w, "p o R not idempotent", !is_idempotent(pr));
    require(w, "trace(p o R) == 1/2", pr.trace() == Scalar(1, 2));
    return w;
}

StepFamilies step_families(int n, int i, int j, const Scalar& alpha, const Scalar& lam) {
    if (i < 0 || j < 0 || i >= n || j >= n || i == j)
        throw PreconditionError("step_families: need distinct positions inside the dimension");
    if (lam.is_zero()) throw PreconditionError("step_families: lam == 0");

    auto embed = [&](const Scalar& aii, const Scalar& aij, const Scalar& aji, const Scalar& ajj) {
        Matrix m(n, n);
        m.at(i, i) = aii;
        m.at(i, j) = aij;
        m.at(j, i) = aji;
        m.at(j, j) = ajj;
        return m;
    };

    Scalar li = lam.inv();
    StepFamilies out;
    out.k_alpha = embed(Scalar(1), alpha, Scalar(0), Scalar(-1));
    out.h_beta = embed(Scalar(1), Scalar(0), alpha, Scalar(-1));
    out.n_alpha = embed(Scalar(0), alpha, Scalar(0), Scalar(0));
    out.m_beta = embed(Scalar(0), Scalar(0), alpha, Scalar(0));
    out.n_lambda = embed(li, Scalar(-1), li * li, -li);
    return out;
}

} // namespace plab
