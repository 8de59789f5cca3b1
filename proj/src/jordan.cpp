#include "plab/jordan.hpp"

#include "plab/errors.hpp"

namespace plab {

Matrix jordan(const Matrix& a, const Matrix& b) {
    if (a.dim() != b.dim()) throw DimensionError("jordan: dimension mismatch");
    return (a * b + b * a) * Scalar(1, 2);
}

bool is_idempotent(const Matrix& m) { return m * m == m; }

bool is_nonzero_idempotent(const Matrix& m) { return !m.is_zero() && is_idempotent(m); }

bool is_anti_idempotent(const Matrix& m) { return !m.is_zero() && m * m == -m; }

OpClass classify(const Matrix& m) {
    m.dim();
    if (m.is_zero()) return {OpTag::Zero, -1};
    Matrix sq = m * m;
    if (sq == m) return {OpTag::Idempotent, rank(m)};
    if (sq == -m) return {OpTag::AntiIdempotent, rank(m)};
    if (sq * m == m) return {OpTag::Tripotent, -1};
    if (sq.is_zero() && rank(m) == 1) return {OpTag::NilpotentRankOne, -1};
    return {OpTag::Other, -1};
}

const char* op_tag_name(OpTag t) {
    switch (t) {
        case OpTag::Zero: return "zero";
        case OpTag::Idempotent: return "idempotent";
        case OpTag::AntiIdempotent: return "anti-idempotent";
        case OpTag::Tripotent: return "tripotent";
        case OpTag::NilpotentRankOne: return "nilpotent-rank-one";
        case OpTag::Other: return "other";
    }
    return "?";
}

bool is_orthogonal(const Matrix& p, const Matrix& q) {
    if (p.dim() != q.dim()) throw DimensionError("is_orthogonal: dimension mismatch");
    if (!is_idempotent(p) || !is_idempotent(q))
        throw PreconditionError("is_orthogonal: idempotent arguments required");
    return (p * q).is_zero() && (q * p).is_zero();
}

ObservationTag observation_split(const Matrix& a, const Matrix& x) {
    if (a.is_zero() || x.is_zero()) throw PreconditionError("observation_split: zero input");
    Matrix j = jordan(a, x);
    if (j.is_zero()) return ObservationTag::ZeroProduct;
    if (is_idempotent(j)) return ObservationTag::NonzeroIdem;
    return ObservationTag::NotIdem;
}

bool lemma_f_nonzero(const Matrix& a, const RankOneOp& r) {
    Scalar fx = r.f_of_x();
    if (fx.is_zero()) throw PreconditionError("lemma_f_nonzero: f(x) == 0");
    if (a.is_zero()) throw PreconditionError("lemma_f_nonzero: a == 0");
    bool lhs = is_nonzero_idempotent(jordan(a, r.to_matrix()));
    Scalar c = fx.inv();
    bool rhs = a * r.x == vec_scale(c, r.x) || r.f * a == vec_scale(c, r.f);
    return lhs == rhs;
}

bool lemma_f_zero(const Matrix& a, const RankOneOp& r) {
    if (!r.f_of_x().is_zero()) throw PreconditionError("lemma_f_zero: f(x) != 0");
    if (a.is_zero()) throw PreconditionError("lemma_f_zero: a == 0");
    bool lhs = is_nonzero_idempotent(jordan(a, r.to_matrix()));
    Vec ax = a * r.x;
    bool rhs = dot(r.f, ax) == Scalar(2) && dot(r.f, a * ax).is_zero();
    return lhs == rhs;
}

bool lemma_zero_jordan(const Matrix& a, const RankOneOp& r) {
    if (r.f_of_x().is_zero()) throw PreconditionError("lemma_zero_jordan: f(x) == 0");
    if (a.is_zero()) throw PreconditionError("lemma_zero_jordan: a == 0");
    bool lhs = jordan(a, r.to_matrix()).is_zero();
    bool rhs = vec_is_zero(a * r.x) && vec_is_zero(r.f * a);
    return lhs == rhs;
}

namespace {

// Affine basis of {f : f(x) = v}, built from the first nonzero coordinate of
// x: the base point plus each annihilator basis functional. n elements whose
// affine hull is the whole constraint plane.
std::vector<Vec> functional_affine_basis(const Vec& x, const Scalar& v) {
    int n = (int)x.size();
    int p = 0;
    while (x[p].is_zero()) ++p;
    Vec f0((size_t)n);
    f0[p] = v / x[p];
    std::vector<Vec> out{f0};
    for (int j = 0; j < n; ++j) {
        if (j == p) continue;
        Vec f = f0;
        f[j] += Scalar(1);
        f[p] -= x[j] / x[p];
        out.push_back(std::move(f));
    }
    return out;
}

} // namespace

bool eigen_probe(const Matrix& a, const Vec& x, const Scalar& lambda) {
    if (a.is_zero()) throw PreconditionError("eigen_probe: a == 0");
    if (vec_is_zero(x)) throw PreconditionError("eigen_probe: x == 0");
    if (lambda.is_zero()) throw PreconditionError("eigen_probe: lambda == 0");
    for (const Vec& f : functional_affine_basis(x, lambda.inv())) {
        if (!is_nonzero_idempotent(jordan(a, outer(x, f)))) return false;
    }
    return true;
}

bool is_zero_via_probes(const Matrix& a) {
    int n = a.dim();
    for (int i = 0; i < n; ++i) {
        for (const Vec& f : functional_affine_basis(basis_vec(n, i), Scalar(1))) {
            Matrix r = outer(basis_vec(n, i), f);
            // both r and -r must land in the idempotent cone; only the zero
            // product does that
            if (!is_idempotent(jordan(a, r))) return false;
            if (!is_idempotent(jordan(a, -r))) return false;
        }
    }
    return true;
}

bool is_identity_via_probes(const Matrix& a) {
    int n = a.dim();
    for (int i = 0; i < n; ++i) {
        for (const Vec& f : functional_affine_basis(basis_vec(n, i), Scalar(1))) {
            if (!is_nonzero_idempotent(jordan(a, outer(basis_vec(n, i), f)))) return false;
        }
    }
    return true;
}

} // namespace plab
