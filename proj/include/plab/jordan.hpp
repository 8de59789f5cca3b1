#pragma once

#include "plab/matrix.hpp"

namespace plab {

/// (ab + ba) / 2.
Matrix jordan(const Matrix& a, const Matrix& b);

bool is_idempotent(const Matrix& m);                 // m^2 == m (zero counts)
bool is_nonzero_idempotent(const Matrix& m);
bool is_anti_idempotent(const Matrix& m);            // m^2 == -m, m != 0

enum class OpTag {
    Zero,
    Idempotent,        // nonzero, m^2 == m
    AntiIdempotent,    // nonzero, m^2 == -m
    Tripotent,         // m^3 == m, none of the above
    NilpotentRankOne,  // rank 1, m^2 == 0
    Other,
};

struct OpClass {
    OpTag tag = OpTag::Other;
    int rank = -1; // set for Idempotent / AntiIdempotent
    bool operator==(const OpClass&) const = default;
};

/// Tags are checked in declaration order; the first match wins, so an
/// idempotent is never reported as the tripotent it also is.
OpClass classify(const Matrix& m);

const char* op_tag_name(OpTag t);

/// pq == qp == 0. Both arguments must be idempotent.
bool is_orthogonal(const Matrix& p, const Matrix& q);

enum class ObservationTag { NonzeroIdem, ZeroProduct, NotIdem };

/// Decides which side of the basic split a o x falls on: a nonzero
/// idempotent, exactly zero, or not idempotent at all. Both inputs nonzero.
ObservationTag observation_split(const Matrix& a, const Matrix& x);

/// x f^T with its factors kept. trace == f(x).
struct RankOneOp {
    Vec x, f;
    Matrix to_matrix() const { return outer(x, f); }
    Scalar f_of_x() const { return dot(f, x); }
};

/// f(x) != 0 case: a o (x(x)f) is a nonzero idempotent iff ax = x/f(x) or
/// a'f = f/f(x). Returns whether the two sides agree (checked exactly).
bool lemma_f_nonzero(const Matrix& a, const RankOneOp& r);

/// f(x) == 0 case: a o (x(x)f) is a nonzero idempotent iff f(ax) = 2 and
/// f(a^2 x) = 0.
bool lemma_f_zero(const Matrix& a, const RankOneOp& r);

/// f(x) != 0 case: a o (x(x)f) == 0 iff ax = 0 and a'f = 0.
bool lemma_zero_jordan(const Matrix& a, const RankOneOp& r);

/// Probe-only eigenvalue test: runs a o (x(x)f) over an affine basis of
/// {f : f(x) = 1/lambda} (n probes) and reports whether every product is a
/// nonzero idempotent, which happens exactly when ax = lambda x.
bool eigen_probe(const Matrix& a, const Vec& x, const Scalar& lambda);

/// Probe verdicts on A == 0 / A == I using rank-one probes only (2n^2 and
/// n^2 products respectively). Callers compare against direct equality.
bool is_zero_via_probes(const Matrix& a);
bool is_identity_via_probes(const Matrix& a);

} // namespace plab
