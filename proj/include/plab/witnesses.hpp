#pragma once

#include "plab/jordan.hpp"

namespace plab {

/// A constructed matrix together with the named checks that certify it.
/// Builders verify every check before returning and throw on any failure,
/// so a Witness in hand is always valid.
struct Witness {
    Matrix matrix;
    std::vector<std::pair<std::string, bool>> checks;
};

/// For a != 0 with a^2 == 0: B := x(x)a'f - ax(x)f + x(x)f where x is the
/// first basis vector moved by a and f solves f(x) = 0, f(ax) = 2. Then
/// a o B is a nonzero idempotent while B o B is not idempotent, so B
/// separates a from anything that kills it.
Witness witness_square_zero(const Matrix& a);

/// For an involution a != +-I: with Q := (I-a)/2, B := y(x)g + z(x)h built
/// from the two eigenspaces. a o B == 0 and B o B not idempotent.
Witness witness_involution(const Matrix& a);

/// Lemma-level separator for two distinct rank-one idempotents p, q with
/// q o (I-p) idempotent: a rank-one idempotent R with q o R == 0 and
/// p o R not idempotent (its trace is 1/2). Needs n >= 3.
Witness witness_distinguish_idem(const Matrix& p, const Matrix& q);

/// The five 2x2 patterns used by the reconstruction walk, embedded at basis
/// position pair (i, j), zero-based, i != j:
///   k_alpha  = [[1, a], [0, -1]]      h_beta   = [[1, 0], [b, -1]]
///   n_alpha  = [[0, a], [0, 0]]       m_beta   = [[0, 0], [b, 0]]
///   n_lambda = [[1/l, -1], [1/l^2, -1/l]]   (square-zero, rank one)
/// Both a and b are the `alpha` argument. lam must be nonzero.
struct StepFamilies {
    Matrix k_alpha, h_beta, n_alpha, m_beta, n_lambda;
};
StepFamilies step_families(int n, int i, int j, const Scalar& alpha, const Scalar& lam);

/// Factor a rank-one matrix as x (x) f (first nonzero column, matching row).
/// For idempotent input, f(x) == 1.
RankOneOp factor_rank_one(const Matrix& m);

} // namespace plab
