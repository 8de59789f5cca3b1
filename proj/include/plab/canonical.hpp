#pragma once

#include "plab/jordan.hpp"
#include "plab/poly.hpp"
#include "plab/rng.hpp"

namespace plab {

/// Solve a X + X b = c exactly (a: m x m, b: k x k, c: m x k) by Kronecker
/// vectorization. Throws SpectraError when spec(a) meets spec(-b), decided
/// via a resultant, in which case the equation is not uniquely solvable.
/// Every returned X is re-substituted into the equation before returning.
Matrix solve_sylvester(const Matrix& a, const Matrix& b, const Matrix& c);

/// a = p - q with p, q orthogonal idempotents, p = (a^2+a)/2, q = (a^2-a)/2.
/// Requires a^3 == a. The pair is unique for a given tripotent.
struct TripotentParts {
    Matrix p, q;
};
TripotentParts tripotent_decompose(const Matrix& a);

/// Corner probe report for the split at k: probes T_R = [[X, R], [0, 0]].
/// probes_all_idempotent covers the supplied r_samples; the other two fields
/// are computed directly from a, so the implication "all probes idempotent
/// => lower-left block zero and corner product idempotent" is testable.
struct CornerReport {
    bool probes_all_idempotent = false;
    bool a21_zero = false;
    bool corner_idem = false;
};
CornerReport corner_trace_check(const Matrix& a, const Matrix& x_block, int k,
                                const std::vector<Matrix>& r_samples);

/// Deterministic r_samples family that provably catches any nonzero
/// lower-left block: per cell, scaled unit blocks c*E with c = 1..2k+2 (an
/// idempotent of size n has trace in 0..n; that many distinct affine values
/// cannot all land there).
std::vector<Matrix> corner_probe_family(int n, int k);

enum class TSetKind { Nilpotent1, Tripotent, JordanConjugate };

struct TSetElement {
    TSetKind kind;
    Matrix matrix;
    // JordanConjugate only:
    int k = 0;
    Scalar lambda;
    std::optional<Matrix> similarity;
};

/// Probe pool: rank-one square-zeros, conjugated signature tripotents, and
/// conjugates of J_k(lambda) + 0 with k <= 3 (k <= 2 when n == 3). Every
/// element is validated against its defining identities on construction.
std::vector<TSetElement> build_t_set(int n, const std::vector<Scalar>& lambdas, Rng& rng, int count);

/// {1, -1, 2, 1/2, i}.
std::vector<Scalar> default_lambda_set();

} // namespace plab
