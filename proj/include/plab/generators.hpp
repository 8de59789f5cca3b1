#pragma once

#include "plab/matrix.hpp"
#include "plab/rng.hpp"

namespace plab {

/// Random Gaussian rational with numerators/denominators in [-9, 9]. Half of
/// the draws are real, half get an imaginary part; a quarter are integers.
Scalar random_scalar(Rng& rng);

/// Small nonzero integer-entry scalar in [-4, 4] (used for conjugators, where
/// inverse entries should stay small).
Scalar random_small_int(Rng& rng);

Vec random_vec(int n, Rng& rng);
Vec random_nonzero_vec(int n, Rng& rng);
Matrix random_matrix(int n, Rng& rng);
Matrix random_nonzero_matrix(int n, Rng& rng);

/// Invertible with small integer entries. Rejection-sampled; exact rank test.
Matrix random_invertible(int n, Rng& rng);

/// T (I_r + 0) T^-1 for random invertible T. Exactly idempotent of rank r.
Matrix random_idempotent(int n, int r, Rng& rng);

/// Conjugated signature matrix with both signs present (never +-I).
Matrix random_involution(int n, Rng& rng);

/// Conjugate of sum_i E_{i, r+i}; square of the result is exactly zero.
Matrix random_square_zero(int n, Rng& rng);

/// T (I_p + -I_q + 0) T^-1, p >= 1. Cube equals the matrix itself.
Matrix random_tripotent(int n, int p, int q, Rng& rng);

/// Random functional f with f(x) = value. Throws if x == 0.
Vec random_functional_at(const Vec& x, const Scalar& value, Rng& rng);

/// Random nonzero functional vanishing on x.
Vec random_annihilating_functional(const Vec& x, Rng& rng);

} // namespace plab
