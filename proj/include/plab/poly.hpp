#pragma once

#include "plab/matrix.hpp"

namespace plab {

/// Coefficients low-to-high: p[0] + p[1] t + ... + p[deg] t^deg.
using Poly = std::vector<Scalar>;

/// Monic characteristic polynomial det(tI - A), exact, via the
/// Faddeev-LeVerrier recurrence (only divides by 1..n).
Poly char_poly(const Matrix& a);

Scalar poly_eval(const Poly& p, const Scalar& t);

/// p(-t).
Poly poly_negate_arg(const Poly& p);

/// Resultant of two polynomials as the Sylvester-matrix determinant.
/// Degrees are taken from the coefficient vectors; leading zeros stripped.
Scalar resultant(const Poly& p, const Poly& q);

/// True when the spectra of a and -b are disjoint, i.e. the Sylvester
/// equation aX + Xb = c is uniquely solvable for every c. Decided exactly:
/// res(char_a(t), char_b(-t)) != 0.
bool spectra_disjoint(const Matrix& a, const Matrix& b);

} // namespace plab
