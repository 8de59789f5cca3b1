#pragma once

#include "plab/canonical.hpp"

namespace plab {

/// Longest independent prefix of x, ax, a^2 x, a^3 x, a^4 x (at most 5).
std::vector<Vec> krylov_frame(const Matrix& a, const Vec& x);

/// Report of the frame-based structure checks at a vector x. The guided
/// probe families below are exactly the rank-one square-zero probes whose
/// a-side products are forced nonzero idempotents; if b agrees on all of
/// them, the frame expansion of b at x is pinned down and gets verified.
struct Prop1234Report {
    int case_tag = 0;              // 1, 2, 3: strongest applicable case, 0: none
    std::optional<Matrix> disagreement_probe; // rank-one square-zero, sides differ
    bool conclusion_holds = false; // meaningful when no disagreement found
    std::optional<Scalar> alpha, gamma; // case 1/2 expansion coefficients
};
Prop1234Report prop_1234_checks(const Matrix& a, const Matrix& b, const Vec& x);

enum class WitnessKind { GuidedNilpotent, GuidedEigen, Structured, JordanProbe };

/// equal == false guarantees a witness w such that exactly one of
/// a o w, b o w is idempotent. Budget exhaustion throws BudgetExhausted and
/// is never reported as equality.
struct DistinguishResult {
    bool equal = false;
    std::optional<Matrix> witness;
    std::optional<WitnessKind> kind;
    long probes = 0;
};

DistinguishResult distinguish(const Matrix& a, const Matrix& b, long budget, Rng& rng,
                              const std::vector<Scalar>& lambdas = default_lambda_set());

/// True iff distinguish found no witness AND the operands are directly
/// equal (the direct check is the ground truth; probes only ever separate).
bool equal_via_probes(const Matrix& a, const Matrix& b, long budget, Rng& rng);

const char* witness_kind_name(WitnessKind k);

} // namespace plab
