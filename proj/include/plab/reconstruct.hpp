#pragma once

#include <atomic>
#include <functional>
#include <memory>

#include "plab/canonical.hpp"

namespace plab {

enum class Diamond { Identity, Transpose };
enum class Sigma { Id, Conj };

/// X -> lambda * t * sigma(X)^diamond * t^-1. When alpha is set the map came
/// from a scaled factory and lambda is the c constant with
/// lambda^2 == sigma(alpha)/alpha.
struct CanonicalMap {
    Scalar lambda;
    Matrix t;
    Diamond diamond = Diamond::Identity;
    Sigma sigma = Sigma::Id;
    std::optional<Scalar> alpha;

    Matrix apply(const Matrix& x) const;
};

/// Black-box map access. eval is deterministic for a fixed box; the query
/// counter is shared so wrappers and copies count against the same log.
struct MapOracle {
    int n = 0;
    std::function<Matrix(const Matrix&)> eval;
    std::shared_ptr<std::atomic<long>> queries = std::make_shared<std::atomic<long>>(0);

    Matrix operator()(const Matrix& x) const;
    long query_count() const { return queries->load(); }
};

MapOracle make_canonical(const CanonicalMap& map);

/// Scaled factory: lambda is computed from alpha and sigma (1 for sigma=id,
/// conj(2a)/|2a| for sigma=conj). Throws when that constant is not a
/// Gaussian rational.
CanonicalMap make_canonical_scaled(const Scalar& alpha, const Matrix& t, Diamond d, Sigma s);

enum class CorruptionMode { SwapTwoIdempotents, ScaleOneOutput, TransposeOneCell };

/// Wrap a canonical oracle with one deliberate defect. Each mode re-draws
/// its target until the corrupted output actually differs and breaks
/// idempotency, so detection never depends on luck.
MapOracle make_corrupted(const CanonicalMap& base, CorruptionMode mode, Rng& rng);

/// Search for a pair (A, B) where idempotency of A o B and phi(A) o phi(B)
/// disagree. Structured pairs first (diagonal units, their sums, orthogonal
/// and tripotent pairs), then random ones; max_pairs caps the search.
std::optional<std::pair<Matrix, Matrix>> verify_preserving(const MapOracle& oracle,
                                                           long max_pairs, Rng& rng);

struct ReconstructionResult {
    CanonicalMap map;
    long residual_samples = 0;
    bool agreement = false;
    /// Pair violating the preserving property, when the residual check
    /// failed and the search found one.
    std::optional<std::pair<Matrix, Matrix>> counterexample;
    /// The residual input where oracle and recovered map first differed.
    std::optional<Matrix> mismatch;
};

/// Recover (lambda, t, diamond, sigma) from probes of the oracle:
/// diagonal unit images fix t's columns up to scale, cross probes
/// E_11 + E_1j fix the scales and the diamond, i*E_11 fixes sigma.
/// Probe responses that contradict the canonical shape throw StepViolation
/// naming the step. Query count stays within 5 n^2 + residual_samples.
ReconstructionResult reconstruct(const MapOracle& oracle, long residual_samples, Rng& rng);

/// psi(X) = s * oracle(X / s) with s = sqrt(2 alpha), realized without the
/// square root itself: semilinearity collapses the two scale factors to 1
/// when the box is linear and to 2 alpha / |2 alpha| when it conjugates.
/// Two probes on a diagonal unit decide which. Refuses (PreconditionError)
/// when alpha == 0 or when a conjugating box would need an irrational
/// |2 alpha|, i.e. when norm(2 alpha) is not a rational square.
MapOracle alpha_reduce(const MapOracle& oracle, const Scalar& alpha);

const char* diamond_name(Diamond d);
const char* sigma_name(Sigma s);

} // namespace plab
