#include <doctest.h>

#include "plab/errors.hpp"
#include "plab/generators.hpp"
#include "plab/reconstruct.hpp"

using namespace plab;

namespace {

// t_rec must equal t up to one global nonzero scalar
bool same_up_to_scalar(const Matrix& t_rec, const Matrix& t) {
    Matrix q = inverse(t_rec) * t;
    Scalar mu = q.trace() / Scalar(q.dim());
    if (mu.is_zero()) return false;
    return q == Matrix::identity(q.dim()) * mu;
}

} // namespace

TEST_CASE("canonical map application, pinned") {
    // lambda = 2, t = I, transpose + conjugate
    CanonicalMap m{Scalar(2), Matrix::identity(2), Diamond::Transpose, Sigma::Conj,
                   std::nullopt};
    Matrix x(2, 2);
    x.at(0, 0) = Scalar::i();
    x.at(0, 1) = Scalar(1);
    Matrix y = m.apply(x);
    Matrix expect(2, 2);
    expect.at(0, 0) = Scalar(-2) * Scalar::i();
    expect.at(1, 0) = Scalar(2);
    CHECK(y == expect);
}

TEST_CASE("oracle counts queries across copies and wrappers") {
    MapOracle o = make_canonical(
        CanonicalMap{Scalar(1), Matrix::identity(2), Diamond::Identity, Sigma::Id, std::nullopt});
    MapOracle copy = o;
    o(Matrix::identity(2));
    copy(Matrix::identity(2));
    CHECK(o.query_count() == 2);
    CHECK(copy.query_count() == 2);
}

TEST_CASE("scaled factory derives its constant from alpha and sigma") {
    Matrix t = Matrix::identity(3);
    CHECK(make_canonical_scaled(Scalar(1, 2), t, Diamond::Identity, Sigma::Id).lambda ==
          Scalar(1));
    // conj(2 alpha)/|2 alpha| at alpha = i: -2i / 2 = -i
    CHECK(make_canonical_scaled(Scalar::i(), t, Diamond::Identity, Sigma::Conj).lambda ==
          -Scalar::i());
    // real alpha: the constant is the sign
    CHECK(make_canonical_scaled(Scalar(-1, 2), t, Diamond::Identity, Sigma::Conj).lambda ==
          Scalar(-1));
    // norm(2 alpha) = 8 is not a rational square
    CHECK_THROWS_AS(
        make_canonical_scaled(Scalar(mpq_class(1), mpq_class(1)), t, Diamond::Identity,
                              Sigma::Conj),
        PreconditionError);
    auto m = make_canonical_scaled(Scalar(2), t, Diamond::Transpose, Sigma::Id);
    REQUIRE(m.alpha.has_value());
    CHECK(*m.alpha == Scalar(2));
    CHECK(m.lambda * m.lambda == Scalar(1));
}

TEST_CASE("reconstruct recovers a pinned nontrivial map") {
    Matrix t(3, 3);
    t.at(0, 0) = Scalar(1);
    t.at(0, 2) = Scalar(1);
    t.at(1, 1) = Scalar(1);
    t.at(2, 2) = Scalar(1);
    CanonicalMap orig{Scalar(-1), t, Diamond::Transpose, Sigma::Conj, std::nullopt};
    Rng rng(97);
    ReconstructionResult res = reconstruct(make_canonical(orig), 50, rng);
    CHECK(res.agreement);
    CHECK(res.residual_samples == 50);
    CHECK(res.map.lambda == Scalar(-1));
    CHECK(res.map.diamond == Diamond::Transpose);
    CHECK(res.map.sigma == Sigma::Conj);
    CHECK(same_up_to_scalar(res.map.t, t));
}

TEST_CASE("reconstruct stays within its query budget") {
    Rng rng(101);
    for (int n : {3, 4}) {
        for (int t = 0; t < 5; ++t) {
            CanonicalMap m{t % 2 == 0 ? Scalar(1) : Scalar(-1), random_invertible(n, rng),
                           t % 2 == 0 ? Diamond::Transpose : Diamond::Identity,
                           t % 3 == 0 ? Sigma::Conj : Sigma::Id, std::nullopt};
            MapOracle o = make_canonical(m);
            ReconstructionResult res = reconstruct(o, 50, rng);
            CHECK(res.agreement);
            CHECK(o.query_count() <= 5L * n * n + 50);
            CHECK(res.map.lambda == m.lambda);
            CHECK(res.map.diamond == m.diamond);
            CHECK(res.map.sigma == m.sigma);
            CHECK(same_up_to_scalar(res.map.t, m.t));
        }
    }
}

TEST_CASE("alpha reduction leaves a linear box untouched") {
    Rng rng(103);
    Matrix t = random_invertible(3, rng);
    // sqrt(2 alpha) is irrational for alpha = 7, yet the reduction is exact:
    // a linear map commutes with the scale entirely
    for (const Scalar& alpha : {Scalar(7), Scalar(1, 2), Scalar(2) * Scalar::i()}) {
        CanonicalMap scaled = make_canonical_scaled(alpha, t, Diamond::Identity, Sigma::Id);
        MapOracle phi = make_canonical(scaled);
        MapOracle psi = alpha_reduce(phi, alpha);
        Matrix probe = random_matrix(3, rng);
        CHECK(psi(probe) == phi(probe));
    }
}

TEST_CASE("alpha reduction rescales a conjugating box by 2 alpha over its modulus") {
    Rng rng(107);
    Matrix t = random_invertible(3, rng);
    // 2 alpha = 3 + 4i has norm 25, so the factor is (3+4i)/5
    Scalar alpha(mpq_class(3, 2), mpq_class(2));
    CanonicalMap scaled = make_canonical_scaled(alpha, t, Diamond::Transpose, Sigma::Conj);
    MapOracle phi = make_canonical(scaled);
    MapOracle psi = alpha_reduce(phi, alpha);
    Matrix probe = random_matrix(3, rng);
    Scalar factor = Scalar(mpq_class(3, 5), mpq_class(4, 5));
    CHECK(psi(probe) == phi(probe) * factor);

    ReconstructionResult res = reconstruct(psi, 20, rng);
    CHECK(res.agreement);
    CHECK(res.map.lambda == Scalar(1));
    CHECK(res.map.sigma == Sigma::Conj);
    CHECK(res.map.diamond == Diamond::Transpose);
}

TEST_CASE("alpha reduction refusals") {
    Rng rng(109);
    Matrix t = random_invertible(3, rng);
    MapOracle conj_box = make_canonical(CanonicalMap{Scalar(1), t, Diamond::Identity,
                                                     Sigma::Conj, std::nullopt});
    // norm(2 alpha) = 8: no rational modulus
    CHECK_THROWS_AS(alpha_reduce(conj_box, Scalar(mpq_class(1), mpq_class(1))),
                    PreconditionError);
    CHECK_THROWS_AS(alpha_reduce(conj_box, Scalar()), PreconditionError);
    // the same alpha is fine when the box never conjugates
    MapOracle lin_box = make_canonical(CanonicalMap{Scalar(1), t, Diamond::Identity,
                                                    Sigma::Id, std::nullopt});
    MapOracle psi = alpha_reduce(lin_box, Scalar(mpq_class(1), mpq_class(1)));
    Matrix probe = random_matrix(3, rng);
    CHECK(psi(probe) == lin_box(probe));
}

TEST_CASE("corrupted boxes are caught by the pair search") {
    Rng rng(113);
    for (CorruptionMode mode : {CorruptionMode::SwapTwoIdempotents,
                                CorruptionMode::ScaleOneOutput,
                                CorruptionMode::TransposeOneCell}) {
        int made = 0;
        for (int attempt = 0; attempt < 40 && made < 3; ++attempt) {
            CanonicalMap base{rng.coin() ? Scalar(1) : Scalar(-1), random_invertible(3, rng),
                              rng.coin() ? Diamond::Transpose : Diamond::Identity,
                              rng.coin() ? Sigma::Conj : Sigma::Id, std::nullopt};
            MapOracle bad;
            try {
                bad = make_corrupted(base, mode, rng);
            } catch (const PreconditionError&) {
                continue; // this base leaves the mode no effective target; redraw
            }
            ++made;
            auto pair = verify_preserving(bad, 10000, rng);
            REQUIRE(pair.has_value());
            const auto& [x, y] = *pair;
            CHECK(is_idempotent(jordan(x, y)) !=
                  is_idempotent(jordan(bad(x), bad(y))));
        }
        CHECK(made == 3);
    }
}

TEST_CASE("an honest box passes the pair search") {
    Rng rng(127);
    CanonicalMap m{Scalar(-1), random_invertible(3, rng), Diamond::Transpose, Sigma::Conj,
                   std::nullopt};
    CHECK(!verify_preserving(make_canonical(m), 300, rng).has_value());
}

TEST_CASE("transpose-one-cell cannot corrupt a symmetric image set") {
    // with t = I every diagonal-unit image is symmetric; the mode has no
    // effective cell pair and must refuse rather than ship a no-op
    Rng rng(131);
    CanonicalMap base{Scalar(1), Matrix::identity(3), Diamond::Identity, Sigma::Id,
                      std::nullopt};
    CHECK_THROWS_AS(make_corrupted(base, CorruptionMode::TransposeOneCell, rng),
                    PreconditionError);
}

TEST_CASE("reconstruct flags a corrupted box instead of agreeing") {
    Rng rng(137);
    int flagged = 0, made = 0;
    for (int attempt = 0; attempt < 30 && made < 5; ++attempt) {
        CanonicalMap base{Scalar(1), random_invertible(3, rng), Diamond::Identity, Sigma::Id,
                          std::nullopt};
        MapOracle bad;
        try {
            bad = make_corrupted(base, CorruptionMode::SwapTwoIdempotents, rng);
        } catch (const PreconditionError&) {
            continue;
        }
        ++made;
        try {
            ReconstructionResult res = reconstruct(bad, 50, rng);
            if (!res.agreement) ++flagged;
        } catch (const StepViolation& e) {
            CHECK(!e.step.empty());
            ++flagged;
        }
    }
    CHECK(made == 5);
    CHECK(flagged == made);
}
