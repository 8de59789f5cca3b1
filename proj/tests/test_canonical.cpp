#include <doctest.h>

#include "plab/canonical.hpp"
#include "plab/errors.hpp"
#include "plab/generators.hpp"

using namespace plab;

TEST_CASE("sylvester solve on a separable diagonal pair") {
    // a = diag(1,2), b = diag(3,4), c = all ones: x_ij = 1 / (a_i + b_j)
    Matrix a = Matrix::diag({Scalar(1), Scalar(2)});
    Matrix b = Matrix::diag({Scalar(3), Scalar(4)});
    Matrix c(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) c.at(i, j) = Scalar(1);
    Matrix x = solve_sylvester(a, b, c);
    Matrix expect(2, 2);
    expect.at(0, 0) = Scalar(1, 4);
    expect.at(0, 1) = Scalar(1, 5);
    expect.at(1, 0) = Scalar(1, 5);
    expect.at(1, 1) = Scalar(1, 6);
    CHECK(x == expect);
    CHECK(a * x + x * b == c);
}

TEST_CASE("sylvester solve handles rectangles") {
    Rng rng(59);
    Matrix a = Matrix::diag({Scalar(1), Scalar(2)});
    Matrix b = Matrix::identity(1) * Scalar(5);
    Matrix c(2, 1);
    c.at(0, 0) = Scalar(6);
    c.at(1, 0) = Scalar(7);
    Matrix x = solve_sylvester(a, b, c);
    CHECK(a * x + x * b == c);
    CHECK(x.at(0, 0) == Scalar(1));
    CHECK(x.at(1, 0) == Scalar(1));
}

TEST_CASE("sylvester refuses a meeting spectrum") {
    Matrix id = Matrix::identity(2);
    CHECK_THROWS_AS(solve_sylvester(id, id * Scalar(-1), id), SpectraError);
    Matrix z = jordan_block(2, Scalar());
    CHECK_THROWS_AS(solve_sylvester(z, z, id), SpectraError);
}

TEST_CASE("jordan blocks are rigid for the doubled-identity equation") {
    // X = J_k(lam) is the unique solution of J^-1 X + X J^-1 = 2I
    for (int k : {1, 2, 3}) {
        for (const Scalar& lam : default_lambda_set()) {
            Matrix j = jordan_block(k, lam);
            Matrix ji = inverse(j);
            Matrix x = solve_sylvester(ji, ji, Matrix::identity(k) * Scalar(2));
            CHECK(x == j);
        }
    }
}

TEST_CASE("tripotent decomposition, pinned and random") {
    TripotentParts parts = tripotent_decompose(Matrix::diag({Scalar(1), Scalar(-1)}));
    CHECK(parts.p == Matrix::unit(2, 0, 0));
    CHECK(parts.q == Matrix::unit(2, 1, 1));

    Rng rng(61);
    for (int t = 0; t < 20; ++t) {
        int n = 3 + (int)rng.pick(3);
        int p_rank = 1 + (int)rng.pick(n);
        int q_rank = (int)rng.pick(n - p_rank + 1);
        Matrix a = random_tripotent(n, p_rank, q_rank, rng);
        TripotentParts pq = tripotent_decompose(a);
        CHECK(is_idempotent(pq.p));
        CHECK(is_idempotent(pq.q));
        CHECK(pq.p - pq.q == a);
        CHECK(pq.p + pq.q == a * a);
        CHECK((pq.p * pq.q).is_zero());
        CHECK((pq.q * pq.p).is_zero());
    }
    CHECK_THROWS_AS(tripotent_decompose(jordan_block(2, Scalar(1))), PreconditionError);
}

TEST_CASE("corner probe family covers every cell with enough scales") {
    auto fam = corner_probe_family(3, 1);
    // zero probe plus 1x2 cells times scales 1..4
    CHECK(fam.size() == 9);
    CHECK(fam[0].is_zero());
    for (const Matrix& r : fam) {
        CHECK(r.rows() == 1);
        CHECK(r.cols() == 2);
    }
    CHECK(corner_probe_family(4, 2).size() == 1 + 2 * 2 * 6);
}

TEST_CASE("corner probes catch a nonzero lower-left block") {
    // clean corner: a = E11 with x = [1] passes everything
    Matrix good = Matrix::unit(3, 0, 0);
    Matrix x(1, 1);
    x.at(0, 0) = Scalar(1);
    CornerReport rep = corner_trace_check(good, x, 1, corner_probe_family(3, 1));
    CHECK(rep.probes_all_idempotent);
    CHECK(rep.a21_zero);
    CHECK(rep.corner_idem);

    // dirt below the corner: some probe must go non-idempotent
    Matrix bad = good + Matrix::unit(3, 1, 0);
    CornerReport rep2 = corner_trace_check(bad, x, 1, corner_probe_family(3, 1));
    CHECK(!rep2.a21_zero);
    CHECK(!rep2.probes_all_idempotent);

    // corner scaled off an idempotent: probes break even with a21 == 0
    Matrix scaled = good * Scalar(2);
    CornerReport rep3 = corner_trace_check(scaled, x * Scalar(2), 1, corner_probe_family(3, 1));
    CHECK(rep3.a21_zero);
    CHECK(!rep3.corner_idem);
    CHECK(!rep3.probes_all_idempotent);
}

TEST_CASE("probe pool elements satisfy their defining identities") {
    Rng rng(67);
    auto pool = build_t_set(3, default_lambda_set(), rng, 60);
    CHECK(!pool.empty());
    bool saw_nilp = false, saw_trip = false, saw_jordan = false;
    for (const TSetElement& e : pool) {
        switch (e.kind) {
            case TSetKind::Nilpotent1:
                saw_nilp = true;
                CHECK(rank(e.matrix) == 1);
                CHECK((e.matrix * e.matrix).is_zero());
                break;
            case TSetKind::Tripotent:
                saw_trip = true;
                CHECK(e.matrix * e.matrix * e.matrix == e.matrix);
                break;
            case TSetKind::JordanConjugate: {
                saw_jordan = true;
                REQUIRE(e.similarity.has_value());
                CHECK(e.k >= 1);
                CHECK(e.k <= 2); // n == 3 leaves no room for a k == 3 block
                CHECK(!e.lambda.is_zero());
                Matrix embedded(3, 3);
                embedded.set_block(0, 0, jordan_block(e.k, e.lambda));
                Matrix s = *e.similarity;
                CHECK(e.matrix == s * embedded * inverse(s));
                break;
            }
        }
    }
    CHECK(saw_nilp);
    CHECK(saw_trip);
    CHECK(saw_jordan);
}

TEST_CASE("default lambda set is pinned") {
    std::vector<Scalar> expect = {Scalar(1), Scalar(-1), Scalar(2), Scalar(1, 2), Scalar::i()};
    CHECK(default_lambda_set() == expect);
}
