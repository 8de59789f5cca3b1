#include <doctest.h>

#include "plab/errors.hpp"
#include "plab/scalar.hpp"

using namespace plab;

TEST_CASE("rational constructor canonicalizes") {
    CHECK(Scalar(1, 2) == Scalar(2, 4));
    CHECK(Scalar(-3, 6) == Scalar(-1, 2));
    CHECK(Scalar(3, -6) == Scalar(-1, 2));
    CHECK(Scalar(0, 5).is_zero());
    CHECK_THROWS_AS(Scalar(1, 0), SingularError);
}

TEST_CASE("field arithmetic on hand-worked products") {
    Scalar a(mpq_class(1), mpq_class(2));  // 1 + 2i
    Scalar b(mpq_class(3), mpq_class(-1)); // 3 - i
    // (1 + 2i)(3 - i) = 3 - i + 6i - 2 i^2 = 5 + 5i
    CHECK(a * b == Scalar(mpq_class(5), mpq_class(5)));
    CHECK(a + b == Scalar(mpq_class(4), mpq_class(1)));
    CHECK(a - b == Scalar(mpq_class(-2), mpq_class(3)));
    CHECK(-a == Scalar(mpq_class(-1), mpq_class(-2)));
    CHECK(a.conj() == Scalar(mpq_class(1), mpq_class(-2)));
    CHECK(a.norm() == 5);
    CHECK(Scalar(mpq_class(3), mpq_class(4)).norm() == 25);
}

TEST_CASE("inverse and division") {
    Scalar one_plus_i(mpq_class(1), mpq_class(1));
    // (1+i)^-1 = (1-i)/2
    CHECK(one_plus_i.inv() == Scalar(mpq_class(1, 2), mpq_class(-1, 2)));
    CHECK(one_plus_i * one_plus_i.inv() == Scalar(1));
    CHECK(Scalar(7) / Scalar(7) == Scalar(1));
    CHECK_THROWS_AS(Scalar().inv(), SingularError);
    CHECK_THROWS_AS(Scalar(1) / Scalar(), SingularError);
}

TEST_CASE("i squares to minus one") {
    CHECK(Scalar::i() * Scalar::i() == Scalar(-1));
    CHECK(!Scalar::i().is_real());
    CHECK(Scalar(1, 2).is_real());
}

TEST_CASE("text form is canonical") {
    CHECK(Scalar().str() == "0");
    CHECK(Scalar(3).str() == "3");
    CHECK(Scalar(-1, 2).str() == "-1/2");
    CHECK(Scalar::i().str() == "1*i");
    CHECK((Scalar(2) * Scalar::i()).str() == "2*i");
    CHECK((-Scalar::i()).str() == "-1*i");
    CHECK(Scalar(mpq_class(1, 2), mpq_class(-3, 4)).str() == "1/2-3/4*i");
    CHECK(Scalar(mpq_class(-2), mpq_class(1, 3)).str() == "-2+1/3*i");
}

TEST_CASE("parse accepts canonical and shorthand forms") {
    CHECK(Scalar::parse("3") == Scalar(3));
    CHECK(Scalar::parse("-1/2") == Scalar(-1, 2));
    CHECK(Scalar::parse("2*i") == Scalar(2) * Scalar::i());
    CHECK(Scalar::parse("1/2-3/4*i") == Scalar(mpq_class(1, 2), mpq_class(-3, 4)));
    CHECK(Scalar::parse("i") == Scalar::i());
    CHECK(Scalar::parse("-i") == -Scalar::i());
    CHECK(Scalar::parse("2i") == Scalar(2) * Scalar::i());
    CHECK(Scalar::parse(" 1/2 + 1/2*i ") == Scalar(mpq_class(1, 2), mpq_class(1, 2)));
}

TEST_CASE("parse round-trips every emitted form") {
    std::vector<Scalar> samples = {
        Scalar(),       Scalar(3),  Scalar(-7, 3), Scalar::i(), -Scalar::i(),
        Scalar(5, 2) * Scalar::i(), Scalar(mpq_class(1, 2), mpq_class(-3, 4)),
        Scalar(mpq_class(-11, 7), mpq_class(2, 9))};
    for (const Scalar& s : samples) CHECK(Scalar::parse(s.str()) == s);
}

TEST_CASE("parse rejects garbage") {
    CHECK_THROWS_AS(Scalar::parse(""), Error);
    CHECK_THROWS_AS(Scalar::parse("x"), Error);
    CHECK_THROWS_AS(Scalar::parse("1//2"), Error);
    CHECK_THROWS_AS(Scalar::parse("1+2"), Error);
    CHECK_THROWS_AS(Scalar::parse("1*i*i"), Error);
}

TEST_CASE("rational square roots") {
    CHECK(*rational_sqrt(mpq_class(16)) == 4);
    CHECK(*rational_sqrt(mpq_class(9, 4)) == mpq_class(3, 2));
    CHECK(*rational_sqrt(mpq_class(0)) == 0);
    CHECK(!rational_sqrt(mpq_class(2)));
    CHECK(!rational_sqrt(mpq_class(-4)));
    CHECK(!rational_sqrt(mpq_class(8)));
}

TEST_CASE("gaussian square roots, principal branch") {
    CHECK(*Scalar::sqrt(Scalar(4)) == Scalar(2));
    CHECK(*Scalar::sqrt(Scalar(9, 4)) == Scalar(3, 2));
    CHECK(*Scalar::sqrt(Scalar(-1)) == Scalar::i());
    CHECK(*Scalar::sqrt(Scalar(-4)) == Scalar(2) * Scalar::i());
    // (1+i)^2 = 2i
    CHECK(*Scalar::sqrt(Scalar(2) * Scalar::i()) == Scalar(mpq_class(1), mpq_class(1)));
    CHECK(*Scalar::sqrt(Scalar()) == Scalar());
    // 4i needs sqrt(2) as a coordinate, so it has no root in Q(i)
    CHECK(!Scalar::sqrt(Scalar(4) * Scalar::i()));
    CHECK(!Scalar::sqrt(Scalar(2)));
    CHECK(!Scalar::sqrt(Scalar(mpq_class(1), mpq_class(1))));
}

TEST_CASE("sqrt squares back for a sweep of perfect squares") {
    std::vector<Scalar> roots = {Scalar(2),       Scalar(-3, 5),
                                 Scalar::i(),     Scalar(mpq_class(1), mpq_class(1)),
                                 Scalar(7, 2),    Scalar(mpq_class(-2, 3), mpq_class(5))};
    for (const Scalar& r : roots) {
        auto s = Scalar::sqrt(r * r);
        REQUIRE(s.has_value());
        CHECK(*s * *s == r * r);
    }
}
