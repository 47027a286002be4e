#include "doctest.h"
#include "support.hpp"

#include "ncsym/linear.hpp"

using namespace ncsym;
using testsupport::P;

TEST_CASE("rational normalization and text form") {
    CHECK(Rational(6, -4).str() == "-3/2");
    CHECK(Rational(0).str() == "0/1");
    CHECK(Rational::parse("10/4") == Rational(5, 2));
    CHECK(Rational::parse("-7") == Rational(-7));
    CHECK_THROWS_AS(Rational::parse("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("2/-3"), std::invalid_argument);
    CHECK(pow(Rational(2, 3), -2) == Rational(9, 4));
}

TEST_CASE("differentiate") {
    const int d = 2;
    CHECK(P(d, "t^2").differentiate(0) == P(d, "2*t"));
    CHECK(P(d, "t*x1*x2").differentiate(1) == P(d, "t*x2"));
    CHECK(P(d, "5").differentiate(0).is_zero());
    Poly q = P(d, "3*t^4*x1 + x2^2");
    CHECK(q.differentiate(0).degree(0) == 3);
    CHECK(q.differentiate(2).degree(2) == 1);
}

TEST_CASE("evaluate") {
    const int d = 1;
    std::vector<Rational> pt{Rational(2), Rational(3)};
    CHECK(P(d, "t^2 + x1").evaluate(pt) == Rational(7));
    CHECK(Poly(d).evaluate(pt) == Rational(0));
    std::vector<Rational> third{Rational(1, 3), Rational(0)};
    CHECK(P(d, "1/2*t").evaluate(third) == Rational(1, 6));
    std::vector<double> fp{2.0, 3.0};
    CHECK(P(d, "t^2 + x1").evaluate(fp) == doctest::Approx(7.0));
}

TEST_CASE("ring axioms, commuting partials, evaluation homomorphism (random)") {
    std::mt19937 rng(20240611);
    const int d = 3;
    for (int trial = 0; trial < 200; ++trial) {
        Poly p = testsupport::random_poly(rng, d, 3);
        Poly q = testsupport::random_poly(rng, d, 3);
        Poly r = testsupport::random_poly(rng, d, 3);
        CHECK((p + q) * r == p * r + q * r);
        CHECK(p * q == q * p);
        CHECK((p * q) * r == p * (q * r));
        for (int a = 0; a <= d; ++a)
            for (int b = 0; b <= d; ++b) CHECK(p.differentiate(a).differentiate(b) == p.differentiate(b).differentiate(a));
        std::vector<Rational> pt{Rational(1, 2), Rational(-2), Rational(3, 5), Rational(7)};
        CHECK((p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt));
    }
}

TEST_CASE("exact division") {
    const int d = 2;
    Poly a = P(d, "t^2 + x1*x2 - 3");
    Poly b = P(d, "2*t - x2^2 + 1/3");
    auto q = (a * b).divide_exact(b);
    REQUIRE(q);
    CHECK(*q == a);
    CHECK_FALSE(P(d, "t^2 + 1").divide_exact(P(d, "t")));
}

TEST_CASE("parse round trip and embedding") {
    const int d = 3;
    Poly p = P(d, "-1/2*t^2*x3 + 4*x1*x2 - 7");
    CHECK(Poly::parse(d, p.str()) == p);
    CHECK_THROWS_AS(Poly::parse(2, "x3"), std::invalid_argument);
    Poly e = P(1, "t*x1").embed(3, {0, 2});
    CHECK(e == P(3, "t*x2"));
}

TEST_CASE("echelon nullspace and span coordinates") {
    // rows: x0 + x1 = 0, x2 - 2 x3 = 0 over four columns
    Echelon ech(4);
    ech.insert(SparseVec::from_dense({1, 1, 0, 0}));
    ech.insert(SparseVec::from_dense({0, 0, 1, -2}));
    CHECK_FALSE(ech.insert(SparseVec::from_dense({2, 2, 1, -2})));
    auto ns = ech.nullspace();
    REQUIRE(ns.size() == 2);
    for (const auto& v : ns)
        for (const auto& [piv, row] : ech.rows()) {
            Rational dot(0);
            for (const auto& [c, x] : row.entries()) dot += x * v.get(c);
            CHECK(dot.is_zero());
        }
    std::vector<SparseVec> basis{SparseVec::from_dense({1, 0, 1}), SparseVec::from_dense({0, 1, 1}),
                                 SparseVec::from_dense({1, 1, 2})};
    SpanIndex idx(3, basis);
    CHECK(idx.rank() == 2);
    CHECK_FALSE(idx.independent());
    auto c = idx.coordinates(SparseVec::from_dense({2, 3, 5}));
    REQUIRE(c);
    SparseVec back;
    for (int i = 0; i < 3; ++i) back.axpy((*c)[i], basis[i]);
    CHECK(back == SparseVec::from_dense({2, 3, 5}));
    CHECK_FALSE(idx.coordinates(SparseVec::from_dense({1, 0, 0})));
}
