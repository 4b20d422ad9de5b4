#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "schwartz/parser.hpp"
#include "schwartz/polynomial.hpp"

using namespace schwartz;

TEST_CASE("arithmetic and evaluation") {
    RatPoly p({Rational(1), Rational(0), Rational(1)}); // 1 + x^2
    RatPoly q = p * p;
    CHECK(q.degree() == 4);
    CHECK(q.eval(Rational(2)) == 25);
    CHECK(p.derivative() == RatPoly({Rational(0), Rational(2)}));
}

TEST_CASE("gcd and square-free decomposition") {
    RatPoly x = RatPoly::x();
    RatPoly p = x * x * (x - RatPoly::constant(Rational(1))); // x^2 (x-1)
    auto sf = square_free_decomposition(p);
    REQUIRE(sf.size() == 2);
    // (x-1) with multiplicity 1, x with multiplicity 2
    CHECK(sf[0].second == 1);
    CHECK(sf[1].second == 2);
}

TEST_CASE("real roots of x^2(x-1) are exact") {
    RatPoly x = RatPoly::x();
    auto roots = real_roots(x * x * (x - RatPoly::constant(Rational(1))));
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].location == 0.0);
    CHECK(roots[0].multiplicity == 2);
    REQUIRE(roots[0].exact.has_value());
    CHECK(*roots[0].exact == 0);
    CHECK(roots[1].location == 1.0);
    CHECK(roots[1].multiplicity == 1);
}

TEST_CASE("irrational roots isolated to double precision") {
    // x^2 - 2
    RatPoly p({Rational(-2), Rational(0), Rational(1)});
    auto roots = real_roots(p);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].location == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-14));
    CHECK(roots[1].location == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("dense root clusters") {
    // (x-1)(x-2)(x-3)^2
    RatPoly x = RatPoly::x();
    auto c = [](long v) { return RatPoly::constant(Rational(v)); };
    RatPoly p = (x - c(1)) * (x - c(2)) * (x - c(3)) * (x - c(3));
    auto roots = real_roots(p);
    REQUIRE(roots.size() == 3);
    CHECK(roots[2].multiplicity == 2);
    CHECK(roots[2].location == doctest::Approx(3.0));
}

TEST_CASE("to_polynomial recognizes the exact subclass") {
    CHECK(to_polynomial(parse_expr("(x+1)^3")).has_value());
    CHECK(to_polynomial(parse_expr("x/3-2/5")).has_value());
    CHECK_FALSE(to_polynomial(parse_expr("exp(x)")).has_value());
    CHECK_FALSE(to_polynomial(parse_expr("e*x")).has_value());
    auto p = to_polynomial(parse_expr("(x+1)^3"));
    CHECK(p->coeff(0) == 1);
    CHECK(p->coeff(1) == 3);
    CHECK(p->coeff(2) == 3);
    CHECK(p->coeff(3) == 1);
}

TEST_CASE("poly to expr round trips through parse") {
    RatPoly p({Rational(1, 2), Rational(-3), Rational(0), Rational(5)});
    Expr e = p.to_expr();
    auto q = to_polynomial(parse_expr(e.to_string()));
    REQUIRE(q.has_value());
    CHECK(*q == p);
}

TEST_CASE("multiplicity sum equals degree minus cofactor degree") {
    // invariant from the zero-finder contract, exact on polynomials
    RatPoly x = RatPoly::x();
    auto c = [](long v) { return RatPoly::constant(Rational(v)); };
    RatPoly zeros = (x - c(2)) * (x - c(2)) * x;          // real-rooted part
    RatPoly cofactor({Rational(1), Rational(0), Rational(1)}); // 1+x^2, no real roots
    RatPoly p = zeros * cofactor;
    auto roots = real_roots(p);
    int total = 0;
    for (const auto& r : roots) total += r.multiplicity;
    CHECK(total == p.degree() - cofactor.degree());
}
