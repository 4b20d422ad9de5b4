#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "schwartz/errors.hpp"
#include "schwartz/parser.hpp"
#include "schwartz/piecewise.hpp"
#include "schwartz/polynomial.hpp"

#include <cmath>
#include <random>

using namespace schwartz;

TEST_CASE("parse simple polynomial") {
    PiecewiseFn f = parse("x^2+1");
    CHECK(f.is_single());
    auto p = to_polynomial(f.single_expr());
    REQUIRE(p.has_value());
    CHECK(p->degree() == 2);
    CHECK(p->coeff(0) == 1);
    CHECK(p->coeff(2) == 1);
}

TEST_CASE("parse rational and decimal literals") {
    CHECK(parse_expr("-2/5").number_value() == Rational(-2, 5));
    CHECK(parse_expr("1.25").number_value() == Rational(5, 4));
    CHECK(parse_expr("3").number_value() == 3);
}

TEST_CASE("syntax error carries position") {
    try {
        parse("x^^2");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 2);
    }
}

TEST_CASE("malformed piecewise inputs rejected") {
    CHECK_THROWS_AS(parse("piecewise((-inf,0]: x; [2,inf): x)"), ParseError); // gap, no blend
    CHECK_THROWS_AS(parse("piecewise((-inf,3]: 0; [1,inf): x)"), ParseError); // overlap
    CHECK_THROWS_AS(parse("piecewise((-inf,0]: x)"), ParseError);             // no +inf cover
    CHECK_THROWS_AS(parse("piecewise((0,-inf]: x)"), ParseError);             // non-monotone
}

TEST_CASE("three-piece blend parses and reports pieces") {
    PiecewiseFn f = parse("piecewise((-inf,-1]: -exp(-x); [1,inf): exp(x); blend: 8)");
    CHECK(f.pieces().size() == 3);
    // round trip preserves user form
    PiecewiseFn g = parse(f.to_string());
    CHECK(g.to_string() == f.to_string());
}

TEST_CASE("differentiate power rule") {
    PiecewiseFn f = parse("x^3");
    PiecewiseFn d2 = f.derivative(2);
    auto p = to_polynomial(d2.single_expr());
    REQUIRE(p.has_value());
    CHECK(*p == RatPoly({Rational(0), Rational(6)})); // 6x
}

TEST_CASE("differentiate chain rule exp(x^2)") {
    Expr d = parse_expr("exp(x^2)").derivative();
    // value check at a few points: d = 2x exp(x^2)
    for (double x : {-1.5, 0.0, 0.7, 2.0}) {
        double want = 2 * x * std::exp(x * x);
        CHECK(d.eval_double(x) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("derivative order zero is identity") {
    PiecewiseFn f = parse("sin(x)");
    CHECK(f.derivative(0).to_string() == f.to_string());
}

TEST_CASE("evaluate exact rational path and breakpoint convention") {
    PiecewiseFn f = parse("x^2+1");
    CHECK(f.evaluate(3.0) == 10.0);
    CHECK(*f.evaluate_exact(Rational(3)) == 10);

    // left piece owns a shared closed breakpoint
    PiecewiseFn g = parse("piecewise((-inf,0]: 1; [0,inf): 2)");
    CHECK(g.evaluate(0.0) == 1.0);
}

TEST_CASE("evaluate domain errors") {
    PiecewiseFn f = parse("log(x)");
    CHECK_THROWS_AS(f.evaluate(-1.0), EvalError);
    PiecewiseFn g = parse("1/x");
    CHECK_THROWS_AS(g.evaluate(0.0), EvalError);
}

TEST_CASE("evaluate gaussian") {
    PiecewiseFn f = parse("exp(-x^2)");
    CHECK(f.evaluate(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("print-parse round trip is stable on corpus shapes") {
    for (const char* s : {"x^2+1", "exp(-x^2)", "1+log(1+x^2)", "x+sin(exp(x^2))",
                          "piecewise((-inf,-1]: -exp(-x); [1,inf): exp(x); blend: 8)",
                          "2*x*exp(x^2)", "x/3-2/5", "sqrt(1+x^2)", "cos(pi*x)", "e*x"}) {
        PiecewiseFn f = parse(s);
        std::string printed = f.to_string();
        CHECK(parse(printed).to_string() == printed);
    }
}

TEST_CASE("derivative composition order additivity (numeric spot check)") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> xs(-2.0, 2.0);
    Expr f = parse_expr("exp(-x^2)*cos(x)");
    Expr d1 = f.derivative(2).derivative(1);
    Expr d2 = f.derivative(3);
    for (int i = 0; i < 100; ++i) {
        double x = xs(rng);
        double a = d1.eval_double(x), b = d2.eval_double(x);
        CHECK(std::fabs(a - b) <= 1e-8 * std::max({1.0, std::fabs(a), std::fabs(b)}));
    }
}

TEST_CASE("smoothness check flags the |x| kink") {
    PiecewiseFn f = parse("piecewise((-inf,0]: -x; (0,inf): x)");
    Verdict v = smoothness_check(f, 1, 1e-9);
    REQUIRE(v.failed());
    CHECK(v.witnesses()[0].x == 0.0);
    CHECK(v.witnesses()[0].order == 1);
    CHECK(v.witnesses()[0].value == doctest::Approx(2.0));
}

TEST_CASE("smoothness: single piece always holds") {
    CHECK(smoothness_check(parse("exp(x)"), 10, 1e-9).holds_true());
}

TEST_CASE("smoothness: blend of sign(x)e^|x| matches to order 8") {
    // one-sided finite-difference oracle at the breakpoints double-checks the
    // direct derivative comparison inside smoothness_check
    PiecewiseFn f = parse("piecewise((-inf,-1]: -exp(-x); [1,inf): exp(x); blend: 8)");
    Verdict v = smoothness_check(f, 8, 1e-6);
    CHECK(v.holds_true());

    // oracle: central-free one-sided differences of the bridge at +1 must
    // reproduce exp-side derivatives e, e, e, ... at least to first order
    const Expr& bridge = f.pieces()[1].expr;
    double h = 1e-6;
    double left_val = bridge.eval_double(1.0 - h);
    double right_val = std::exp(1.0 - h);
    CHECK(left_val == doctest::Approx(right_val).epsilon(1e-6));
    double dleft = (bridge.eval_double(1.0) - bridge.eval_double(1.0 - h)) / h;
    CHECK(dleft == doctest::Approx(std::exp(1.0)).epsilon(1e-4));
}

TEST_CASE("log-domain evaluation survives the far field") {
    Expr f = parse_expr("exp(x^2)");
    Bound b = f.eval_bound(LogScalar::from_double(100.0));
    REQUIRE(b.ok());
    CHECK(b.is_point());
    CHECK(b.lo.lg == doctest::Approx(10000.0)); // log e^{x^2} = x^2
    CHECK(b.lo.sign == 1);

    // far beyond double range: x = e^500
    Bound g = parse_expr("1+log(1+x^2)").eval_bound(LogScalar::from_log(1, 500.0));
    REQUIRE(g.ok());
    CHECK(g.lo.value() == doctest::Approx(1 + 1000.0).epsilon(1e-9));
}

TEST_CASE("phase loss yields the unit interval, not garbage") {
    Expr f = parse_expr("sin(exp(x^2))");
    Bound b = f.eval_bound(LogScalar::from_double(100.0));
    REQUIRE(b.ok());
    CHECK(!b.is_point());
    CHECK(b.lo.value() == doctest::Approx(-1.0));
    CHECK(b.hi.value() == doctest::Approx(1.0));

    // and x + sin(exp(x^2)) at far field is [x-1, x+1]
    Expr g = parse_expr("x+sin(exp(x^2))");
    Bound c = g.eval_bound(LogScalar::from_double(100.0));
    REQUIRE(c.ok());
    CHECK(c.lo.value() == doctest::Approx(99.0));
    CHECK(c.hi.value() == doctest::Approx(101.0));
}

TEST_CASE("eval_bound flags domain errors") {
    Expr f = parse_expr("log(x)");
    CHECK(f.eval_bound(LogScalar::from_double(-2.0)).status == EvalStatus::DomainError);
    CHECK(parse_expr("1/x").eval_bound(LogScalar::zero()).status == EvalStatus::DomainError);
}
