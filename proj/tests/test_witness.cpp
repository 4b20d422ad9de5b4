#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "schwartz/errors.hpp"
#include "schwartz/parser.hpp"
#include "schwartz/seminorm.hpp"
#include "schwartz/witness.hpp"

#include <cmath>

using namespace schwartz;

namespace {

RunConfig test_cfg() {
    RunConfig cfg;
    cfg.base_points = 1024;
    cfg.far_field_points = 256;
    return cfg;
}

} // namespace

TEST_CASE("psi taylor coefficients are exact: psi''(0) = -8") {
    auto c = psi_taylor(4);
    CHECK(c[0] == 1);
    CHECK(c[1] == 0);
    CHECK(c[2] == -4); // psi''(0) = 2! * c_2 = -8
    CHECK(c[3] == 0);
}

TEST_CASE("make_bump solves the moment system exactly") {
    BumpSpec b1 = make_bump(1);
    CHECK(b1.correction == RatPoly({Rational(0), Rational(1)})); // p(x) = x

    BumpSpec b2 = make_bump(2);
    CHECK(b2.correction == RatPoly({Rational(0), Rational(1)})); // parity keeps p = x

    BumpSpec b3 = make_bump(3);
    CHECK(b3.correction ==
          RatPoly({Rational(0), Rational(1), Rational(0), Rational(4)})); // x + 4x^3

    // moment invariants exact for n <= 10
    for (int n = 1; n <= 10; ++n) {
        BumpSpec b = make_bump(n);
        CHECK(bump_moment(b, 0) == 0);
        CHECK(bump_moment(b, 1) == 1);
        for (int j = 2; j <= n; ++j) CHECK(bump_moment(b, j) == 0);
    }
}

TEST_CASE("bump evaluates to 1 at center and 0 outside") {
    PiecewiseFn psi = standard_bump();
    CHECK(psi.evaluate(0.0) == 1.0);
    CHECK(psi.evaluate(0.5) == 0.0);
    CHECK(psi.evaluate(-0.5) == 0.0);
    CHECK(psi.evaluate(2.0) == 0.0);
    CHECK(psi.evaluate(0.25) > 0.0);

    PiecewiseFn moved = scaled_bump(Rational(3), Rational(2));
    CHECK(moved.evaluate(3.0) == 1.0);
    CHECK(moved.evaluate(4.0) == 0.0);
}

TEST_CASE("series evaluation activates exactly one term") {
    // centers 0 and 10, weights 1 and 1/2
    BumpSeries s(standard_bump(), {0.0, 10.0}, {0.0, std::log(0.5)}, 2);
    Bound at0 = s.value_bound(LogScalar::zero());
    CHECK(at0.lo.value() == doctest::Approx(1.0));
    Bound at10 = s.value_bound(LogScalar::from_double(10.0));
    CHECK(at10.lo.value() == doctest::Approx(0.5));
    Bound between = s.value_bound(LogScalar::from_double(5.0));
    CHECK(between.lo.is_zero());
    Bound far = s.value_bound(LogScalar::from_log(1, 800.0)); // x beyond double range
    CHECK(far.lo.is_zero());
}

TEST_CASE("series center separation enforced") {
    CHECK_THROWS_AS(BumpSeries(standard_bump(), {0.0, 0.7}, {0.0, 0.0}, 1), PreconditionError);
}

TEST_CASE("cond-(ii) witness series for log growth: products reach 1") {
    RunConfig cfg = test_cfg();
    PiecewiseRealFunction phi(parse("1+log(1+x^2)"), cfg.max_order);
    auto [series, rep] = build_witness_cond_ii(phi, 10, cfg);
    REQUIRE(series);
    CHECK(rep.inequalities_ok);
    REQUIRE(rep.check_values.size() == 10);
    for (double v : rep.check_values) CHECK(v >= 0.9);
    CHECK(rep.membership.holds_true());
    // truncation sanity: at x in supp(term k) the series equals that term
    double y0 = rep.centers[0];
    Bound b = series->value_bound(LogScalar::from_double(y0 + 0.25));
    PiecewiseRealFunction psi(standard_bump(), 0);
    Bound t = psi.value_bound(LogScalar::from_double(0.25));
    CHECK(mag_lo(b).lg ==
          doctest::Approx(series->log_weights()[0] + mag_lo(t).lg).epsilon(1e-12));
}

TEST_CASE("cond-(ii) witness precondition rejected for symbols") {
    RunConfig cfg = test_cfg();
    PiecewiseRealFunction phi(parse("x^3"), 2);
    CHECK_THROWS_AS(build_witness_cond_ii(phi, 4, cfg), PreconditionError);
}

TEST_CASE("cond-(i) witness series for x+sin(exp(x^2))") {
    RunConfig cfg = test_cfg();
    PiecewiseRealFunction phi(parse("x+sin(exp(x^2))"), cfg.max_order);
    auto [series, rep] = build_witness_cond_i(phi, 1, 8, cfg);
    REQUIRE(series);
    REQUIRE(rep.check_values.size() == 8);
    CHECK(rep.inequalities_ok);
    for (std::size_t k = 0; k < 8; ++k)
        CHECK(rep.check_values[k] >= 0.9 * static_cast<double>(k + 1));
    CHECK(rep.membership.holds_true());
}

TEST_CASE("cond-(i) witness precondition rejected when (i) holds") {
    RunConfig cfg = test_cfg();
    PiecewiseRealFunction phi(parse("x^2"), 3);
    CHECK_THROWS_AS(build_witness_cond_i(phi, 1, 4, cfg), PreconditionError);
}

TEST_CASE("weight sanity for the cond-(i) bump: f(y_j)=0, f'(y_j)=w_j") {
    BumpSpec spec = make_bump(2);
    BumpSeries s(spec.rho, {0.0, 7.0}, {0.0, std::log(0.25)}, 2);
    Bound v = s.value_bound(LogScalar::from_double(7.0));
    CHECK(v.lo.is_zero()); // rho(0) = 0
    Bound d = s.deriv_bound(1, LogScalar::from_double(7.0));
    CHECK(d.lo.value() == doctest::Approx(0.25).epsilon(1e-12)); // rho'(0) = 1 times w
}

TEST_CASE("lemma1 witness for sin: growing products") {
    RunConfig cfg = test_cfg();
    PiecewiseRealFunction phi(parse("sin(x)"), 1);
    Lemma1Witness w = lemma1_witness(phi, 8, cfg);
    REQUIRE(w.points.size() >= 4);
    CHECK(std::fabs(w.limit_point) < 0.5);
    CHECK(w.products.back() > 100.0 * std::max(1.0, w.products.front() / 100.0));
    CHECK(w.products.back() > w.products.front());
}

TEST_CASE("lemma1 witness for exp: left-tail products grow") {
    RunConfig cfg = test_cfg();
    PiecewiseRealFunction phi(parse("exp(x)"), 1);
    Lemma1Witness w = lemma1_witness(phi, 8, cfg);
    CHECK(std::fabs(w.limit_point) < 1e-3);
    CHECK(w.products.back() > 1.0);
}

TEST_CASE("lemma1 witness rejected for symbols") {
    RunConfig cfg = test_cfg();
    PiecewiseRealFunction phi(parse("x^3"), 1);
    CHECK_THROWS_AS(lemma1_witness(phi, 8, cfg), PreconditionError);
}

TEST_CASE("noncompact family on the identity") {
    RunConfig cfg = test_cfg();
    cfg.base_points = 512;
    PiecewiseRealFunction id(parse("x"), 3);
    NonCompactFamily fam = noncompact_family(id, 0.0, 1.0, 2, 1.0, 5, cfg);
    CHECK(fam.delta == doctest::Approx(1.0).epsilon(1e-2));
    REQUIRE(fam.members.size() == 5);
    for (std::size_t j = 0; j < fam.members.size(); ++j) {
        CHECK(fam.norms[j] == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(fam.composite_sups[j] >= static_cast<double>(j + 1));
    }
    // frequencies increase along the family
    CHECK(fam.omegas.back() >= fam.omegas.front());
}

TEST_CASE("noncompact family rejects non-monotone intervals") {
    RunConfig cfg = test_cfg();
    cfg.base_points = 512;
    PiecewiseRealFunction s(parse("sin(x)"), 3);
    CHECK_THROWS_AS(noncompact_family(s, 0.0, std::acos(-1.0), 2, 1.0, 3, cfg),
                    PreconditionError);
    // but a subinterval clear of the critical point works
    NonCompactFamily fam = noncompact_family(s, 0.1, 1.4, 2, 1.0, 3, cfg);
    CHECK(fam.members.size() == 3);
}

TEST_CASE("norm gap function reaches the requested ratio") {
    RunConfig cfg = test_cfg();
    cfg.base_points = 512;
    NormGapResult r = norm_gap_function(0.0, 1.0, 0, 10.0, cfg);
    CHECK(r.norm_n1 / r.norm_n >= 10.0);
    CHECK_THROWS_AS(norm_gap_function(0.0, 1.0, 0, 1.0, cfg), PreconditionError);

    // consistency: the (n+1)-norm dominates the n-norm for any f
    PiecewiseRealFunction f(r.fn, 2);
    DNormResult d1 = d_norm(f, 1, 0.0, 1.0, cfg);
    DNormResult d0 = d_norm(f, 0, 0.0, 1.0, cfg);
    CHECK(d1.value >= d0.value);
}
