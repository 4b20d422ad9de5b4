#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "schwartz/parser.hpp"
#include "schwartz/symbol.hpp"

#include <cmath>

using namespace schwartz;

namespace {

RunConfig test_cfg() {
    RunConfig cfg;
    cfg.base_points = 1024;
    cfg.far_field_points = 256;
    return cfg;
}

SymbolReport analyze(const char* text, int max_j = 3) {
    return analyze_symbol(parse(text), max_j, test_cfg());
}

} // namespace

TEST_CASE("limit check: polynomial symbols hold with range classification") {
    RunConfig cfg = test_cfg();
    PiecewiseRealFunction cube(parse("x^3"), 2);
    RangeClass range;
    Verdict v = check_limit_infinity(cube, cfg, &range);
    CHECK(v.holds_true());
    CHECK(range.kind == RangeClass::Kind::FullLine);

    PiecewiseRealFunction square(parse("x^2"), 2);
    v = check_limit_infinity(square, cfg, &range);
    CHECK(v.holds_true());
    CHECK(range.kind == RangeClass::Kind::BoundedBelow);
    CHECK(range.endpoint == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("limit check: sin fails with a bounded subsequence") {
    RunConfig cfg = test_cfg();
    PiecewiseRealFunction f(parse("sin(x)"), 2);
    Verdict v = check_limit_infinity(f, cfg, nullptr);
    REQUIRE(v.failed());
    CHECK(v.witnesses().size() >= 8);
    // the witnesses are a genuinely unbounded sequence of points
    double max_abs = 0;
    for (const auto& w : v.witnesses()) max_abs = std::max(max_abs, std::fabs(w.x));
    CHECK(max_abs > 1e3);
}

TEST_CASE("limit check: exp fails on the left tail, exact path") {
    RunConfig cfg = test_cfg();
    PiecewiseRealFunction f(parse("exp(x)"), 2);
    Verdict v = check_limit_infinity(f, cfg, nullptr);
    REQUIRE(v.failed());
    CHECK(v.reason().find("left") != std::string::npos);
}

TEST_CASE("condition (i): x^2 holds with a per-j certificate") {
    RunConfig cfg = test_cfg();
    PiecewiseRealFunction f(parse("x^2"), 3);
    std::vector<DominationCert> certs;
    Verdict v = check_condition_i(f, 3, cfg, &certs);
    CHECK(v.holds_true());
    REQUIRE(certs.size() == 3);
    // certificates re-verify on the sampling grid by construction; check a
    // couple of points by hand
    for (double x : {-7.0, 0.5, 3.0, 950.0}) {
        double lhs = std::fabs(2 * x);
        double phi = x * x;
        double rhs = certs[0].C * std::pow(1 + phi * phi, certs[0].exponent);
        CHECK(lhs <= rhs);
    }
}

TEST_CASE("condition (i): exp(x^2) holds") {
    RunConfig cfg = test_cfg();
    PiecewiseRealFunction f(parse("exp(x^2)"), 3);
    Verdict v = check_condition_i(f, 3, cfg, nullptr);
    CHECK(v.holds_true());
}

TEST_CASE("condition (i): x+sin(exp(x^2)) fails with growing ratio witnesses") {
    RunConfig cfg = test_cfg();
    PiecewiseRealFunction f(parse("x+sin(exp(x^2))"), 2);
    Verdict v = check_condition_i(f, 1, cfg, nullptr);
    REQUIRE(v.failed());
    CHECK(v.witnesses().size() == 8);
}

TEST_CASE("condition (ii): x^3 holds with k=1, exp(x^2) with k=1") {
    RunConfig cfg = test_cfg();
    CHECK(check_condition_ii(PiecewiseRealFunction(parse("x^3"), 1), cfg).cert_value("k") == 1);
    CHECK(check_condition_ii(PiecewiseRealFunction(parse("exp(x^2)"), 1), cfg).cert_value("k") ==
          1);
}

TEST_CASE("condition (ii): log growth fails for every k") {
    RunConfig cfg = test_cfg();
    PiecewiseRealFunction f(parse("1+log(1+x^2)"), 1);
    Verdict v = check_condition_ii(f, cfg);
    REQUIRE(v.failed());
    CHECK(v.witnesses().size() == 8);
    // witnesses live in the far field
    bool far = false;
    for (const auto& w : v.witnesses()) far = far || w.log_abs_x > 100;
    CHECK(far);
}

TEST_CASE("symbol corpus: holds cases") {
    for (const char* s : {"x", "x^2+1", "x^3", "exp(x^2)"}) {
        SymbolReport rep = analyze(s);
        CHECK_MESSAGE(rep.is_symbol.holds_true(), s);
        CHECK(rep.failed_condition.empty());
    }
}

TEST_CASE("symbol corpus: lemma1 failures") {
    for (const char* s : {"sin(x)", "exp(x)", "5"}) {
        SymbolReport rep = analyze(s);
        CHECK_MESSAGE(rep.is_symbol.failed(), s);
        CHECK_MESSAGE(rep.failed_condition == "lemma1", s);
    }
}

TEST_CASE("symbol corpus: condition failures are attributed correctly") {
    SymbolReport log_growth = analyze("1+log(1+x^2)");
    CHECK(log_growth.is_symbol.failed());
    CHECK(log_growth.failed_condition == "ii");

    SymbolReport wild = analyze("x+sin(exp(x^2))", 2);
    CHECK(wild.is_symbol.failed());
    CHECK(wild.failed_condition == "i");
}

TEST_CASE("polynomials of degree >= 1 are symbols via the exact path") {
    for (const char* s : {"x", "2*x-7", "x^2+1", "x^3-3*x", "x^5/120"}) {
        SymbolReport rep = analyze(s, 2);
        CHECK_MESSAGE(rep.is_symbol.holds_true(), s);
        CHECK(rep.exact_path);
    }
}

TEST_CASE("degree-0 polynomials and bounded functions fail via lemma1") {
    for (const char* s : {"0", "5", "-2/3", "sin(x)", "1/(1+x^2)"}) {
        SymbolReport rep = analyze(s, 2);
        CHECK_MESSAGE(rep.is_symbol.failed(), s);
        CHECK(rep.failed_condition == "lemma1");
    }
}

TEST_CASE("products of corpus symbols stay symbols") {
    for (const char* s : {"x*(x^2+1)", "x^3*exp(x^2)", "x^2*x^3"}) {
        SymbolReport rep = analyze(s, 2);
        CHECK_MESSAGE(rep.is_symbol.holds_true(), s);
    }
}

TEST_CASE("condition (*) holds for O_M symbols and the sign-exp extension") {
    RunConfig cfg = test_cfg();
    CHECK(check_condition_star(PiecewiseRealFunction(parse("x^2"), 3), 2, cfg, nullptr)
              .holds_true());
    PiecewiseFn sign_exp = parse("piecewise((-inf,-1]: -exp(-x); [1,inf): exp(x); blend: 8)");
    CHECK(check_condition_star(PiecewiseRealFunction(sign_exp, 3), 2, cfg, nullptr)
              .holds_true());
    CHECK(check_condition_star(PiecewiseRealFunction(parse("x+sin(exp(x^2))"), 2), 1, cfg,
                               nullptr)
              .failed());
}

TEST_CASE("O_M membership") {
    RunConfig cfg = test_cfg();
    CHECK(check_om(PiecewiseRealFunction(parse("x^5"), 3), 3, Region::full(), cfg).holds_true());
    CHECK(check_om(PiecewiseRealFunction(parse("exp(x^2)"), 2), 2, Region::full(), cfg).failed());
    CHECK(check_om(PiecewiseRealFunction(parse("exp(-x^2)"), 2), 2, Region::full(), cfg)
              .holds_true());
    CHECK(check_om(PiecewiseRealFunction(parse("1+log(1+x^2)"), 2), 2, Region::full(), cfg)
              .holds_true());
}

TEST_CASE("O_M on a half line sees only that tail") {
    RunConfig cfg = test_cfg();
    // e^{-x} explodes to the left but is harmless on [0, inf)
    PiecewiseRealFunction f(parse("exp(-x)"), 2);
    CHECK(check_om(f, 2, Region::right_of(0.0), cfg).holds_true());
    CHECK(check_om(f, 2, Region::left_of(0.0), cfg).failed());
}

TEST_CASE("surjectivity from range classification") {
    RunConfig cfg = test_cfg();
    CHECK(check_surjective(PiecewiseRealFunction(parse("x^3"), 1), cfg, nullptr).holds_true());
    RangeClass range;
    Verdict v = check_surjective(PiecewiseRealFunction(parse("x^2"), 1), cfg, &range);
    REQUIRE(v.failed());
    CHECK(range.kind == RangeClass::Kind::BoundedBelow);
    CHECK(std::fabs(range.endpoint) < 1e-6);

    PiecewiseFn sign_exp = parse("piecewise((-inf,-1]: -exp(-x); [1,inf): exp(x); blend: 8)");
    CHECK(check_surjective(PiecewiseRealFunction(sign_exp, 1), cfg, nullptr).holds_true());
}

TEST_CASE("continuity estimate: identity symbol gives k=1, t=2") {
    RunConfig cfg = test_cfg();
    PiecewiseRealFunction id(parse("x"), 2);
    std::vector<DominationCert> certs;
    Verdict ci = check_condition_i(id, 1, cfg, &certs);
    REQUIRE(ci.holds_true());
    Verdict cii = check_condition_ii(id, cfg);
    REQUIRE(cii.holds_true());
    int k = static_cast<int>(cii.cert_value("k"));
    CHECK(k == 1);
    ContinuityEstimate est = continuity_estimate(id, 1, certs, k, cfg);
    CHECK(est.t == 2);
    CHECK(est.index == 3); // k*n + t = 1 + 2
    CHECK(est.factor >= 1.0);
}

TEST_CASE("sign-exp extension is a symbol (piecewise exact tails)") {
    SymbolReport rep = analyze("piecewise((-inf,-1]: -exp(-x); [1,inf): exp(x); blend: 8)", 2);
    CHECK(rep.is_symbol.holds_true());
    CHECK(rep.o_m.failed()); // exponential growth is not O_M
    CHECK(rep.star.holds_true());
    CHECK(rep.surjective.holds_true());
}
