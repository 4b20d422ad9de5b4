#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "schwartz/parser.hpp"
#include "schwartz/seminorm.hpp"

#include <cmath>
#include <sstream>

using namespace schwartz;

namespace {

RunConfig test_cfg() {
    RunConfig cfg;
    cfg.base_points = 1024; // keep unit tests quick; acceptance uses defaults
    return cfg;
}

} // namespace

TEST_CASE("pi_1 of the gaussian is 4/e with witness near x=1") {
    RunConfig cfg = test_cfg();
    PiecewiseRealFunction f(parse("exp(-x^2)"), 1);
    SeminormEstimate est = seminorm_pi(f, 1, Region::full(), cfg);
    CHECK(est.value == doctest::Approx(4.0 / std::exp(1.0)).epsilon(1e-7));
    CHECK(est.witness_x.value() == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(est.witness_x.sign == 1); // tie against x=-1 resolved to the positive side
    CHECK(est.witness_order == 1);
    CHECK(est.tail == TailStatus::Decaying);
    // witness value recomputable: integrand at the witness equals the bound
    Bound b = f.deriv_bound(est.witness_order, est.witness_x);
    double recomputed = est.n * log1p_sq(est.witness_x) + mag_lo(b).lg;
    CHECK(recomputed == est.log_value);
}

TEST_CASE("zero function has zero seminorm") {
    RunConfig cfg = test_cfg();
    PiecewiseRealFunction f(parse("0"), 3);
    SeminormEstimate est = seminorm_pi(f, 3, Region::full(), cfg);
    CHECK(est.value == 0.0);
}

TEST_CASE("1/(1+x^2) at n=2 has growing tail") {
    RunConfig cfg = test_cfg();
    PiecewiseRealFunction f(parse("1/(1+x^2)"), 2);
    SeminormEstimate est = seminorm_pi(f, 2, Region::full(), cfg);
    CHECK(est.tail == TailStatus::Growing);
}

TEST_CASE("seminorm monotone in order on the same grid") {
    RunConfig cfg = test_cfg();
    PiecewiseRealFunction f(parse("exp(-x^2)*cos(x)"), 4);
    double prev = -1;
    for (int n = 1; n <= 3; ++n) {
        SeminormEstimate est = seminorm_pi(f, n, Region::full(), cfg);
        CHECK(est.value >= prev);
        prev = est.value;
    }
}

TEST_CASE("seminorm scales linearly in the function") {
    RunConfig cfg = test_cfg();
    PiecewiseRealFunction f(parse("exp(-x^2)"), 2);
    PiecewiseRealFunction g(parse("3*exp(-x^2)"), 2);
    SeminormEstimate ef = seminorm_pi(f, 2, Region::full(), cfg);
    SeminormEstimate eg = seminorm_pi(g, 2, Region::full(), cfg);
    CHECK(eg.value == doctest::Approx(3.0 * ef.value).epsilon(1e-9));
    CHECK(eg.witness_x.value() == doctest::Approx(ef.witness_x.value()).epsilon(1e-6));
    CHECK(eg.witness_order == ef.witness_order);
}

TEST_CASE("membership: gaussian holds at order 4") {
    RunConfig cfg = test_cfg();
    PiecewiseRealFunction f(parse("exp(-x^2)"), 4);
    Verdict v = membership_S(f, 4, Region::full(), cfg);
    CHECK(v.holds_true());
}

TEST_CASE("membership: 1/(1+x^2) fails with witness pair (m=2, j=0)") {
    RunConfig cfg = test_cfg();
    PiecewiseRealFunction f(parse("1/(1+x^2)"), 2);
    Verdict v = membership_S(f, 2, Region::full(), cfg);
    REQUIRE(v.failed());
    CHECK(v.reason().find("m=2") != std::string::npos);
    CHECK(v.reason().find("j=0") != std::string::npos);
    CHECK(!v.witnesses().empty());
}

TEST_CASE("membership: exp(-x) on the full line fails on the left tail") {
    RunConfig cfg = test_cfg();
    PiecewiseRealFunction f(parse("exp(-x)"), 1);
    Verdict v = membership_S(f, 1, Region::full(), cfg);
    REQUIRE(v.failed());
    bool left = false;
    for (const auto& w : v.witnesses()) left = left || w.sign_x < 0;
    CHECK(left);
}

TEST_CASE("membership on a half line ignores the absent tail") {
    RunConfig cfg = test_cfg();
    // exp(-x) decays on [0, inf): membership there holds
    PiecewiseRealFunction f(parse("exp(-x)"), 2);
    Verdict v = membership_S(f, 2, Region::right_of(0.0), cfg);
    CHECK(v.holds_true());
}

TEST_CASE("d_norm of the standard bump") {
    RunConfig cfg = test_cfg();
    PiecewiseFn psi = parse(
        "piecewise((-inf,-1/2]: 0; (-1/2,1/2): exp(1-1/(1-4*x^2)); [1/2,inf): 0)");
    PiecewiseRealFunction f(psi, 2);
    DNormResult r0 = d_norm(f, 0, -0.5, 0.5, cfg);
    CHECK(r0.value == doctest::Approx(1.0).epsilon(1e-9)); // max at 0, normalized
    CHECK_FALSE(r0.support_leak);

    DNormResult r1 = d_norm(f, 1, -0.5, 0.5, cfg);
    CHECK(r1.value >= r0.value); // one more nonnegative term
    // cross-check sup|psi'| against a dense uniform oracle grid
    PiecewiseFn dpsi = psi.derivative(1);
    double oracle = 0;
    const int N = 1000000;
    for (int i = 0; i <= N; ++i) {
        double x = -0.5 + static_cast<double>(i) / N;
        Bound b = dpsi.evaluate_bound(LogScalar::from_double(x));
        if (b.ok() && b.is_point()) oracle = std::max(oracle, std::fabs(b.lo.value()));
    }
    CHECK(r1.per_order[1] == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("d_norm of zero is zero, and leak detection works") {
    RunConfig cfg = test_cfg();
    PiecewiseRealFunction zero(parse("0"), 2);
    DNormResult r = d_norm(zero, 2, -1, 1, cfg);
    CHECK(r.value == 0.0);
    CHECK_FALSE(r.support_leak);

    PiecewiseRealFunction one(parse("1"), 1);
    DNormResult leak = d_norm(one, 0, -1, 1, cfg);
    CHECK(leak.support_leak);
}

TEST_CASE("monotonicity of d_norm in the order") {
    RunConfig cfg = test_cfg();
    PiecewiseFn psi = parse(
        "piecewise((-inf,-1/2]: 0; (-1/2,1/2): exp(1-1/(1-4*x^2)); [1/2,inf): 0)");
    PiecewiseRealFunction f(psi, 4);
    double prev = 0;
    for (int n = 0; n <= 3; ++n) {
        DNormResult r = d_norm(f, n, -0.5, 0.5, cfg);
        CHECK(r.value >= prev);
        prev = r.value;
    }
}

TEST_CASE("csv emission has the documented columns") {
    RunConfig cfg = test_cfg();
    cfg.base_points = 32;
    PiecewiseRealFunction f(parse("exp(-x^2)"), 1);
    std::ostringstream os;
    emit_weighted_csv(os, f, 1, Region::full(), cfg);
    std::string s = os.str();
    CHECK(s.rfind("x,j,weight_exponent,value,log_value\n", 0) == 0);
    CHECK(std::count(s.begin(), s.end(), '\n') > 32);
}

TEST_CASE("decay report covers every requested pair") {
    RunConfig cfg = test_cfg();
    PiecewiseRealFunction f(parse("exp(-x^2)"), 2);
    DecayReport rep = decay_report(f, 2, 2, Region::full(), cfg);
    CHECK(rep.pairs.size() == 9);
    for (const auto& p : rep.pairs) {
        CHECK(p.left == TailStatus::Decaying);
        CHECK(p.right == TailStatus::Decaying);
    }
}
