#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "schwartz/closed_range.hpp"
#include "schwartz/errors.hpp"
#include "schwartz/parser.hpp"
#include "schwartz/seminorm.hpp"

#include <cmath>
#include <sstream>

using namespace schwartz;

namespace {

RunConfig test_cfg() {
    RunConfig cfg;
    cfg.base_points = 768;
    cfg.far_field_points = 192;
    return cfg;
}

const RuleRecord& rule_of(const ClosedRangeVerdict& v, const std::string& id) {
    for (const auto& r : v.trace)
        if (r.id == id) return r;
    static RuleRecord missing;
    FAIL("missing rule ", id);
    return missing;
}

std::string phi2_text() {
    // x0 > 1 with x0 e^{-x0} = 1/(2e), found by bisection on [1, 5]
    double lo = 1, hi = 5;
    for (int i = 0; i < 200; ++i) {
        double m = 0.5 * (lo + hi);
        if (m * std::exp(-m) > 0.5 * std::exp(-1.0))
            lo = m;
        else
            hi = m;
    }
    double x0 = 0.5 * (lo + hi);
    std::ostringstream os;
    os.precision(17);
    os << "piecewise((-inf," << x0 << "]: x*exp(-x); [" << 2 * x0 << ",inf): (" << 2 * x0
       << "-x)+1/(2*e); blend: 8)";
    return os.str();
}

} // namespace

TEST_CASE("cinf heuristic: conservative at the cube's flat point, holds for x^2") {
    RunConfig cfg = test_cfg();
    {
        PiecewiseFn phi = parse("x^3");
        PiecewiseRealFunction rf(phi, 4);
        SymbolReport rep = analyze_symbol(phi, 2, cfg);
        Verdict h = cinf_heuristic(rf, rep, cfg);
        CHECK(h.is_inconclusive()); // y=0 only reachable through the critical point
    }
    {
        PiecewiseFn phi = parse("x^2");
        PiecewiseRealFunction rf(phi, 4);
        SymbolReport rep = analyze_symbol(phi, 2, cfg);
        Verdict h = cinf_heuristic(rf, rep, cfg);
        CHECK(h.holds_true()); // endpoint neighborhood is excluded
    }
}

TEST_CASE("decide: x^2 closed via the multiplier rule") {
    RunConfig cfg = test_cfg();
    ClosedRangeVerdict v = decide_closed_range(parse("x^2"), {}, cfg);
    CHECK(v.status == ClosedRangeStatus::Closed);
    CHECK(rule_of(v, "suf-om").fired);
    CHECK_FALSE(rule_of(v, "nec-growth").fired);
    CHECK_FALSE(rule_of(v, "asterisco").fired);
}

TEST_CASE("decide: identity closed via the surjective rule") {
    RunConfig cfg = test_cfg();
    ClosedRangeVerdict v = decide_closed_range(parse("x"), {}, cfg);
    CHECK(v.status == ClosedRangeStatus::Closed);
    // suf-om fires first (identity is polynomially bounded with phi' = 1)
    CHECK((rule_of(v, "suf-om").fired || rule_of(v, "suf-surj").fired));
}

TEST_CASE("decide: x^3 closed, double zero of the derivative certified") {
    RunConfig cfg = test_cfg();
    ClosedRangeVerdict v = decide_closed_range(parse("x^3"), {}, cfg);
    CHECK(v.status == ClosedRangeStatus::Closed);
    CHECK(rule_of(v, "suf-om").fired);
}

TEST_CASE("decide: sign-exp extension is not closed; growth and star rules both fire") {
    RunConfig cfg = test_cfg();
    ClosedRangeVerdict v = decide_closed_range(
        parse("piecewise((-inf,-1]: -exp(-x); [1,inf): exp(x); blend: 8)"), {}, cfg);
    CHECK(v.status == ClosedRangeStatus::NotClosed);
    CHECK(rule_of(v, "nec-growth").fired);
    CHECK(rule_of(v, "asterisco").fired);
    CHECK_FALSE(rule_of(v, "suf-om").evaluated); // short-circuited
    CHECK(!v.witness.empty());
}

TEST_CASE("decide: sign-exp-square variant is not closed") {
    RunConfig cfg = test_cfg();
    ClosedRangeVerdict v = decide_closed_range(
        parse("piecewise((-inf,-1]: -exp(x^2); [1,inf): exp(x^2); blend: 8)"), {}, cfg);
    CHECK(v.status == ClosedRangeStatus::NotClosed);
    CHECK(rule_of(v, "asterisco").fired);
}

TEST_CASE("decide: phi1-hat not closed via the mirrored candidate") {
    RunConfig cfg = test_cfg();
    ClosedRangeVerdict v = decide_closed_range(
        parse("piecewise((-inf,0]: -exp(-x)+2; [1,inf): x; blend: 8)"), {}, cfg);
    CHECK(v.status == ClosedRangeStatus::NotClosed);
    CHECK(rule_of(v, "asterisco").fired);
    CHECK(rule_of(v, "asterisco").detail.find("mirrored") != std::string::npos);
}

TEST_CASE("decide: phi2-hat closed via the non-surjective rule") {
    RunConfig cfg = test_cfg();
    ClosedRangeVerdict v = decide_closed_range(parse(phi2_text()), {}, cfg);
    CHECK(v.status == ClosedRangeStatus::Closed);
    CHECK(rule_of(v, "suf-nonsurj").fired);
    CHECK(rule_of(v, "suf-nonsurj").detail.find("inf") != std::string::npos);
}

TEST_CASE("decide: user cinf=no forces NotClosed through the necessary rule") {
    RunConfig cfg = test_cfg();
    AssumptionSet a;
    a.cinf_closed_range = Flag::No;
    ClosedRangeVerdict v = decide_closed_range(parse("x^2"), a, cfg);
    CHECK(v.status == ClosedRangeStatus::NotClosed);
    CHECK(rule_of(v, "nec-cinf").fired);
}

TEST_CASE("decide: non-symbols are rejected") {
    RunConfig cfg = test_cfg();
    CHECK_THROWS_AS(decide_closed_range(parse("sin(x)"), {}, cfg), PreconditionError);
}

TEST_CASE("asterisco with a rapidly-decreasing candidate never fires") {
    RunConfig cfg = test_cfg();
    ClosedRangeVerdict v = decide_closed_range(
        parse("piecewise((-inf,-1]: -exp(-x); [1,inf): exp(x); blend: 8)"), {}, cfg,
        parse("exp(-x^2)"));
    // the gaussian candidate is in S, so asterisco cannot fire; nec-growth
    // still rules the verdict
    CHECK_FALSE(rule_of(v, "asterisco").fired);
    CHECK(rule_of(v, "nec-growth").fired);
    CHECK(v.status == ClosedRangeStatus::NotClosed);
}

TEST_CASE("trace never contains both a fired necessary and a fired sufficient rule") {
    RunConfig cfg = test_cfg();
    for (const char* s : {"x", "x^2", "x^3",
                          "piecewise((-inf,-1]: -exp(-x); [1,inf): exp(x); blend: 8)"}) {
        ClosedRangeVerdict v = decide_closed_range(parse(s), {}, cfg);
        bool nec = false, suf = false;
        for (const auto& r : v.trace) {
            if (!r.fired) continue;
            if (r.id.rfind("suf", 0) == 0)
                suf = true;
            else
                nec = true;
        }
        CHECK_FALSE((nec && suf));
    }
}

TEST_CASE("rule premises are replayable") {
    RunConfig cfg = test_cfg();
    ClosedRangeVerdict v = decide_closed_range(parse("x^2"), {}, cfg);
    // re-running the premise chain reproduces the stored outcomes
    SymbolReport rep = analyze_symbol(parse("x^2"), cfg.max_j, cfg);
    CHECK(rep.o_m.holds_true());
    CHECK(rep.is_symbol.holds_true());
    PiecewiseRealFunction dphi(parse("x^2").derivative(1), cfg.max_j);
    CHECK(closed_range_multiplier(dphi, Region::full(), cfg, nullptr).holds_true());
    CHECK(rule_of(v, "suf-om").premises.size() >= 3);
}
