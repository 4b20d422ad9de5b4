#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "schwartz/grid.hpp"
#include "schwartz/parser.hpp"
#include "schwartz/real_function.hpp"

#include <cmath>
#include <cstring>

using namespace schwartz;

namespace {

SweepEval gaussian_weighted(const PiecewiseRealFunction& f, const std::vector<LogScalar>& pts,
                            int n) {
    return [&f, &pts, n](std::size_t i) {
        std::size_t orders = static_cast<std::size_t>(n) + 1;
        const LogScalar& x = pts[i / orders];
        int j = static_cast<int>(i % orders);
        SweepSample s;
        Bound b = f.deriv_bound(j, x);
        if (!b.ok()) return s;
        LogScalar lo = mag_lo(b);
        s.valid = true;
        s.score = n * log1p_sq(x) + (lo.is_zero() ? kNegInf : lo.lg);
        s.abs_x_lg = x.is_zero() ? kNegInf : x.lg;
        s.sign_x = x.sign;
        s.order = j;
        s.x = x;
        return s;
    };
}

bool same_sample(const SweepSample& a, const SweepSample& b) {
    return a.valid == b.valid && a.score == b.score && a.abs_x_lg == b.abs_x_lg &&
           a.sign_x == b.sign_x && a.order == b.order;
}

} // namespace

TEST_CASE("serial and parallel sup scans are bit-identical") {
    RunConfig cfg;
    cfg.base_points = 2048;
    PiecewiseRealFunction f(parse("exp(-x^2)"), 3);
    auto pts = log_grid(Region::full(), cfg);
    auto eval = gaussian_weighted(f, pts, 3);
    std::size_t count = pts.size() * 4;

    SweepSample serial = sup_scan_serial(count, eval);
    for (int threads : {1, 2, 3, 5, 8}) {
        SweepSample par = sup_scan_parallel(count, eval, threads);
        CHECK(same_sample(serial, par));
    }
}

TEST_CASE("tie-breaking prefers smaller |x|, then positive sign") {
    // two identical scores at x = -1 and x = +1: positive wins
    std::vector<SweepSample> samples(2);
    samples[0].valid = true;
    samples[0].score = 1.0;
    samples[0].abs_x_lg = 0.0;
    samples[0].sign_x = -1;
    samples[1].valid = true;
    samples[1].score = 1.0;
    samples[1].abs_x_lg = 0.0;
    samples[1].sign_x = 1;
    SweepSample best = sup_scan_serial(2, [&](std::size_t i) { return samples[i]; });
    CHECK(best.sign_x == 1);

    // smaller |x| beats larger at equal score
    samples[0].sign_x = 1;
    samples[0].abs_x_lg = -2.0;
    best = sup_scan_serial(2, [&](std::size_t i) { return samples[i]; });
    CHECK(best.abs_x_lg == -2.0);
}

TEST_CASE("region membership") {
    CHECK(Region::full().contains(-1e9));
    CHECK(Region::right_of(2).contains(2));
    CHECK_FALSE(Region::right_of(2).contains(1.99));
    CHECK(Region::left_of(-1).contains(-1));
    CHECK_FALSE(Region::left_of(-1).contains(0));
}

TEST_CASE("log grid respects regions and includes origin and endpoint") {
    RunConfig cfg;
    cfg.base_points = 64;
    auto full = log_grid(Region::full(), cfg);
    bool has_zero = false;
    for (const auto& p : full) has_zero = has_zero || p.is_zero();
    CHECK(has_zero);

    auto ray = log_grid(Region::right_of(1.0), cfg);
    bool has_endpoint = false;
    for (const auto& p : ray) {
        CHECK(p.value() >= 1.0);
        if (p.value() == 1.0) has_endpoint = true;
    }
    CHECK(has_endpoint);
}

TEST_CASE("far-field grid reaches astronomically large x in log form") {
    RunConfig cfg;
    auto pts = far_field_grid(Region::full(), cfg);
    REQUIRE(!pts.empty());
    double max_lg = 0;
    for (const auto& p : pts) max_lg = std::max(max_lg, p.lg);
    CHECK(max_lg == doctest::Approx(1e4));
}

TEST_CASE("golden section finds the gaussian weighted peak") {
    // g(t) = log[(1+x^2) * 2x * exp(-x^2)] at x = e^t peaks at x = 1
    auto g = [](double t) {
        double x = std::exp(t);
        return std::log1p(x * x) + std::log(2 * x) - x * x;
    };
    auto [arg, val] = golden_max(std::log(0.5), std::log(2.0), 48, g);
    CHECK(std::exp(arg) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(val == doctest::Approx(std::log(4.0 / std::exp(1.0))).epsilon(1e-9));
}

TEST_CASE("line fit recovers slope") {
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < 50; ++i) {
        double t = 1.0 + 0.1 * i;
        pts.push_back({t, 3.0 - 2.0 * t});
    }
    auto [slope, res] = fit_line(pts);
    CHECK(slope == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(res == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("table scan preserves order and parallel equals serial") {
    RunConfig cfg;
    cfg.workers = 4;
    auto eval = [](std::size_t i) {
        SweepSample s;
        s.valid = true;
        s.score = static_cast<double>(i % 17);
        s.order = static_cast<int>(i);
        return s;
    };
    auto par = table_scan(100, eval, cfg);
    cfg.workers = 1;
    auto ser = table_scan(100, eval, cfg);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
        CHECK(par[i].order == static_cast<int>(i));
        CHECK(same_sample(par[i], ser[i]));
    }
}
