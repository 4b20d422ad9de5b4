#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "schwartz/errors.hpp"
#include "schwartz/faa_di_bruno.hpp"
#include "schwartz/parser.hpp"
#include "schwartz/polynomial.hpp"

#include <cmath>
#include <random>

using namespace schwartz;

namespace {

// Brute-force oracle: count and list all k with sum i*k_i = n by nested loops
// over a flat integer vector (independent of the production enumerator).
void brute_force_rec(int n, int i, std::vector<int>& k, std::vector<std::vector<int>>& out) {
    if (i > n) {
        long s = 0;
        for (int t = 0; t < n; ++t) s += static_cast<long>(t + 1) * k[static_cast<std::size_t>(t)];
        if (s == n) out.push_back(k);
        return;
    }
    for (int c = 0; c * i <= n; ++c) {
        k[static_cast<std::size_t>(i - 1)] = c;
        brute_force_rec(n, i + 1, k, out);
    }
    k[static_cast<std::size_t>(i - 1)] = 0;
}

std::vector<std::vector<int>> brute_force_partitions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> k(static_cast<std::size_t>(n), 0);
    brute_force_rec(n, 1, k, out);
    return out;
}

// Bell numbers by the binomial recurrence.
std::vector<BigInt> bell_numbers(int up_to) {
    std::vector<BigInt> bell{BigInt(1)};
    for (int n = 0; n < up_to; ++n) {
        BigInt next(0);
        for (int k = 0; k <= n; ++k)
            next += binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k)) *
                    bell[static_cast<std::size_t>(k)];
        bell.push_back(next);
    }
    return bell;
}

RatPoly random_poly(std::mt19937& rng, int max_deg) {
    std::uniform_int_distribution<int> deg(1, max_deg);
    std::uniform_int_distribution<long> c(-4, 4);
    int d = deg(rng);
    std::vector<Rational> coeffs;
    for (int i = 0; i <= d; ++i) coeffs.emplace_back(c(rng));
    if (coeffs.back() == 0) coeffs.back() = 1;
    return RatPoly(std::move(coeffs));
}

} // namespace

TEST_CASE("partition enumeration matches the brute-force oracle up to 12") {
    // p(n) for n = 1..12: 1 2 3 5 7 11 15 22 30 42 56 77
    const int expected[] = {1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77};
    for (int n = 1; n <= 12; ++n) {
        auto oracle = brute_force_partitions(n);
        const auto& got = enumerate_partitions(n);
        CHECK(got.size() == oracle.size());
        CHECK(static_cast<int>(got.size()) == expected[n - 1]);
        // duplicate-free and every element valid
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].valid());
            for (std::size_t j = i + 1; j < got.size(); ++j) CHECK(got[i].k != got[j].k);
        }
    }
}

TEST_CASE("partition order is reverse-lexicographic and deterministic") {
    const auto& p3 = enumerate_partitions(3);
    REQUIRE(p3.size() == 3);
    CHECK(p3[0].k == std::vector<int>{3, 0, 0});
    CHECK(p3[1].k == std::vector<int>{1, 1, 0});
    CHECK(p3[2].k == std::vector<int>{0, 0, 1});

    const auto& p1 = enumerate_partitions(1);
    REQUIRE(p1.size() == 1);
    CHECK(p1[0].k == std::vector<int>{1});
}

TEST_CASE("partition order bounds enforced") {
    CHECK_THROWS_AS(enumerate_partitions(0), PreconditionError);
    CHECK_THROWS_AS(enumerate_partitions(21), PreconditionError);
}

TEST_CASE("coefficients for n=4 are {1,6,3,4,1} in enumeration order") {
    const auto& parts = enumerate_partitions(4);
    REQUIRE(parts.size() == 5);
    std::vector<long> coeffs;
    for (const auto& p : parts) coeffs.push_back(fdb_coefficient(p).get_si());
    CHECK(coeffs == std::vector<long>{1, 6, 3, 4, 1});
}

TEST_CASE("single partition coefficient cases") {
    Partition p1{1, {1}};
    CHECK(fdb_coefficient(p1) == 1);
    Partition p216{4, {2, 1, 0, 0}};
    CHECK(fdb_coefficient(p216) == 6);
    Partition p02{4, {0, 2, 0, 0}};
    CHECK(fdb_coefficient(p02) == 3);
}

TEST_CASE("coefficient sums reproduce Bell numbers (exact big-int)") {
    auto bell = bell_numbers(16);
    for (int n = 1; n <= 16; ++n) {
        BigInt sum(0);
        for (const auto& p : enumerate_partitions(n)) {
            BigInt c = fdb_coefficient(p);
            CHECK(c > 0);
            sum += c;
        }
        CHECK(sum == bell[static_cast<std::size_t>(n)]);
    }
}

TEST_CASE("compose_derivative: f arbitrary-ish, phi=x^2, n=2 shape") {
    // (f o x^2)'' = f''(x^2) 4x^2 + f'(x^2) 2, checked numerically with f=sin
    PiecewiseFn f = parse("sin(x)");
    PiecewiseFn phi = parse("x^2");
    PiecewiseFn d2 = compose_derivative(f, phi, 2);
    for (double x : {-1.3, 0.2, 0.9}) {
        double want = -std::sin(x * x) * 4 * x * x + std::cos(x * x) * 2;
        CHECK(d2.evaluate(x) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("compose_derivative matches direct differentiation: exp(x^3), n=3 at 1") {
    PiecewiseFn f = parse("exp(x)");
    PiecewiseFn phi = parse("x^3");
    PiecewiseFn got = compose_derivative(f, phi, 3);
    PiecewiseFn oracle = parse("exp(x^3)").derivative(3);
    double g = got.evaluate(1.0), o = oracle.evaluate(1.0);
    CHECK(std::fabs(g - o) <= 1e-9 * std::max(1.0, std::fabs(o)));
}

TEST_CASE("compose_derivative exact on polynomials: f=x^2, phi=x^2+1, n=4") {
    PiecewiseFn f = parse("x^2");
    PiecewiseFn phi = parse("x^2+1");
    PiecewiseFn got = compose_derivative(f, phi, 4);
    auto p = to_polynomial(got.single_expr());
    REQUIRE(p.has_value());
    CHECK(p->degree() == 0);
    CHECK(p->coeff(0) == 24);
}

TEST_CASE("compose_derivative n=0 returns the composition") {
    PiecewiseFn got = compose_derivative(parse("exp(x)"), parse("x^2"), 0);
    CHECK(struct_equal(got.single_expr(), parse_expr("exp(x^2)")));
}

TEST_CASE("random polynomial pairs: compose_derivative equals the symbolic oracle exactly") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        RatPoly fp = random_poly(rng, 5);
        RatPoly gp = random_poly(rng, 5);
        PiecewiseFn f = PiecewiseFn::single(fp.to_expr());
        PiecewiseFn phi = PiecewiseFn::single(gp.to_expr());
        for (int n = 0; n <= 6; ++n) {
            auto got = to_polynomial(compose_derivative(f, phi, n).single_expr());
            Expr comp = fp.to_expr().substitute(gp.to_expr());
            PiecewiseFn direct = PiecewiseFn::single(comp).derivative(n);
            auto want = to_polynomial(direct.single_expr());
            REQUIRE(got.has_value());
            REQUIRE(want.has_value());
            CHECK(*got == *want);
        }
    }
}

TEST_CASE("leibniz: (x*x)'' = 2 and (sin*cos)' = cos^2 - sin^2") {
    PiecewiseFn d = leibniz_derivative(parse("x"), parse("x"), 2);
    auto p = to_polynomial(d.single_expr());
    REQUIRE(p.has_value());
    CHECK(p->degree() == 0);
    CHECK(p->coeff(0) == 2);

    PiecewiseFn q = leibniz_derivative(parse("sin(x)"), parse("cos(x)"), 1);
    for (double x : {-0.4, 0.0, 1.1}) {
        double want = std::cos(x) * std::cos(x) - std::sin(x) * std::sin(x);
        CHECK(q.evaluate(x) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("leibniz equals direct differentiation exactly after normalization") {
    // (x^2 exp(x))''' via leibniz vs direct, compared pointwise to rational-ish accuracy
    PiecewiseFn l = leibniz_derivative(parse("x^2"), parse("exp(x)"), 3);
    PiecewiseFn d = parse("x^2*exp(x)").derivative(3);
    for (double x : {-2.0, -0.5, 0.0, 1.5}) {
        CHECK(l.evaluate(x) == doctest::Approx(d.evaluate(x)).epsilon(1e-12));
    }
}

TEST_CASE("pointwise compose fold agrees with symbolic composition") {
    PiecewiseRealFunction f(parse("exp(x)"), 6);
    PiecewiseRealFunction phi(parse("x^3"), 6);
    ComposedRealFunction h(f, phi);
    PiecewiseFn direct = parse("exp(x^3)");
    for (int n = 0; n <= 5; ++n) {
        PiecewiseFn dn = direct.derivative(n);
        for (double x : {-1.2, 0.3, 1.1}) {
            Bound got = h.deriv_bound(n, LogScalar::from_double(x));
            REQUIRE(got.ok());
            REQUIRE(got.is_point());
            double want = dn.evaluate(x);
            CHECK(got.lo.value() == doctest::Approx(want).epsilon(1e-9));
        }
    }
}

TEST_CASE("piecewise outer function rejected by the symbolic path") {
    PiecewiseFn f = parse("piecewise((-inf,0]: -x; (0,inf): x)");
    CHECK_THROWS_AS(compose_derivative(f, parse("x^2"), 1), PreconditionError);
}
