#pragma once

#include "schwartz/expr.hpp"
#include "schwartz/rational.hpp"

#include <optional>
#include <vector>

namespace schwartz {

// Dense univariate polynomial with exact rational coefficients.
// coeffs()[i] multiplies x^i; the zero polynomial has no coefficients.
class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<Rational> coeffs);
    static RatPoly constant(Rational c);
    static RatPoly x();

    const std::vector<Rational>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const Rational& leading() const { return c_.back(); }
    Rational coeff(int i) const;

    RatPoly operator+(const RatPoly& o) const;
    RatPoly operator-(const RatPoly& o) const;
    RatPoly operator*(const RatPoly& o) const;
    RatPoly operator-() const;
    RatPoly scaled(const Rational& s) const;
    RatPoly pow(unsigned k) const;
    RatPoly derivative() const;

    Rational eval(const Rational& x) const;
    double eval_double(double x) const;

    // Exact division; nullopt when the remainder is nonzero.
    std::optional<RatPoly> divide_exact(const RatPoly& d) const;
    // Euclidean division: returns {quotient, remainder}.
    std::pair<RatPoly, RatPoly> div_rem(const RatPoly& d) const;

    RatPoly monic() const;

    Expr to_expr() const;

    bool operator==(const RatPoly& o) const { return c_ == o.c_; }

private:
    void normalize();
    std::vector<Rational> c_;
};

RatPoly poly_gcd(RatPoly a, RatPoly b);

// Yun square-free decomposition: p = prod f_i^i (up to a constant), returned
// as (f_i, i) with nonconstant f_i only.
std::vector<std::pair<RatPoly, int>> square_free_decomposition(const RatPoly& p);

struct PolyRoot {
    double location;                   // best double approximation
    std::optional<Rational> exact;     // set when the root is rational
    int multiplicity;
};

// All real roots with multiplicities, ascending. Exact isolation via Sturm
// sequences on each square-free factor; intervals refined below 2^-70.
std::vector<PolyRoot> real_roots(const RatPoly& p);

// Recognize an Expr as a polynomial with exact rational coefficients.
// Returns nullopt for anything transcendental.
std::optional<RatPoly> to_polynomial(const Expr& e);

// q(x) * exp(p(x)) with rational-coefficient q, p. Pure polynomials match
// with p = 0. Closed under differentiation, which keeps derivative tables of
// the analytic corpus (exp of polynomials, bridges, products of both)
// compact at every order.
struct PolyExpForm {
    RatPoly q;
    RatPoly p;

    PolyExpForm derivative() const { return {q.derivative() + q * p.derivative(), p}; }
    Expr to_expr() const;
};

std::optional<PolyExpForm> match_poly_exp(const Expr& e);

// Sum-of-forms algebra: a list of q_i(x) e^{p_i(x)} terms with pairwise
// distinct p_i. Closed under +, -, *, and differentiation; the asymptotic
// class of the whole expression on either tail is decided by the dominant
// term. Returns nullopt when the expression leaves the class (sin, log,
// sqrt, quotients, transcendental constants).
std::optional<std::vector<PolyExpForm>> growth_forms(const Expr& e);

// Exact one-tail classification of a growth-form expression.
struct TailGrowth {
    enum class Kind {
        Zero,       // identically zero
        Constant,   // finite nonzero limit
        PolyGrowth, // |f| -> inf at polynomial rate (degree >= 1)
        ExpGrowth,  // |f| -> inf super-polynomially
        ExpDecay,   // f -> 0 super-polynomially fast
        Unknown,    // not in the class
    };
    Kind kind = Kind::Unknown;
    int value_sign = 0;  // sign of f far out on this tail (0 for Zero/Unknown)
    int poly_degree = 0; // for PolyGrowth
    double limit = 0;    // for Constant

    bool abs_to_infinity() const {
        return kind == Kind::PolyGrowth || kind == Kind::ExpGrowth;
    }
};

// side: -1 for x -> -inf, +1 for x -> +inf.
TailGrowth classify_tail_growth(const Expr& e, int side);

// Derivative that avoids tree swell: exact coefficient arithmetic on the
// polynomial and poly*exp(poly) subclasses, the generic symbolic rule
// elsewhere.
Expr derivative_compact(const Expr& e);

} // namespace schwartz
