#pragma once

#include "schwartz/logdomain.hpp"
#include "schwartz/rational.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

namespace schwartz {

enum class ExprOp : std::uint8_t {
    Number, // exact rational constant
    ConstE,
    ConstPi,
    Var, // the single real variable x
    Add,
    Sub,
    Neg,
    Mul,
    Div,
    Pow, // integer exponent
    Exp,
    Log,
    Sin,
    Cos,
    Sqrt,
};

struct ExprNode;

// Immutable expression tree handle with value semantics. Construction applies
// light constant folding (exact rational arithmetic), so e.g. 2/5 built from
// Div(2,5) is stored as the rational 2/5.
class Expr {
public:
    Expr() = default; // empty handle; only default-constructed placeholders

    static Expr number(Rational q);
    static Expr integer(long v) { return number(Rational(v)); }
    static Expr var();
    static Expr e();
    static Expr pi();

    static Expr add(Expr a, Expr b);
    static Expr sub(Expr a, Expr b);
    static Expr neg(Expr a);
    static Expr mul(Expr a, Expr b);
    static Expr div(Expr a, Expr b);
    static Expr powi(Expr a, long k);
    static Expr exp(Expr a);
    static Expr log(Expr a);
    static Expr sin(Expr a);
    static Expr cos(Expr a);
    static Expr sqrt(Expr a);

    bool empty() const { return !node_; }
    const ExprNode& node() const { return *node_; }

    ExprOp op() const;
    bool is_number() const;
    const Rational& number_value() const; // requires is_number()

    Expr derivative() const;
    Expr derivative(int order) const;

    // Replace the variable by `g` (symbolic composition this(g)).
    Expr substitute(const Expr& g) const;

    std::string to_string() const;

    // Exact path: defined only when every node evaluates to a rational
    // (no transcendental constants or calls on non-trivial arguments).
    std::optional<Rational> eval_rational(const Rational& x) const;

    // Plain double evaluation; throws EvalError on domain violations.
    // Intended for well-scaled arguments (bump supports, blend windows).
    double eval_double(double x) const;

    // Overflow-safe evaluation; never throws. Domain problems are reported in
    // the Bound status, the offending subexpression (if any) in *err_at.
    Bound eval_bound(const LogScalar& x, const ExprNode** err_at = nullptr) const;

    friend bool struct_equal(const Expr& a, const Expr& b);

private:
    explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}
    std::shared_ptr<const ExprNode> node_;
};

struct ExprNode {
    ExprOp op;
    Rational number; // Number
    long exponent = 0; // Pow
    Expr a, b;

    std::string to_string() const;
};

bool struct_equal(const Expr& a, const Expr& b);

inline Expr operator+(const Expr& a, const Expr& b) { return Expr::add(a, b); }
inline Expr operator-(const Expr& a, const Expr& b) { return Expr::sub(a, b); }
inline Expr operator-(const Expr& a) { return Expr::neg(a); }
inline Expr operator*(const Expr& a, const Expr& b) { return Expr::mul(a, b); }
inline Expr operator/(const Expr& a, const Expr& b) { return Expr::div(a, b); }

} // namespace schwartz
