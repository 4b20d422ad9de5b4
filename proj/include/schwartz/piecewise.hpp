#pragma once

#include "schwartz/expr.hpp"
#include "schwartz/verdict.hpp"

#include <optional>
#include <string>
#include <vector>

namespace schwartz {

// Interval with exact rational or infinite endpoints.
struct Interval {
    std::optional<Rational> lo; // nullopt = -inf
    std::optional<Rational> hi; // nullopt = +inf
    bool lo_closed = false;
    bool hi_closed = false;

    bool contains(const Rational& x) const;
    std::string to_string() const;
};

struct Piece {
    Interval interval;
    Expr expr;
};

// A piecewise-smooth function whose pieces partition the real line. Interior
// gaps in user input are filled by Hermite bridge polynomials matching
// one-sided derivatives up to the blend order on both sides.
class PiecewiseFn {
public:
    PiecewiseFn() = default;

    static PiecewiseFn single(Expr e);
    // Validates ordering/overlap/coverage; fills gaps when blend_order is set.
    static PiecewiseFn from_pieces(std::vector<Piece> pieces, std::optional<int> blend_order);

    const std::vector<Piece>& pieces() const { return pieces_; }
    bool is_single() const { return pieces_.size() == 1; }
    const Expr& single_expr() const { return pieces_.front().expr; }

    // Interior breakpoints (left endpoints of every piece after the first).
    std::vector<Rational> breakpoints() const;

    PiecewiseFn derivative(int order = 1) const;

    // Index of the piece owning x; ties at shared breakpoints go to the left
    // piece.
    std::size_t piece_index(double x) const;
    std::size_t piece_index(const LogScalar& x) const;

    double evaluate(double x) const; // throws EvalError
    std::optional<Rational> evaluate_exact(const Rational& x) const;
    Bound evaluate_bound(const LogScalar& x, const ExprNode** err_at = nullptr) const;

    std::string to_string() const;

private:
    std::vector<Piece> pieces_;

    struct Provenance {
        std::vector<Piece> user_pieces;
        int blend_order = 0;
    };
    std::optional<Provenance> provenance_;
};

// Verifies agreement of the one-sided derivatives up to `order` at every
// interior breakpoint (relative tolerance where magnitudes exceed 1).
Verdict smoothness_check(const PiecewiseFn& f, int order, double tol);

} // namespace schwartz
