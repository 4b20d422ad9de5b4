#pragma once

#include "schwartz/piecewise.hpp"

#include <string>

namespace schwartz {

// Grammar:
//   fn      := expr | "piecewise(" piece (";" piece)* (";" "blend:" INT)? ")"
//   piece   := interval ":" expr
//   interval:= ("("|"[") bound "," bound (")"|"]")
//   bound   := RATIONAL | "-inf" | "inf"
//   expr    := sums/products/quotients with integer "^" powers, unary minus,
//              calls exp|log|sin|cos|sqrt, variable x, constants e and pi,
//              rationals like 3, -2/5, 1.25
// Whitespace-insensitive. Throws ParseError with a byte offset.
PiecewiseFn parse(const std::string& text);

// Convenience for building corpus entries: parse a bare expression.
Expr parse_expr(const std::string& text);

} // namespace schwartz
