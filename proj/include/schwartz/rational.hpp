#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace schwartz {

using BigInt = mpz_class;
using Rational = mpq_class;

// "1.25" -> 5/4. Accepts plain integers too. No sign handling here.
Rational rational_from_decimal(const std::string& text);

// Exact binary expansion of a finite double.
Rational rational_from_double(double v);

double to_double(const Rational& q);

BigInt factorial(unsigned long n);
BigInt binomial(unsigned long n, unsigned long k);

// Canonical form: "p" or "p/q" with q > 1.
std::string to_string(const Rational& q);

// q^k for integer k (k < 0 requires q != 0).
std::optional<Rational> pow_rational(const Rational& q, long k);

} // namespace schwartz
