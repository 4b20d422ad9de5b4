#include "schwartz/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace schwartz {

Rational rational_from_decimal(const std::string& text) {
    auto dot = text.find('.');
    if (dot == std::string::npos) {
        return Rational(BigInt(text));
    }
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t frac_len = text.size() - dot - 1;
    if (digits.empty()) throw std::invalid_argument("empty numeric literal");
    BigInt num(digits);
    BigInt den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational rational_from_double(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite double has no rational form");
    Rational q;
    mpq_set_d(q.get_mpq_t(), v);
    return q;
}

double to_double(const Rational& q) { return mpq_get_d(q.get_mpq_t()); }

BigInt factorial(unsigned long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::optional<Rational> pow_rational(const Rational& q, long k) {
    if (k == 0) return Rational(1);
    if (q == 0 && k < 0) return std::nullopt;
    Rational r = k > 0 ? q : Rational(1) / q;
    unsigned long e = static_cast<unsigned long>(k > 0 ? k : -k);
    mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(r.get_mpq_t()), e);
    mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(r.get_mpq_t()), e);
    r.canonicalize();
    return r;
}

} // namespace schwartz
