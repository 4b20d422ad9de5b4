#pragma once

#include "schwartz/rational.hpp"

#include <cmath>
#include <cstdint>
#include <limits>

namespace schwartz {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

// sin/cos of any finite double argument is a deterministic, exactly-reduced
// sample (libm does full-precision argument reduction). Once the argument
// overflows double range the phase is genuinely gone and trig evaluation
// widens to the interval [-1, 1].

// A real number stored as sign * exp(lg).
//
// Conventions:
//   sign == 0, lg == -inf     exact zero
//   sign != 0, lg == -inf     underflowed infinitesimal of known sign
//   sign != 0, lg == +inf     magnitude beyond double range (saturated)
//   lg == NaN                 invalid (e.g. difference of two saturated values)
//
// This keeps quantities like (1+x^2)^20 at x = 1e4, or exp(x^2) at x = 1e2,
// exactly representable in growth comparisons.
struct LogScalar {
    int sign = 0;
    double lg = kNegInf;

    static LogScalar zero() { return {0, kNegInf}; }

    static LogScalar invalid() { return {0, std::numeric_limits<double>::quiet_NaN()}; }

    static LogScalar from_double(double v) {
        if (std::isnan(v)) return invalid();
        if (v == 0.0) return zero();
        int s = v > 0 ? 1 : -1;
        return {s, std::log(std::fabs(v))};
    }

    static LogScalar from_log(int sign, double lg) {
        if (sign == 0) return zero();
        return {sign, lg};
    }

    static LogScalar from_rational(const Rational& q) {
        int s = sgn(q);
        if (s == 0) return zero();
        // log|q| via base-2 exponent extraction; exact enough for all uses.
        signed long int e_num = 0, e_den = 0;
        double d_num = mpz_get_d_2exp(&e_num, mpq_numref(q.get_mpq_t()));
        double d_den = mpz_get_d_2exp(&e_den, mpq_denref(q.get_mpq_t()));
        double lg = std::log(std::fabs(d_num)) - std::log(std::fabs(d_den)) +
                    (static_cast<double>(e_num) - static_cast<double>(e_den)) * std::log(2.0);
        return {s, lg};
    }

    bool valid() const { return !std::isnan(lg); }
    bool is_zero() const { return sign == 0; }
    bool saturated() const { return lg == kPosInf; }

    // Closest double; saturates to +-HUGE_VAL, underflows to signed zero.
    double value() const {
        if (sign == 0) return 0.0;
        double m = std::exp(lg);
        return sign > 0 ? m : -m;
    }
};

// Real-number order. Callers must check valid() first.
inline bool ls_less(const LogScalar& a, const LogScalar& b) {
    if (a.sign != b.sign) return a.sign < b.sign;
    if (a.sign == 0) return false;
    if (a.sign > 0) return a.lg < b.lg;
    return a.lg > b.lg;
}

inline bool ls_equal(const LogScalar& a, const LogScalar& b) {
    if (a.sign != b.sign) return false;
    if (a.sign == 0) return true;
    return a.lg == b.lg;
}

inline LogScalar ls_min(const LogScalar& a, const LogScalar& b) { return ls_less(b, a) ? b : a; }
inline LogScalar ls_max(const LogScalar& a, const LogScalar& b) { return ls_less(a, b) ? b : a; }

inline LogScalar ls_neg(const LogScalar& a) { return {-a.sign, a.lg}; }

inline LogScalar ls_abs(const LogScalar& a) { return {a.sign == 0 ? 0 : 1, a.lg}; }

inline LogScalar ls_mul(const LogScalar& a, const LogScalar& b) {
    if (!a.valid() || !b.valid()) return LogScalar::invalid();
    if (a.sign == 0 || b.sign == 0) return LogScalar::zero();
    return {a.sign * b.sign, a.lg + b.lg};
}

inline LogScalar ls_inv(const LogScalar& a) {
    if (!a.valid() || a.sign == 0) return LogScalar::invalid();
    return {a.sign, -a.lg};
}

// Signed log-sum-exp. Exact cancellation of equal magnitudes yields zero;
// the difference of two saturated magnitudes is invalid.
inline LogScalar ls_add(const LogScalar& a, const LogScalar& b) {
    if (!a.valid() || !b.valid()) return LogScalar::invalid();
    if (a.sign == 0) return b;
    if (b.sign == 0) return a;
    if (a.sign == b.sign) {
        double hi = std::max(a.lg, b.lg), lo = std::min(a.lg, b.lg);
        if (hi == kPosInf) return {a.sign, kPosInf};
        if (lo == kNegInf) return {a.sign, hi};
        return {a.sign, hi + std::log1p(std::exp(lo - hi))};
    }
    if (a.lg == b.lg) {
        if (a.lg == kPosInf) return LogScalar::invalid();
        return LogScalar::zero();
    }
    const LogScalar& big = a.lg > b.lg ? a : b;
    const LogScalar& small = a.lg > b.lg ? b : a;
    if (big.lg == kPosInf) return big;
    if (small.lg == kNegInf) return big;
    double d = small.lg - big.lg; // < 0
    return {big.sign, big.lg + std::log1p(-std::exp(d))};
}

// a^k for integer k >= 0.
inline LogScalar ls_powi(const LogScalar& a, long k) {
    if (!a.valid()) return LogScalar::invalid();
    if (k == 0) return LogScalar::from_double(1.0);
    if (a.sign == 0) return LogScalar::zero();
    int s = (k % 2 == 0) ? 1 : a.sign;
    return {s, a.lg * static_cast<double>(k)};
}

enum class EvalStatus : std::uint8_t {
    Ok,
    DomainError,   // log(<=0), sqrt(<0), division by exact zero
    Indeterminate, // saturation clash or interval too wide to say anything
};

// Closed real interval in log-scale endpoints. Point values have lo == hi;
// genuine intervals arise only when a sin/cos loses its phase (argument
// beyond kPhaseMax) and propagate outward from there.
struct Bound {
    LogScalar lo, hi;
    EvalStatus status = EvalStatus::Ok;

    static Bound point(LogScalar v) {
        if (!v.valid()) return indeterminate();
        return {v, v, EvalStatus::Ok};
    }
    static Bound of(LogScalar a, LogScalar b) {
        if (!a.valid() || !b.valid()) return indeterminate();
        if (ls_less(b, a)) std::swap(a, b);
        return {a, b, EvalStatus::Ok};
    }
    static Bound from_double(double v) { return point(LogScalar::from_double(v)); }
    static Bound domain_error() { return {LogScalar::invalid(), LogScalar::invalid(), EvalStatus::DomainError}; }
    static Bound indeterminate() { return {LogScalar::invalid(), LogScalar::invalid(), EvalStatus::Indeterminate}; }

    bool ok() const { return status == EvalStatus::Ok; }
    bool is_point() const { return ok() && ls_equal(lo, hi); }
    bool contains_zero() const { return ok() && lo.sign <= 0 && hi.sign >= 0; }
};

// Greatest certain lower bound of |value| over the interval.
inline LogScalar mag_lo(const Bound& b) {
    if (!b.ok()) return LogScalar::invalid();
    if (b.contains_zero()) return LogScalar::zero();
    return b.lo.sign > 0 ? b.lo : ls_abs(b.hi);
}

// Least certain upper bound of |value| over the interval.
inline LogScalar mag_hi(const Bound& b) {
    if (!b.ok()) return LogScalar::invalid();
    return ls_max(ls_abs(b.lo), ls_abs(b.hi));
}

Bound b_neg(const Bound& a);
Bound b_abs(const Bound& a);
Bound b_add(const Bound& a, const Bound& b);
Bound b_sub(const Bound& a, const Bound& b);
Bound b_mul(const Bound& a, const Bound& b);
Bound b_div(const Bound& a, const Bound& b);
Bound b_powi(const Bound& a, long k);
Bound b_exp(const Bound& a);
Bound b_log(const Bound& a);
Bound b_sqrt(const Bound& a);
Bound b_sin(const Bound& a);
Bound b_cos(const Bound& a);

// The value log(1 + x^2) for x given in log scale. Always finite for finite
// log|x| (it is about 2*log|x| in the far field), so a plain double suffices.
double log1p_sq(const LogScalar& x);

} // namespace schwartz
