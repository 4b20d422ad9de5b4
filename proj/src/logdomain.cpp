#include "schwartz/logdomain.hpp"

#include <algorithm>
#include <array>

namespace schwartz {

namespace {

Bound propagate(const Bound& a, const Bound& b) {
    // DomainError dominates Indeterminate.
    if (a.status == EvalStatus::DomainError || b.status == EvalStatus::DomainError)
        return Bound::domain_error();
    return Bound::indeterminate();
}

} // namespace

Bound b_neg(const Bound& a) {
    if (!a.ok()) return a;
    return Bound::of(ls_neg(a.hi), ls_neg(a.lo));
}

Bound b_abs(const Bound& a) {
    if (!a.ok()) return a;
    if (a.contains_zero()) return Bound::of(LogScalar::zero(), mag_hi(a));
    return Bound::of(mag_lo(a), mag_hi(a));
}

Bound b_add(const Bound& a, const Bound& b) {
    if (!a.ok() || !b.ok()) return propagate(a, b);
    return Bound::of(ls_add(a.lo, b.lo), ls_add(a.hi, b.hi));
}

Bound b_sub(const Bound& a, const Bound& b) { return b_add(a, b_neg(b)); }

Bound b_mul(const Bound& a, const Bound& b) {
    if (!a.ok() || !b.ok()) return propagate(a, b);
    std::array<LogScalar, 4> p = {ls_mul(a.lo, b.lo), ls_mul(a.lo, b.hi), ls_mul(a.hi, b.lo),
                                  ls_mul(a.hi, b.hi)};
    for (const auto& v : p)
        if (!v.valid()) return Bound::indeterminate();
    LogScalar lo = p[0], hi = p[0];
    for (int i = 1; i < 4; ++i) {
        lo = ls_min(lo, p[i]);
        hi = ls_max(hi, p[i]);
    }
    return Bound::of(lo, hi);
}

Bound b_div(const Bound& a, const Bound& b) {
    if (!a.ok() || !b.ok()) return propagate(a, b);
    if (b.is_point() && b.lo.is_zero()) return Bound::domain_error();
    if (b.contains_zero()) return Bound::indeterminate();
    Bound inv = Bound::of(ls_inv(b.hi), ls_inv(b.lo));
    return b_mul(a, inv);
}

Bound b_powi(const Bound& a, long k) {
    if (!a.ok()) return a;
    if (k == 0) return Bound::from_double(1.0);
    if (k < 0) return b_div(Bound::from_double(1.0), b_powi(a, -k));
    if (k % 2 == 1) return Bound::of(ls_powi(a.lo, k), ls_powi(a.hi, k));
    if (a.contains_zero()) return Bound::of(LogScalar::zero(), ls_powi(mag_hi(a), k));
    return Bound::of(ls_powi(mag_lo(a), k), ls_powi(mag_hi(a), k));
}

Bound b_exp(const Bound& a) {
    if (!a.ok()) return a;
    auto ep = [](const LogScalar& v) -> LogScalar {
        // log|exp(v)| is the value of v itself.
        double t = v.value();
        if (t == kNegInf) return {1, kNegInf}; // positive infinitesimal
        return {1, t};
    };
    return Bound::of(ep(a.lo), ep(a.hi));
}

Bound b_log(const Bound& a) {
    if (!a.ok()) return a;
    if (a.is_point()) {
        if (a.lo.sign < 0) return Bound::domain_error();
        if (a.lo.is_zero()) return Bound::domain_error();
        return Bound::point(LogScalar::from_double(a.lo.lg));
    }
    if (a.lo.sign <= 0) return Bound::indeterminate();
    return Bound::of(LogScalar::from_double(a.lo.lg), LogScalar::from_double(a.hi.lg));
}

Bound b_sqrt(const Bound& a) {
    if (!a.ok()) return a;
    if (a.is_point()) {
        if (a.lo.sign < 0) return Bound::domain_error();
        if (a.lo.is_zero()) return Bound::point(LogScalar::zero());
        return Bound::point(LogScalar{1, a.lo.lg * 0.5});
    }
    if (a.lo.sign < 0) return Bound::indeterminate();
    auto rt = [](const LogScalar& v) -> LogScalar {
        if (v.sign == 0) return LogScalar::zero();
        return {1, v.lg * 0.5};
    };
    return Bound::of(rt(a.lo), rt(a.hi));
}

namespace {

Bound trig(const Bound& a, double (*fn)(double)) {
    static const Bound unit = Bound::of(LogScalar::from_double(-1.0), LogScalar::from_double(1.0));
    if (!a.ok()) return a;
    if (a.is_point()) {
        double t = a.lo.value();
        if (std::isfinite(t)) return Bound::from_double(fn(t));
        return unit; // phase lost past double range
    }
    return unit;
}

} // namespace

Bound b_sin(const Bound& a) { return trig(a, static_cast<double (*)(double)>(std::sin)); }
Bound b_cos(const Bound& a) { return trig(a, static_cast<double (*)(double)>(std::cos)); }

double log1p_sq(const LogScalar& x) {
    // log(1 + x^2) = logsumexp(0, 2*log|x|)
    if (x.sign == 0 || x.lg == kNegInf) return 0.0; // log(1)
    double two_lg = 2.0 * x.lg;
    if (two_lg == kPosInf) return kPosInf;
    if (two_lg > 0) return two_lg + std::log1p(std::exp(-two_lg));
    return std::log1p(std::exp(two_lg));
}

} // namespace schwartz
