#include "schwartz/polynomial.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace schwartz {

RatPoly::RatPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { normalize(); }

RatPoly RatPoly::constant(Rational c) {
    if (c == 0) return RatPoly();
    return RatPoly(std::vector<Rational>{std::move(c)});
}

RatPoly RatPoly::x() { return RatPoly({Rational(0), Rational(1)}); }

void RatPoly::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational RatPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return Rational(0);
    return c_[static_cast<std::size_t>(i)];
}

RatPoly RatPoly::operator+(const RatPoly& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return RatPoly(std::move(r));
}

RatPoly RatPoly::operator-(const RatPoly& o) const { return *this + (-o); }

RatPoly RatPoly::operator-() const {
    std::vector<Rational> r(c_);
    for (auto& q : r) q = -q;
    return RatPoly(std::move(r));
}

RatPoly RatPoly::operator*(const RatPoly& o) const {
    if (is_zero() || o.is_zero()) return RatPoly();
    std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return RatPoly(std::move(r));
}

RatPoly RatPoly::scaled(const Rational& s) const {
    std::vector<Rational> r(c_);
    for (auto& q : r) q *= s;
    return RatPoly(std::move(r));
}

RatPoly RatPoly::pow(unsigned k) const {
    RatPoly r = RatPoly::constant(Rational(1));
    RatPoly base = *this;
    while (k) {
        if (k & 1u) r = r * base;
        base = base * base;
        k >>= 1u;
    }
    return r;
}

RatPoly RatPoly::derivative() const {
    if (c_.size() <= 1) return RatPoly();
    std::vector<Rational> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return RatPoly(std::move(r));
}

Rational RatPoly::eval(const Rational& x) const {
    Rational r(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
}

double RatPoly::eval_double(double x) const {
    double r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + to_double(*it);
    return r;
}

std::pair<RatPoly, RatPoly> RatPoly::div_rem(const RatPoly& d) const {
    assert(!d.is_zero());
    RatPoly rem = *this;
    std::vector<Rational> q(std::max<std::size_t>(c_.size(), 1), Rational(0));
    while (!rem.is_zero() && rem.degree() >= d.degree()) {
        int shift = rem.degree() - d.degree();
        Rational f = rem.leading() / d.leading();
        q[static_cast<std::size_t>(shift)] = f;
        std::vector<Rational> sub(static_cast<std::size_t>(shift), Rational(0));
        for (const auto& dc : d.coeffs()) sub.push_back(dc * f);
        rem = rem - RatPoly(std::move(sub));
    }
    return {RatPoly(std::move(q)), rem};
}

std::optional<RatPoly> RatPoly::divide_exact(const RatPoly& d) const {
    auto [q, r] = div_rem(d);
    if (!r.is_zero()) return std::nullopt;
    return q;
}

RatPoly RatPoly::monic() const {
    if (is_zero()) return *this;
    return scaled(Rational(1) / leading());
}

Expr RatPoly::to_expr() const {
    if (is_zero()) return Expr::integer(0);
    // Horner form keeps the printed expression compact and round-trippable.
    Expr acc = Expr::number(c_.back());
    for (int i = degree() - 1; i >= 0; --i) {
        acc = Expr::mul(acc, Expr::var());
        if (coeff(i) != 0) acc = Expr::add(acc, Expr::number(coeff(i)));
    }
    return acc;
}

RatPoly poly_gcd(RatPoly a, RatPoly b) {
    while (!b.is_zero()) {
        auto [q, r] = a.div_rem(b);
        (void)q;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.monic();
}

std::vector<std::pair<RatPoly, int>> square_free_decomposition(const RatPoly& p) {
    std::vector<std::pair<RatPoly, int>> out;
    if (p.degree() < 1) return out;
    // Yun's algorithm.
    RatPoly a = p.monic();
    RatPoly da = a.derivative();
    RatPoly g = poly_gcd(a, da);
    RatPoly w = *a.divide_exact(g);
    RatPoly y = *da.divide_exact(g);
    int i = 1;
    while (w.degree() > 0) {
        RatPoly z = y - w.derivative();
        RatPoly f = poly_gcd(w, z);
        if (f.degree() > 0) out.emplace_back(f, i);
        w = *w.divide_exact(f);
        y = *z.divide_exact(f);
        ++i;
    }
    return out;
}

namespace {

int sign_of(const Rational& q) { return sgn(q); }

// Sturm chain of a square-free polynomial.
std::vector<RatPoly> sturm_chain(const RatPoly& p) {
    std::vector<RatPoly> chain;
    chain.push_back(p);
    chain.push_back(p.derivative());
    while (!chain.back().is_zero()) {
        const RatPoly& s2 = chain[chain.size() - 2];
        const RatPoly& s1 = chain.back();
        auto [q, r] = s2.div_rem(s1);
        (void)q;
        chain.push_back(-r);
    }
    chain.pop_back();
    return chain;
}

int sign_variations_at(const std::vector<RatPoly>& chain, const Rational& x) {
    int var = 0, last = 0;
    for (const auto& p : chain) {
        int s = sign_of(p.eval(x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++var;
        last = s;
    }
    return var;
}

// Number of roots in (a, b].
int roots_in(const std::vector<RatPoly>& chain, const Rational& a, const Rational& b) {
    return sign_variations_at(chain, a) - sign_variations_at(chain, b);
}

// Cauchy bound: all real roots lie in [-B, B].
Rational root_bound(const RatPoly& p) {
    Rational m(0);
    for (int i = 0; i < p.degree(); ++i) {
        Rational r = abs(p.coeff(i) / p.leading());
        if (r > m) m = r;
    }
    return m + 1;
}

void isolate_rec(const std::vector<RatPoly>& chain, const RatPoly& p, Rational lo, Rational hi,
                 int count, std::vector<std::pair<Rational, Rational>>& out) {
    if (count == 0) return;
    if (count == 1) {
        out.emplace_back(lo, hi);
        return;
    }
    Rational mid = (lo + hi) / 2;
    // Nudge away from a root at the midpoint so intervals stay half-open.
    while (p.eval(mid) == 0) mid = (lo + mid) / 2;
    int left = roots_in(chain, lo, mid);
    isolate_rec(chain, p, lo, mid, left, out);
    isolate_rec(chain, p, mid, hi, count - left, out);
}

} // namespace

std::vector<PolyRoot> real_roots(const RatPoly& p) {
    std::vector<PolyRoot> roots;
    if (p.degree() < 1) return roots;
    for (const auto& [factor, mult] : square_free_decomposition(p)) {
        if (factor.degree() == 1) {
            Rational r = -factor.coeff(0) / factor.coeff(1);
            roots.push_back({to_double(r), r, mult});
            continue;
        }
        auto chain = sturm_chain(factor);
        Rational b = root_bound(factor);
        std::vector<std::pair<Rational, Rational>> intervals;
        isolate_rec(chain, factor, -b, b, roots_in(chain, -b, b), intervals);
        for (auto& [lo, hi] : intervals) {
            // Bisect to double precision; the root lies in (lo, hi].
            for (int it = 0; it < 200 && to_double(hi - lo) > 0; ++it) {
                Rational mid = (lo + hi) / 2;
                Rational v = factor.eval(mid);
                if (v == 0) {
                    lo = hi = mid;
                    break;
                }
                if (sign_of(v) == sign_of(factor.eval(hi)))
                    hi = mid;
                else
                    lo = mid;
                if (hi - lo < Rational(1) / (BigInt(1) << 70)) break;
            }
            std::optional<Rational> exact;
            if (lo == hi) exact = lo;
            roots.push_back({to_double((lo + hi) / 2), exact, mult});
        }
    }
    std::sort(roots.begin(), roots.end(),
              [](const PolyRoot& a, const PolyRoot& b) { return a.location < b.location; });
    return roots;
}

std::optional<RatPoly> to_polynomial(const Expr& e) {
    const ExprNode& n = e.node();
    switch (n.op) {
    case ExprOp::Number:
        return RatPoly::constant(n.number);
    case ExprOp::Var:
        return RatPoly::x();
    case ExprOp::ConstE:
    case ExprOp::ConstPi:
        return std::nullopt; // transcendental constants stay out of the exact class
    case ExprOp::Add: {
        auto a = to_polynomial(n.a), b = to_polynomial(n.b);
        if (a && b) return *a + *b;
        return std::nullopt;
    }
    case ExprOp::Sub: {
        auto a = to_polynomial(n.a), b = to_polynomial(n.b);
        if (a && b) return *a - *b;
        return std::nullopt;
    }
    case ExprOp::Neg: {
        auto a = to_polynomial(n.a);
        if (a) return -*a;
        return std::nullopt;
    }
    case ExprOp::Mul: {
        auto a = to_polynomial(n.a), b = to_polynomial(n.b);
        if (a && b) return *a * *b;
        return std::nullopt;
    }
    case ExprOp::Div: {
        auto a = to_polynomial(n.a), b = to_polynomial(n.b);
        if (a && b && b->degree() == 0) return a->scaled(Rational(1) / b->coeff(0));
        return std::nullopt;
    }
    case ExprOp::Pow: {
        auto a = to_polynomial(n.a);
        if (!a) return std::nullopt;
        if (n.exponent >= 0) return a->pow(static_cast<unsigned>(n.exponent));
        if (a->degree() == 0 && a->coeff(0) != 0) {
            auto q = pow_rational(a->coeff(0), n.exponent);
            if (q) return RatPoly::constant(*q);
        }
        return std::nullopt;
    }
    default:
        return std::nullopt;
    }
}

Expr PolyExpForm::to_expr() const {
    if (p.is_zero()) return q.to_expr();
    Expr ex = Expr::exp(p.to_expr());
    if (q.degree() == 0 && q.coeff(0) == 1) return ex;
    return Expr::mul(q.to_expr(), ex);
}

std::optional<PolyExpForm> match_poly_exp(const Expr& e) {
    if (auto poly = to_polynomial(e)) return PolyExpForm{*poly, RatPoly()};
    const ExprNode& n = e.node();
    switch (n.op) {
    case ExprOp::Exp: {
        auto p = to_polynomial(n.a);
        if (p) return PolyExpForm{RatPoly::constant(Rational(1)), *p};
        return std::nullopt;
    }
    case ExprOp::Neg: {
        auto f = match_poly_exp(n.a);
        if (f) return PolyExpForm{-f->q, f->p};
        return std::nullopt;
    }
    case ExprOp::Mul: {
        auto a = match_poly_exp(n.a), b = match_poly_exp(n.b);
        if (a && b) return PolyExpForm{a->q * b->q, a->p + b->p};
        return std::nullopt;
    }
    case ExprOp::Div: {
        auto a = match_poly_exp(n.a);
        if (!a) return std::nullopt;
        // divide by rational constants or by exp(poly)
        if (auto c = to_polynomial(n.b); c && c->degree() == 0 && c->coeff(0) != 0)
            return PolyExpForm{a->q.scaled(Rational(1) / c->coeff(0)), a->p};
        if (n.b.node().op == ExprOp::Exp) {
            if (auto p = to_polynomial(n.b.node().a)) return PolyExpForm{a->q, a->p - *p};
        }
        return std::nullopt;
    }
    case ExprOp::Add:
    case ExprOp::Sub: {
        auto a = match_poly_exp(n.a), b = match_poly_exp(n.b);
        if (!a || !b) return std::nullopt;
        if (!(a->p == b->p)) return std::nullopt;
        return PolyExpForm{n.op == ExprOp::Add ? a->q + b->q : a->q - b->q, a->p};
    }
    case ExprOp::Pow: {
        if (n.exponent < 0) return std::nullopt;
        auto a = match_poly_exp(n.a);
        if (!a) return std::nullopt;
        RatPoly pk = a->p.scaled(Rational(n.exponent));
        return PolyExpForm{a->q.pow(static_cast<unsigned>(n.exponent)), pk};
    }
    default:
        return std::nullopt;
    }
}

Expr derivative_compact(const Expr& e) {
    if (auto p = to_polynomial(e)) return p->derivative().to_expr();
    if (auto f = match_poly_exp(e)) return f->derivative().to_expr();
    return e.derivative();
}

namespace {

using FormSum = std::vector<PolyExpForm>;

void add_term(FormSum& sum, PolyExpForm term) {
    if (term.q.is_zero()) return;
    for (auto& t : sum) {
        if (t.p == term.p) {
            t.q = t.q + term.q;
            return;
        }
    }
    sum.push_back(std::move(term));
}

FormSum combine(const FormSum& a, const FormSum& b, int sign_b) {
    FormSum out = a;
    for (const auto& t : b) add_term(out, {sign_b < 0 ? -t.q : t.q, t.p});
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const PolyExpForm& t) { return t.q.is_zero(); }),
              out.end());
    return out;
}

FormSum multiply(const FormSum& a, const FormSum& b) {
    FormSum out;
    for (const auto& ta : a)
        for (const auto& tb : b) add_term(out, {ta.q * tb.q, ta.p + tb.p});
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const PolyExpForm& t) { return t.q.is_zero(); }),
              out.end());
    return out;
}

// sign of a polynomial far out on one tail
int poly_tail_sign(const RatPoly& p, int side) {
    if (p.is_zero()) return 0;
    int s = sgn(p.leading());
    if (side < 0 && p.degree() % 2 == 1) s = -s;
    return s;
}

// does p(x) -> +inf / -inf / finite on the tail
int poly_tail_limit_sign(const RatPoly& p, int side) {
    if (p.degree() < 1) return 0;
    return poly_tail_sign(p, side);
}

// true when term a dominates term b in magnitude on the tail
bool dominates(const PolyExpForm& a, const PolyExpForm& b, int side) {
    RatPoly d = a.p - b.p;
    int lim = poly_tail_limit_sign(d, side);
    if (lim != 0) return lim > 0;
    return a.q.degree() > b.q.degree();
}

} // namespace

std::optional<std::vector<PolyExpForm>> growth_forms(const Expr& e) {
    if (auto poly = to_polynomial(e)) {
        FormSum s;
        add_term(s, {*poly, RatPoly()});
        return s;
    }
    const ExprNode& n = e.node();
    switch (n.op) {
    case ExprOp::Exp: {
        auto p = to_polynomial(n.a);
        if (!p) return std::nullopt;
        FormSum s;
        add_term(s, {RatPoly::constant(Rational(1)), *p});
        return s;
    }
    case ExprOp::Neg: {
        auto a = growth_forms(n.a);
        if (!a) return std::nullopt;
        for (auto& t : *a) t.q = -t.q;
        return a;
    }
    case ExprOp::Add:
    case ExprOp::Sub: {
        auto a = growth_forms(n.a), b = growth_forms(n.b);
        if (!a || !b) return std::nullopt;
        return combine(*a, *b, n.op == ExprOp::Add ? 1 : -1);
    }
    case ExprOp::Mul: {
        auto a = growth_forms(n.a), b = growth_forms(n.b);
        if (!a || !b) return std::nullopt;
        return multiply(*a, *b);
    }
    case ExprOp::Div: {
        auto a = growth_forms(n.a);
        if (!a) return std::nullopt;
        if (auto c = to_polynomial(n.b); c && c->degree() == 0 && c->coeff(0) != 0) {
            for (auto& t : *a) t.q = t.q.scaled(Rational(1) / c->coeff(0));
            return a;
        }
        if (n.b.node().op == ExprOp::Exp) {
            if (auto p = to_polynomial(n.b.node().a)) {
                for (auto& t : *a) t.p = t.p - *p;
                return a;
            }
        }
        return std::nullopt;
    }
    case ExprOp::Pow: {
        if (n.exponent < 0) return std::nullopt;
        auto a = growth_forms(n.a);
        if (!a) return std::nullopt;
        FormSum acc;
        add_term(acc, {RatPoly::constant(Rational(1)), RatPoly()});
        for (long i = 0; i < n.exponent; ++i) acc = multiply(acc, *a);
        return acc;
    }
    default:
        return std::nullopt;
    }
}

TailGrowth classify_tail_growth(const Expr& e, int side) {
    TailGrowth tg;
    auto forms = growth_forms(e);
    if (!forms) return tg;
    if (forms->empty()) {
        tg.kind = TailGrowth::Kind::Zero;
        return tg;
    }
    const PolyExpForm* dom = &(*forms)[0];
    for (const auto& t : *forms)
        if (dominates(t, *dom, side)) dom = &t;

    tg.value_sign = poly_tail_sign(dom->q, side);
    int p_lim = poly_tail_limit_sign(dom->p, side);
    if (p_lim > 0) {
        tg.kind = TailGrowth::Kind::ExpGrowth;
    } else if (p_lim < 0) {
        tg.kind = TailGrowth::Kind::ExpDecay;
    } else if (dom->q.degree() >= 1) {
        tg.kind = TailGrowth::Kind::PolyGrowth;
        tg.poly_degree = dom->q.degree();
    } else {
        tg.kind = TailGrowth::Kind::Constant;
        // every term that neither grows nor decays contributes to the limit
        double limit = 0;
        for (const auto& t : *forms) {
            if (poly_tail_limit_sign(t.p, side) != 0 || t.q.degree() != 0) continue;
            double scale = t.p.is_zero() ? 1.0 : std::exp(t.p.eval_double(0.0));
            limit += to_double(t.q.coeff(0)) * scale;
        }
        tg.limit = limit;
        tg.value_sign = limit > 0 ? 1 : limit < 0 ? -1 : 0;
        if (limit == 0) tg.kind = TailGrowth::Kind::ExpDecay; // constants cancelled
    }
    return tg;
}

} // namespace schwartz
