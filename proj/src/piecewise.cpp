#include "schwartz/piecewise.hpp"

#include "schwartz/errors.hpp"
#include "schwartz/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace schwartz {

bool Interval::contains(const Rational& x) const {
    if (lo) {
        if (x < *lo) return false;
        if (x == *lo && !lo_closed) return false;
    }
    if (hi) {
        if (x > *hi) return false;
        if (x == *hi && !hi_closed) return false;
    }
    return true;
}

std::string Interval::to_string() const {
    std::string s;
    s += lo_closed ? '[' : '(';
    s += lo ? schwartz::to_string(*lo) : std::string("-inf");
    s += ',';
    s += hi ? schwartz::to_string(*hi) : std::string("inf");
    s += hi_closed ? ']' : ')';
    return s;
}

PiecewiseFn PiecewiseFn::single(Expr e) {
    PiecewiseFn f;
    f.pieces_.push_back({Interval{}, std::move(e)});
    return f;
}

namespace {

// Hermite bridge on [a, b]: matches d^j of the neighbours at both endpoints
// for j = 0..order. Newton form with repeated nodes, coefficients converted
// to exact rationals so the bridge stays inside the expression grammar.
Expr build_bridge(const Expr& left, const Expr& right, const Rational& a, const Rational& b,
                  int order) {
    const int m = order + 1; // conditions per side
    const int n = 2 * m;     // total nodes
    const long double av = static_cast<long double>(to_double(a));
    const long double bv = static_cast<long double>(to_double(b));

    std::vector<long double> node(n);
    for (int i = 0; i < m; ++i) node[i] = av;
    for (int i = m; i < n; ++i) node[i] = bv;

    // One-sided derivative values: each piece is smooth up to the closure of
    // its interval.
    std::vector<long double> dl(m), dr(m);
    Expr le = left, re = right;
    for (int j = 0; j < m; ++j) {
        dl[j] = static_cast<long double>(le.eval_double(to_double(a)));
        dr[j] = static_cast<long double>(re.eval_double(to_double(b)));
        le = derivative_compact(le);
        re = derivative_compact(re);
    }

    // Divided differences with repeated nodes: f[z_i..z_{i+k}] = f^(k)(z)/k!.
    std::vector<std::vector<long double>> dd(n, std::vector<long double>(n, 0.0L));
    std::vector<long double> factorial_ld(m, 1.0L);
    for (int j = 1; j < m; ++j) factorial_ld[j] = factorial_ld[j - 1] * j;
    for (int i = 0; i < n; ++i) dd[i][0] = (i < m) ? dl[0] : dr[0];
    for (int k = 1; k < n; ++k) {
        for (int i = 0; i + k < n; ++i) {
            if (node[i] == node[i + k]) {
                dd[i][k] = ((i < m) ? dl[k] : dr[k]) / factorial_ld[k];
            } else {
                dd[i][k] = (dd[i + 1][k - 1] - dd[i][k - 1]) / (node[i + k] - node[i]);
            }
        }
    }

    // Nested Newton form, innermost coefficient first.
    Expr xa = Expr::sub(Expr::var(), Expr::number(a));
    Expr xb = Expr::sub(Expr::var(), Expr::number(b));
    Expr acc = Expr::number(rational_from_double(static_cast<double>(dd[0][n - 1])));
    for (int k = n - 2; k >= 0; --k) {
        const Expr& lin = (k < m) ? xa : xb;
        acc = Expr::add(Expr::number(rational_from_double(static_cast<double>(dd[0][k]))),
                        Expr::mul(lin, acc));
    }
    return acc;
}

} // namespace

PiecewiseFn PiecewiseFn::from_pieces(std::vector<Piece> pieces, std::optional<int> blend_order) {
    if (pieces.empty()) throw ParseError("piecewise function needs at least one piece");
    std::vector<Piece> sorted = pieces;
    std::stable_sort(sorted.begin(), sorted.end(), [](const Piece& a, const Piece& b) {
        if (!a.interval.lo) return static_cast<bool>(b.interval.lo);
        if (!b.interval.lo) return false;
        return *a.interval.lo < *b.interval.lo;
    });

    if (sorted.front().interval.lo)
        throw ParseError("pieces do not cover the line: first interval must start at -inf");
    if (sorted.back().interval.hi)
        throw ParseError("pieces do not cover the line: last interval must end at inf");
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        const Interval& cur = sorted[i].interval;
        const Interval& nxt = sorted[i + 1].interval;
        if (!cur.hi || !nxt.lo) throw ParseError("non-monotone breakpoints");
        if (*cur.hi > *nxt.lo) throw ParseError("overlapping pieces at " + schwartz::to_string(*nxt.lo));
        // A shared breakpoint closed on both sides is tolerated: interiors
        // stay disjoint and evaluation gives it to the left piece.
        if (*cur.hi == *nxt.lo && !cur.hi_closed && !nxt.lo_closed)
            throw ParseError("uncovered breakpoint at " + schwartz::to_string(*cur.hi));
    }

    std::vector<Piece> final_pieces;
    std::vector<Piece> user_copy = sorted;
    bool blended = false;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        final_pieces.push_back(sorted[i]);
        if (i + 1 == sorted.size()) break;
        const Interval& cur = sorted[i].interval;
        const Interval& nxt = sorted[i + 1].interval;
        if (*cur.hi < *nxt.lo) {
            if (!blend_order)
                throw ParseError("gap between pieces at " + schwartz::to_string(*cur.hi) +
                                 " requires a blend order");
            Expr bridge = build_bridge(sorted[i].expr, sorted[i + 1].expr, *cur.hi, *nxt.lo,
                                       *blend_order);
            Interval gap{*cur.hi, *nxt.lo, !cur.hi_closed, !nxt.lo_closed};
            final_pieces.push_back({gap, std::move(bridge)});
            blended = true;
        }
    }

    PiecewiseFn f;
    f.pieces_ = std::move(final_pieces);
    if (blended) f.provenance_ = Provenance{std::move(user_copy), *blend_order};
    return f;
}

std::vector<Rational> PiecewiseFn::breakpoints() const {
    std::vector<Rational> bps;
    for (std::size_t i = 1; i < pieces_.size(); ++i)
        if (pieces_[i].interval.lo) bps.push_back(*pieces_[i].interval.lo);
    return bps;
}

PiecewiseFn PiecewiseFn::derivative(int order) const {
    PiecewiseFn f;
    f.pieces_ = pieces_;
    for (auto& p : f.pieces_) {
        Expr d = p.expr;
        for (int i = 0; i < order; ++i) d = derivative_compact(d);
        p.expr = d;
    }
    return f;
}

std::size_t PiecewiseFn::piece_index(double x) const {
    // Left piece owns shared breakpoints: scan from the left, first interval
    // whose upper end is >= x (strictly > when open) wins.
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const Interval& iv = pieces_[i].interval;
        if (!iv.hi) return i;
        double hi = to_double(*iv.hi);
        if (x < hi || (x == hi && iv.hi_closed)) return i;
    }
    return pieces_.size() - 1;
}

std::size_t PiecewiseFn::piece_index(const LogScalar& x) const {
    if (pieces_.size() == 1) return 0;
    double v = x.value();
    if (std::isfinite(v)) return piece_index(v);
    return x.sign > 0 ? pieces_.size() - 1 : 0;
}

double PiecewiseFn::evaluate(double x) const {
    if (!std::isfinite(x)) throw EvalError("evaluation point must be finite", "x");
    const Piece& p = pieces_[piece_index(x)];
    // Exact rational path first: keeps polynomial evaluation exact.
    if (auto r = p.expr.eval_rational(rational_from_double(x))) return to_double(*r);
    return p.expr.eval_double(x);
}

std::optional<Rational> PiecewiseFn::evaluate_exact(const Rational& x) const {
    const Piece& p = pieces_[piece_index(to_double(x))];
    return p.expr.eval_rational(x);
}

Bound PiecewiseFn::evaluate_bound(const LogScalar& x, const ExprNode** err_at) const {
    return pieces_[piece_index(x)].expr.eval_bound(x, err_at);
}

std::string PiecewiseFn::to_string() const {
    if (pieces_.size() == 1 && !pieces_[0].interval.lo && !pieces_[0].interval.hi)
        return pieces_[0].expr.to_string();
    std::string out = "piecewise(";
    const std::vector<Piece>& ps = provenance_ ? provenance_->user_pieces : pieces_;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (i) out += "; ";
        out += ps[i].interval.to_string();
        out += ": ";
        out += ps[i].expr.to_string();
    }
    if (provenance_) {
        out += "; blend: ";
        out += std::to_string(provenance_->blend_order);
    }
    out += ")";
    return out;
}

Verdict smoothness_check(const PiecewiseFn& f, int order, double tol) {
    if (f.is_single())
        return Verdict::holds({{"breakpoints", 0}, {"order", static_cast<double>(order)}});

    // One-sided derivative estimate at breakpoint t, from the given piece.
    // Direct evaluation of the symbolic derivative when it is defined at t,
    // otherwise the limit along a dyadic sequence approaching t.
    auto one_sided = [](const Expr& deriv, double t, int dir) -> std::optional<double> {
        LogScalar at = LogScalar::from_double(t);
        Bound b = deriv.eval_bound(at);
        if (b.ok() && b.is_point()) return b.lo.value();
        double prev = 0;
        bool have_prev = false;
        for (int i = 8; i <= 48; ++i) {
            double h = std::ldexp(1.0, -i);
            Bound v = deriv.eval_bound(LogScalar::from_double(t + dir * h));
            if (!v.ok() || !v.is_point()) continue;
            double val = v.lo.value();
            if (have_prev) {
                double scale = std::max(1.0, std::max(std::fabs(val), std::fabs(prev)));
                if (std::fabs(val - prev) <= 1e-7 * scale) return val;
            }
            prev = val;
            have_prev = true;
        }
        return std::nullopt;
    };

    std::vector<WitnessPoint> witnesses;
    bool ambiguous = false;
    const auto& pieces = f.pieces();
    for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
        if (!pieces[i].interval.hi) continue;
        double t = to_double(*pieces[i].interval.hi);
        Expr dl = pieces[i].expr, dr = pieces[i + 1].expr;
        for (int j = 0; j <= order; ++j) {
            auto lv = one_sided(dl, t, -1);
            auto rv = one_sided(dr, t, +1);
            if (!lv || !rv) {
                ambiguous = true;
            } else {
                double scale = std::max({1.0, std::fabs(*lv), std::fabs(*rv)});
                if (std::fabs(*lv - *rv) > tol * scale) {
                    WitnessPoint w;
                    w.x = t;
                    w.log_abs_x = std::log(std::max(std::fabs(t), 1e-300));
                    w.sign_x = t < 0 ? -1 : 1;
                    w.order = j;
                    w.value = *rv - *lv;
                    w.log_value = std::log(std::fabs(*rv - *lv));
                    w.note = "derivative jump at breakpoint";
                    witnesses.push_back(w);
                }
            }
            dl = derivative_compact(dl);
            dr = derivative_compact(dr);
        }
    }
    if (!witnesses.empty()) return Verdict::fails(std::move(witnesses), "one-sided derivatives disagree");
    if (ambiguous) return Verdict::inconclusive("one-sided derivative estimate did not converge");
    return Verdict::holds({{"breakpoints", static_cast<double>(pieces.size() - 1)},
                           {"order", static_cast<double>(order)},
                           {"tol", tol}});
}

} // namespace schwartz
