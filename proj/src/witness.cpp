#include "schwartz/witness.hpp"

#include "schwartz/errors.hpp"
#include "schwartz/faa_di_bruno.hpp"
#include "schwartz/seminorm.hpp"
#include "schwartz/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace schwartz {

PiecewiseFn standard_bump() { return scaled_bump(Rational(0), Rational(1)); }

PiecewiseFn scaled_bump(const Rational& center, const Rational& width) {
    if (width <= 0) throw PreconditionError("bump width must be positive");
    Rational lo = center - width / 2, hi = center + width / 2;
    // psi(u) with u = (x - center)/width
    Expr u = Expr::div(Expr::sub(Expr::var(), Expr::number(center)), Expr::number(width));
    Expr one = Expr::integer(1);
    Expr inner = Expr::sub(one, Expr::mul(Expr::integer(4), Expr::powi(u, 2)));
    Expr body = Expr::exp(Expr::sub(one, Expr::div(one, inner)));
    std::vector<Piece> pieces;
    pieces.push_back({Interval{std::nullopt, lo, false, true}, Expr::integer(0)});
    pieces.push_back({Interval{lo, hi, false, false}, body});
    pieces.push_back({Interval{hi, std::nullopt, true, false}, Expr::integer(0)});
    return PiecewiseFn::from_pieces(std::move(pieces), std::nullopt);
}

std::vector<Rational> psi_taylor(int n) {
    if (n < 0) throw PreconditionError("taylor order must be >= 0");
    // psi = exp(g), g = 1 - 1/(1-4x^2) = -sum_{k>=1} 4^k x^{2k}
    // ODE: psi' = g' psi gives (m+1) c_{m+1} = sum_i b_i c_{m-i} with
    // g' = sum b_i x^i, b_{2k-1} = -2k 4^k.
    std::vector<Rational> b(static_cast<std::size_t>(n) + 1, Rational(0));
    Rational pow4(1);
    for (int k = 1; 2 * k - 1 <= n; ++k) {
        pow4 *= 4;
        b[static_cast<std::size_t>(2 * k - 1)] = Rational(-2L * k) * pow4;
    }
    std::vector<Rational> c(static_cast<std::size_t>(n) + 1, Rational(0));
    c[0] = 1;
    for (int m = 0; m < n; ++m) {
        Rational s(0);
        for (int i = 0; i <= m; ++i) s += b[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(m - i)];
        c[static_cast<std::size_t>(m + 1)] = s / Rational(m + 1);
    }
    return c;
}

BumpSpec make_bump(int n) {
    if (n < 1) throw PreconditionError("make_bump needs n >= 1");
    std::vector<Rational> c = psi_taylor(n);
    // rho = p * psi with p = sum_{i=1..n} a_i x^i. The series coefficient of
    // x^j in rho is sum_{i<=j} a_i c_{j-i}, so the moment conditions
    // rho'(0)=1, rho^{(j)}(0)=0 (2<=j<=n) form a triangular system (c_0 = 1).
    std::vector<Rational> a(static_cast<std::size_t>(n) + 1, Rational(0));
    for (int j = 1; j <= n; ++j) {
        Rational coeff_target = j == 1 ? Rational(1) : Rational(0);
        coeff_target /= Rational(factorial(static_cast<unsigned long>(j)));
        Rational tail(0);
        for (int i = 1; i < j; ++i)
            tail += a[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(j - i)];
        a[static_cast<std::size_t>(j)] = coeff_target - tail;
    }

    BumpSpec spec;
    spec.n = n;
    spec.correction = RatPoly(a);

    PiecewiseFn psi = standard_bump();
    std::vector<Piece> pieces;
    for (const Piece& piece : psi.pieces()) {
        Expr body = piece.expr;
        if (!(body.is_number() && body.number_value() == 0))
            body = Expr::mul(spec.correction.to_expr(), body);
        pieces.push_back({piece.interval, body});
    }
    spec.rho = PiecewiseFn::from_pieces(std::move(pieces), std::nullopt);
    return spec;
}

Rational bump_moment(const BumpSpec& spec, int j) {
    if (j < 0) throw PreconditionError("moment order must be >= 0");
    std::vector<Rational> c = psi_taylor(j);
    Rational coeff(0);
    for (int i = 0; i <= j; ++i)
        coeff += spec.correction.coeff(i) * c[static_cast<std::size_t>(j - i)];
    return coeff * Rational(factorial(static_cast<unsigned long>(j)));
}

BumpSeries::BumpSeries(PiecewiseFn profile, std::vector<double> centers,
                       std::vector<double> log_weights, int max_order)
    : profile_(std::move(profile), max_order), centers_(std::move(centers)),
      log_weights_(std::move(log_weights)) {
    if (centers_.size() != log_weights_.size())
        throw PreconditionError("centers/weights size mismatch");
    for (std::size_t i = 0; i + 1 < centers_.size(); ++i) {
        if (!(std::fabs(centers_[i]) + 1 < std::fabs(centers_[i + 1])))
            throw PreconditionError("series centers must satisfy |y_j| + 1 < |y_{j+1}|");
        if (!(centers_[i] < centers_[i + 1]))
            throw PreconditionError("series centers must be sorted");
    }
}

int BumpSeries::max_order() const { return profile_.max_order(); }

Bound BumpSeries::deriv_bound(int order, const LogScalar& x) const {
    double v = x.value();
    if (!std::isfinite(v)) return Bound::point(LogScalar::zero()); // beyond every support
    // unique active term: |v - y_k| <= 1/2
    auto it = std::lower_bound(centers_.begin(), centers_.end(), v);
    std::size_t k = centers_.size();
    if (it != centers_.end() && *it - v <= 0.5) k = static_cast<std::size_t>(it - centers_.begin());
    else if (it != centers_.begin() && v - *(it - 1) <= 0.5)
        k = static_cast<std::size_t>(it - centers_.begin()) - 1;
    if (k == centers_.size()) return Bound::point(LogScalar::zero());

    // the log-scale coordinate reconstructs x to within an ulp; snap offsets
    // inside that noise onto the center so term values there are exact
    double offset = v - centers_[k];
    if (std::fabs(offset) < 1e-13 * std::max(1.0, std::fabs(centers_[k]))) offset = 0.0;
    Bound prof = profile_.deriv_bound(order, LogScalar::from_double(offset));
    if (!prof.ok()) return prof;
    Bound w = Bound::point(LogScalar::from_log(1, log_weights_[k]));
    return b_mul(prof, w);
}

namespace {

WitnessSeriesReport verify_series(const BumpSeries& series, const PiecewiseRealFunction& phi,
                                  int deriv_order, const std::vector<double>& xs,
                                  bool weighted_by_x, const RunConfig& cfg) {
    WitnessSeriesReport rep;
    rep.points = xs;
    rep.centers = series.centers();
    rep.inequalities_ok = true;
    for (std::size_t j = 0; j < xs.size(); ++j) {
        LogScalar x = LogScalar::from_double(xs[j]);
        Bound comp = compose_deriv_bound(series, phi, deriv_order, x);
        double log_val = comp.ok() ? (mag_lo(comp).is_zero() ? kNegInf : mag_lo(comp).lg)
                                   : kNegInf;
        double bar;
        double value;
        if (weighted_by_x) {
            // |x_j| |(f o phi)(x_j)| >= 1 - tol
            value = x.lg + log_val;
            bar = std::log1p(-1e-6);
        } else {
            // |(f o phi)^{(n)}(x_k)| >= k (1 - tol), k = j+1
            value = log_val;
            bar = std::log(static_cast<double>(j + 1) * (1.0 - 1e-6));
        }
        rep.check_values.push_back(std::exp(value));
        if (!(value >= bar)) rep.inequalities_ok = false;
    }
    rep.membership = membership_S(series, cfg.max_order, Region::full(), cfg);
    return rep;
}

} // namespace

std::pair<std::shared_ptr<BumpSeries>, WitnessSeriesReport>
build_witness_cond_i(const PiecewiseRealFunction& phi, int n, int count, const RunConfig& cfg) {
    if (n < 1 || count < 1) throw PreconditionError("witness build needs n >= 1, count >= 1");
    {
        Verdict pre = check_condition_i(phi, n, cfg, nullptr);
        if (!pre.failed())
            throw PreconditionError("condition (i) does not fail at order " + std::to_string(n) +
                                    "; no witness exists");
    }

    // scan for x_1 < x_2 < ... with |phi^{(n)}(x)| >= j (1+|phi(x)|^2)^j and
    // the separation constraints; positive axis first, then negative.
    std::vector<double> xs, ys;
    for (int sign : {1, -1}) {
        double dir = sign > 0 ? 1.0 : -1.0;
        xs.clear();
        ys.clear();
        double x_prev = 0, y_prev_abs = -1;
        int j = 1;
        const double step = 1e-3;
        for (double t = step; t <= cfg.window_max && j <= count; t += std::max(step, t * 1e-4)) {
            double x = dir * t;
            if (!xs.empty() && !(std::fabs(x) > std::fabs(x_prev) + 1)) continue;
            Bound val = phi.value_bound(LogScalar::from_double(x));
            Bound der = phi.deriv_bound(n, LogScalar::from_double(x));
            if (!val.ok() || !val.is_point() || !der.ok() || !der.is_point()) continue;
            double y = val.lo.value();
            if (!std::isfinite(y)) continue;
            if (!(std::fabs(y) > y_prev_abs + 1)) continue;
            double lhs = der.lo.is_zero() ? kNegInf : der.lo.lg;
            double rhs = std::log(static_cast<double>(j)) +
                         static_cast<double>(j) * log1p_sq(val.lo);
            if (lhs >= rhs) {
                xs.push_back(x);
                ys.push_back(y);
                x_prev = x;
                y_prev_abs = std::fabs(y);
                ++j;
            }
        }
        if (static_cast<int>(xs.size()) == count) break;
    }
    if (static_cast<int>(xs.size()) < count) {
        WitnessSeriesReport rep;
        rep.note = "witness sequence extension failed: found only " +
                   std::to_string(xs.size()) + " of " + std::to_string(count);
        return {nullptr, rep};
    }

    // centers must be sorted with |y| ascending for the series
    std::vector<std::size_t> order(ys.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return ys[a] < ys[b]; });
    std::vector<double> centers, weights;
    for (std::size_t i : order) centers.push_back(ys[i]);
    std::vector<double> lw(ys.size());
    for (std::size_t i = 0; i < ys.size(); ++i)
        lw[i] = -(static_cast<double>(i + 1)) * log1p_sq(LogScalar::from_double(ys[i]));
    for (std::size_t i : order) weights.push_back(lw[i]);

    BumpSpec bump = make_bump(n);
    auto series = std::make_shared<BumpSeries>(bump.rho, centers, weights,
                                               std::max(cfg.max_order, n));
    WitnessSeriesReport rep = verify_series(*series, phi, n, xs, false, cfg);
    rep.note = "condition (i) witness series at order " + std::to_string(n);
    return {series, rep};
}

std::pair<std::shared_ptr<BumpSeries>, WitnessSeriesReport>
build_witness_cond_ii(const PiecewiseRealFunction& phi, int count, const RunConfig& cfg) {
    if (count < 1) throw PreconditionError("witness build needs count >= 1");
    {
        Verdict pre = check_condition_ii(phi, cfg);
        if (!pre.failed())
            throw PreconditionError("condition (ii) does not fail; no witness exists");
    }

    // x_j = exp(u_j) with |phi(x_j)|^j <= |x_j|, |x_j| >= j, separations.
    std::vector<double> xs, ys;
    double y_prev_abs = -1, x_prev = 0;
    int j = 1;
    for (double u = 0.05; u <= 700.0 && j <= count; u += 0.05) {
        double x = std::exp(u);
        if (!(x >= static_cast<double>(j))) continue;
        if (!xs.empty() && !(x > x_prev + 1)) continue;
        Bound val = phi.value_bound(LogScalar::from_log(1, u));
        if (!val.ok() || !val.is_point()) continue;
        double y = val.lo.value();
        if (!std::isfinite(y) || !(std::fabs(y) > y_prev_abs + 1)) continue;
        double lgy = val.lo.is_zero() ? kNegInf : val.lo.lg;
        if (static_cast<double>(j) * lgy <= u) {
            xs.push_back(x);
            ys.push_back(y);
            x_prev = x;
            y_prev_abs = std::fabs(y);
            ++j;
        }
    }
    if (static_cast<int>(xs.size()) < count) {
        WitnessSeriesReport rep;
        rep.note = "witness sequence extension failed: found only " +
                   std::to_string(xs.size()) + " of " + std::to_string(count);
        return {nullptr, rep};
    }

    std::vector<std::size_t> order(ys.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return ys[a] < ys[b]; });
    std::vector<double> centers, weights;
    std::vector<double> lw(ys.size());
    for (std::size_t i = 0; i < ys.size(); ++i)
        lw[i] = -(static_cast<double>(i + 1)) * std::log(std::fabs(ys[i]));
    for (std::size_t i : order) {
        centers.push_back(ys[i]);
        weights.push_back(lw[i]);
    }

    auto series = std::make_shared<BumpSeries>(standard_bump(), centers, weights, cfg.max_order);
    WitnessSeriesReport rep = verify_series(*series, phi, 0, xs, true, cfg);
    rep.note = "condition (ii) witness series";
    return {series, rep};
}

Lemma1Witness lemma1_witness(const PiecewiseRealFunction& phi, int count, const RunConfig& cfg) {
    Verdict pre = check_limit_infinity(phi, cfg, nullptr);
    if (!pre.failed())
        throw PreconditionError("check_limit_infinity does not fail; no witness exists");

    // limit point: phi value at the farthest witness
    std::vector<WitnessPoint> ws = pre.witnesses();
    std::sort(ws.begin(), ws.end(),
              [](const WitnessPoint& a, const WitnessPoint& b) {
                  return std::fabs(a.x) < std::fabs(b.x);
              });
    double ell = 0;
    {
        Bound b = phi.value_bound(LogScalar::from_double(ws.back().x));
        if (b.ok() && b.is_point()) ell = b.lo.value();
    }

    Lemma1Witness out;
    out.limit_point = ell;
    out.bump = scaled_bump(rational_from_double(ell), Rational(1));
    PiecewiseRealFunction f(out.bump, 1);
    for (const WitnessPoint& w : ws) {
        if (static_cast<int>(out.points.size()) >= count) break;
        Bound y = phi.value_bound(LogScalar::from_double(w.x));
        if (!y.ok() || !y.is_point()) continue;
        Bound fy = f.value_bound(y.lo);
        if (!fy.ok()) continue;
        LogScalar m = mag_lo(fy);
        double product = m.is_zero() ? 0.0 : std::fabs(w.x) * std::exp(m.lg);
        out.points.push_back(w.x);
        out.products.push_back(product);
    }
    return out;
}

NonCompactFamily noncompact_family(const PiecewiseRealFunction& phi, double a, double b, int p,
                                   double epsilon, int count, const RunConfig& cfg) {
    if (!(a < b)) throw PreconditionError("need a < b");
    if (p < 1 || epsilon <= 0 || count < 1)
        throw PreconditionError("need p >= 1, epsilon > 0, count >= 1");
    if (phi.max_order() < p)
        throw PreconditionError("phi derivative table too small for order p");

    NonCompactFamily fam;
    fam.a = a;
    fam.b = b;
    fam.p = p;
    fam.epsilon = epsilon;

    // monotonicity and the derivative floor delta
    const std::size_t nscan = 4096;
    int sign = 0;
    double min_abs = kPosInf;
    for (std::size_t i = 0; i <= nscan; ++i) {
        double x = a + (b - a) * static_cast<double>(i) / nscan;
        Bound d = phi.deriv_bound(1, LogScalar::from_double(x));
        if (!d.ok() || !d.is_point())
            throw PreconditionError("phi' not evaluable on [a,b]");
        double v = d.lo.value();
        int s = v > 0 ? 1 : v < 0 ? -1 : 0;
        if (s == 0) throw PreconditionError("phi' vanishes on [a,b]; not monotone");
        if (sign == 0) sign = s;
        if (s != sign) throw PreconditionError("phi' changes sign on [a,b]; not monotone");
        min_abs = std::min(min_abs, std::fabs(v));
    }
    {
        auto g = [&](double x) {
            Bound d = phi.deriv_bound(1, LogScalar::from_double(x));
            if (!d.ok() || !d.is_point()) return kNegInf;
            return -std::fabs(d.lo.value());
        };
        auto [arg, neg] = golden_max(a, b, 4 * cfg.refine_depth, g);
        (void)arg;
        min_abs = std::min(min_abs, -neg);
    }
    if (!(min_abs > 1e-9)) throw PreconditionError("|phi'| lower bound degenerate on [a,b]");
    fam.delta = min_abs * 0.999;

    double phia = phi.fn().evaluate(a), phib = phi.fn().evaluate(b);
    fam.c = std::min(phia, phib);
    fam.d = std::max(phia, phib);

    // lambda_p: sup over [a,b] of each chain-rule cofactor Q_m, m < p
    double lambda_log = kNegInf;
    for (const Partition& part : enumerate_partitions(p)) {
        if (part.k_total() == p) continue; // the leading (phi')^p term
        double sup = kNegInf;
        for (std::size_t i = 0; i <= nscan; ++i) {
            double x = a + (b - a) * static_cast<double>(i) / nscan;
            Bound term = Bound::point(LogScalar::from_rational(Rational(fdb_coefficient(part))));
            for (int ord = 1; ord <= p; ++ord) {
                int k = part.k[static_cast<std::size_t>(ord - 1)];
                if (k == 0) continue;
                term = b_mul(term, b_powi(phi.deriv_bound(ord, LogScalar::from_double(x)), k));
            }
            if (term.ok()) {
                LogScalar hi = mag_hi(term);
                if (!hi.is_zero()) sup = std::max(sup, hi.lg);
            }
        }
        lambda_log = std::max(lambda_log, sup);
    }
    fam.lambda = lambda_log == kNegInf ? 1.0 : std::exp(lambda_log) * 1.05 + 1.0;

    // frequency ladder: scale sin(omega (x-c)) * bump until the p-th
    // derivative clears lambda*eps + j + 1 after normalization
    Rational mid = rational_from_double((fam.c + fam.d) / 2);
    Rational wid = rational_from_double(fam.d - fam.c);
    PiecewiseFn bump = scaled_bump(mid, wid);

    double omega = 1.0;
    for (int j = 1; j <= count; ++j) {
        const double target = fam.lambda * epsilon + j + 1;
        for (;; omega *= 2) {
            if (omega > std::ldexp(1.0, 48))
                throw PreconditionError("frequency ladder exhausted");
            // g = sin(omega (x - c)) * bump
            Expr osc = Expr::sin(Expr::mul(Expr::number(rational_from_double(omega)),
                                           Expr::sub(Expr::var(),
                                                     Expr::number(rational_from_double(fam.c)))));
            std::vector<Piece> pieces;
            for (const Piece& piece : bump.pieces()) {
                Expr body = piece.expr;
                if (!(body.is_number() && body.number_value() == 0))
                    body = Expr::mul(osc, body);
                pieces.push_back({piece.interval, body});
            }
            PiecewiseFn g = PiecewiseFn::from_pieces(std::move(pieces), std::nullopt);
            PiecewiseRealFunction grf(g, p);
            DNormResult dn = d_norm(grf, p, fam.c, fam.d, cfg);
            double norm_pm1 = 0;
            for (int k = 0; k < p; ++k) norm_pm1 += dn.per_order[static_cast<std::size_t>(k)];
            double sup_p = dn.per_order[static_cast<std::size_t>(p)];
            if (norm_pm1 <= 0) continue;
            double amp = epsilon / norm_pm1;
            if (std::pow(fam.delta, p) * amp * sup_p > target) {
                // scale and re-verify
                std::vector<Piece> spieces;
                for (const Piece& piece : g.pieces()) {
                    Expr body = piece.expr;
                    if (!(body.is_number() && body.number_value() == 0))
                        body = Expr::mul(Expr::number(rational_from_double(amp)), body);
                    spieces.push_back({piece.interval, body});
                }
                PiecewiseFn fj = PiecewiseFn::from_pieces(std::move(spieces), std::nullopt);
                PiecewiseRealFunction fj_rf(fj, p);
                DNormResult check = d_norm(fj_rf, p - 1, fam.c, fam.d, cfg);
                if (std::fabs(check.value - epsilon) > 1e-6 * epsilon)
                    throw PreconditionError("member normalization drifted");

                // composite sup on [a,b]
                std::vector<LogScalar> pts = uniform_grid(a, b, nscan);
                SweepSample best = sup_scan(pts.size(), [&](std::size_t i) {
                    SweepSample s;
                    Bound v = compose_deriv_bound(fj_rf, phi, p, pts[i]);
                    if (!v.ok()) return s;
                    LogScalar lo = mag_lo(v);
                    s.valid = true;
                    s.score = lo.is_zero() ? kNegInf : lo.lg;
                    s.abs_x_lg = pts[i].is_zero() ? kNegInf : pts[i].lg;
                    s.sign_x = pts[i].sign;
                    s.x = pts[i];
                    return s;
                }, cfg);
                double comp_sup = best.valid ? std::exp(best.score) : 0.0;
                if (!(comp_sup >= static_cast<double>(j)))
                    throw PreconditionError("composite derivative sup failed verification");

                fam.members.push_back(fj);
                fam.omegas.push_back(omega);
                fam.norms.push_back(check.value);
                fam.composite_sups.push_back(comp_sup);
                break;
            }
        }
    }
    return fam;
}

NormGapResult norm_gap_function(double a, double b, int n, double ratio, const RunConfig& cfg) {
    if (!(ratio > 1)) throw PreconditionError("norm gap ratio must exceed 1");
    if (!(a < b)) throw PreconditionError("need a < b");
    Rational mid = rational_from_double((a + b) / 2);
    Rational wid = rational_from_double(b - a);
    PiecewiseFn bump = scaled_bump(mid, wid);
    for (double omega = 2.0; omega <= std::ldexp(1.0, 40); omega *= 2) {
        Expr osc = Expr::sin(Expr::mul(Expr::number(rational_from_double(omega)),
                                       Expr::sub(Expr::var(),
                                                 Expr::number(rational_from_double(a)))));
        std::vector<Piece> pieces;
        for (const Piece& piece : bump.pieces()) {
            Expr body = piece.expr;
            if (!(body.is_number() && body.number_value() == 0))
                body = Expr::mul(osc, body);
            pieces.push_back({piece.interval, body});
        }
        PiecewiseFn f = PiecewiseFn::from_pieces(std::move(pieces), std::nullopt);
        PiecewiseRealFunction frf(f, n + 1);
        DNormResult dn = d_norm(frf, n + 1, a, b, cfg);
        double norm_n = 0;
        for (int k = 0; k <= n; ++k) norm_n += dn.per_order[static_cast<std::size_t>(k)];
        double norm_n1 = norm_n + dn.per_order[static_cast<std::size_t>(n + 1)];
        if (norm_n > 0 && norm_n1 / norm_n >= ratio) {
            NormGapResult out;
            out.fn = f;
            out.omega = omega;
            out.norm_n = norm_n;
            out.norm_n1 = norm_n1;
            return out;
        }
    }
    throw PreconditionError("frequency ladder exhausted for the norm gap");
}

} // namespace schwartz
