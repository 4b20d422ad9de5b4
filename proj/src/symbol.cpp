#include "schwartz/symbol.hpp"

#include "schwartz/errors.hpp"
#include "schwartz/faa_di_bruno.hpp"
#include "schwartz/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace schwartz {

std::string RangeClass::to_string() const {
    std::ostringstream os;
    switch (kind) {
    case Kind::FullLine:
        return "R";
    case Kind::BoundedBelow:
        os << "[" << endpoint << ",inf)";
        return os.str();
    case Kind::BoundedAbove:
        os << "(-inf," << endpoint << "]";
        return os.str();
    case Kind::Unknown:
        return "unknown";
    }
    return "?";
}

namespace {

constexpr double kFailsBar = 30.0; // log-units a certified violation must reach

WitnessPoint witness_at(const LogScalar& x, int order, double log_value, std::string note = "") {
    WitnessPoint w;
    w.x = x.value();
    w.log_abs_x = x.is_zero() ? kNegInf : x.lg;
    w.sign_x = x.sign;
    w.order = order;
    w.log_value = log_value;
    w.value = std::exp(log_value);
    w.note = std::move(note);
    return w;
}

// Is this tail part of the line we analyze? (Everything is full-line here,
// but check_om also runs on half-lines.)
bool side_in_region(const Region& region, int side) {
    if (region.is_full()) return true;
    if (region.kind == Region::Kind::RightRay) return side > 0;
    return side < 0;
}

bool piecewise_matched(const PiecewiseFn& f) {
    for (const Piece& p : f.pieces())
        if (!growth_forms(p.expr)) return false;
    return true;
}

const Expr& tail_expr(const PiecewiseFn& f, int side) {
    return side < 0 ? f.pieces().front().expr : f.pieces().back().expr;
}

// -- shared numeric machinery ------------------------------------------------

// One evaluated sample for a domination search |num| <= C * base^e.
// den_* bound log(base) at the point; far-field points carry huge t.
struct RatioPoint {
    LogScalar x;
    double t = 0; // log|x|
    double num_lo = kNegInf, num_hi = kNegInf;
    double den_lo = 0, den_hi = 0;
    bool valid = false;
};

std::vector<LogScalar> analysis_points(const Region& region, const RunConfig& cfg,
                                       bool far_field) {
    std::vector<LogScalar> pts = log_grid(region, cfg);
    if (far_field) {
        auto far = far_field_grid(region, cfg);
        pts.insert(pts.end(), far.begin(), far.end());
    }
    std::sort(pts.begin(), pts.end(), ls_less);
    pts.erase(std::unique(pts.begin(), pts.end(), ls_equal), pts.end());
    return pts;
}

struct DominationOutcome {
    Verdict verdict = Verdict::inconclusive("search not run");
    DominationCert cert; // valid when Holds
};

// Search the smallest exponent e in [e_min, e_max] such that
// |num| <= C * base^e is grid-bounded with stable tails. Fails when the
// certified violation measure rises beyond any plausible constant for every
// lattice exponent.
DominationOutcome domination_search(const std::vector<RatioPoint>& pts, int e_min, int e_max,
                                    int order, const RunConfig& cfg) {
    DominationOutcome out;
    std::vector<const RatioPoint*> valid;
    for (const auto& p : pts)
        if (p.valid) valid.push_back(&p);
    if (valid.size() < 16) {
        out.verdict = Verdict::inconclusive("too few valid samples for the ratio search");
        return out;
    }
    const double t_tail = std::log(cfg.tail_lo);

    for (int e = e_min; e <= e_max; ++e) {
        double sup = kNegInf;
        bool stable = true;
        for (int side : {-1, 1}) {
            std::vector<std::pair<double, double>> tail_hi;
            for (const auto* p : valid) {
                if (p->x.sign != side || p->t < t_tail) continue;
                double r = p->num_hi - static_cast<double>(e) * p->den_lo;
                if (std::isnan(r)) continue;
                tail_hi.push_back({p->t, std::min(r, 1e6)});
            }
            if (block_trend(tail_hi, cfg.tail_blocks, cfg.growth_margin) > 0) stable = false;
        }
        for (const auto* p : valid) {
            double r = p->num_hi - static_cast<double>(e) * p->den_lo;
            if (!std::isnan(r)) sup = std::max(sup, r);
        }
        if (stable && sup < 1e6) {
            out.cert.j = order;
            out.cert.exponent = e;
            out.cert.C = std::exp(std::min(sup, 700.0)) * 1.05 + 1e-12;
            out.verdict = Verdict::holds({{"j", static_cast<double>(order)},
                                          {"C", out.cert.C},
                                          {"exponent", static_cast<double>(e)},
                                          {"grid_sup_log", sup}});
            return out;
        }
    }

    // Fails only when the certified lower ratio outruns every exponent.
    bool all_rising = true;
    double top = kNegInf;
    std::vector<WitnessPoint> witnesses;
    {
        int e = e_max;
        std::vector<std::pair<double, double>> lo_pts;
        std::vector<const RatioPoint*> lo_args;
        for (const auto* p : valid) {
            double r = p->num_lo - static_cast<double>(e) * p->den_hi;
            if (std::isnan(r) || r == kNegInf) continue;
            lo_pts.push_back({p->t, std::min(r, 1e6)});
            lo_args.push_back(p);
        }
        if (lo_pts.size() < 16 || block_trend(lo_pts, cfg.tail_blocks, cfg.growth_margin) <= 0)
            all_rising = false;
        for (const auto& [t, r] : lo_pts) top = std::max(top, r);
        if (all_rising && top >= kFailsBar) {
            // strongest violations, largest |x| last
            std::vector<std::size_t> idx(lo_pts.size());
            for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
            std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
                return lo_pts[a].second > lo_pts[b].second;
            });
            for (std::size_t i = 0; i < idx.size() && witnesses.size() < 8; ++i) {
                const RatioPoint* p = lo_args[idx[i]];
                witnesses.push_back(witness_at(p->x, order, lo_pts[idx[i]].second,
                                               "certified ratio violation (log units)"));
            }
        }
    }
    if (all_rising && top >= kFailsBar && !witnesses.empty()) {
        std::ostringstream note;
        note << "ratio grows beyond every lattice exponent (order " << order << ")";
        out.verdict = Verdict::fails(std::move(witnesses), note.str());
        return out;
    }
    out.verdict = Verdict::inconclusive("ratio neither tail-stable nor certifiably growing");
    return out;
}

// -- limit / range -----------------------------------------------------------

double extremum_value(const PiecewiseRealFunction& f, const Region& region, bool want_min,
                      const RunConfig& cfg, double* arg_out) {
    std::vector<LogScalar> pts = log_grid(region, cfg);
    std::sort(pts.begin(), pts.end(), ls_less);
    SweepSample best = sup_scan(pts.size(), [&](std::size_t i) {
        SweepSample s;
        Bound b = f.value_bound(pts[i]);
        if (!b.ok() || !b.is_point()) return s;
        double v = b.lo.value();
        if (!std::isfinite(v)) return s;
        s.valid = true;
        s.score = want_min ? -v : v;
        s.abs_x_lg = pts[i].is_zero() ? kNegInf : pts[i].lg;
        s.sign_x = pts[i].sign;
        s.x = pts[i];
        return s;
    }, cfg);
    if (!best.valid) {
        if (arg_out) *arg_out = 0;
        return 0;
    }
    // refine in linear coordinates around the best point
    double xb = best.x.value();
    double lo = xb - std::max(1e-6, std::fabs(xb) * 0.01);
    double hi = xb + std::max(1e-6, std::fabs(xb) * 0.01);
    if (!region.is_full()) {
        if (region.kind == Region::Kind::RightRay) lo = std::max(lo, region.endpoint);
        if (region.kind == Region::Kind::LeftRay) hi = std::min(hi, region.endpoint);
    }
    auto g = [&](double t) {
        Bound b = f.value_bound(LogScalar::from_double(t));
        if (!b.ok() || !b.is_point()) return kNegInf;
        double v = b.lo.value();
        if (!std::isfinite(v)) return kNegInf;
        return want_min ? -v : v;
    };
    auto [arg, val] = golden_max(lo, hi, 4 * cfg.refine_depth, g);
    double result = std::max(best.score, val);
    if (arg_out) *arg_out = val >= best.score ? arg : xb;
    return want_min ? -result : result;
}

} // namespace

Verdict check_limit_infinity(const PiecewiseRealFunction& phi, const RunConfig& cfg,
                             RangeClass* range_out) {
    const PiecewiseFn& f = phi.fn();
    RangeClass range;

    // Exact path via growth classes.
    if (piecewise_matched(f)) {
        TailGrowth left = classify_tail_growth(tail_expr(f, -1), -1);
        TailGrowth right = classify_tail_growth(tail_expr(f, +1), +1);
        if (left.kind != TailGrowth::Kind::Unknown && right.kind != TailGrowth::Kind::Unknown) {
            auto tail_witnesses = [&](int side, double limit) {
                std::vector<WitnessPoint> ws;
                for (int i = 1; i <= 8; ++i) {
                    double x = side * std::exp(static_cast<double>(i + 1));
                    Bound b = phi.value_bound(LogScalar::from_double(x));
                    double v = b.ok() && b.is_point() ? b.lo.value() : limit;
                    ws.push_back(witness_at(LogScalar::from_double(x), 0,
                                            std::log(std::max(std::fabs(v), 1e-300)),
                                            "phi value stays near " + std::to_string(limit)));
                }
                return ws;
            };
            if (!left.abs_to_infinity()) {
                double l = left.kind == TailGrowth::Kind::Constant ? left.limit : 0.0;
                if (range_out) *range_out = range;
                return Verdict::fails(tail_witnesses(-1, l),
                                      "left tail bounded, limit point " + std::to_string(l));
            }
            if (!right.abs_to_infinity()) {
                double l = right.kind == TailGrowth::Kind::Constant ? right.limit : 0.0;
                if (range_out) *range_out = range;
                return Verdict::fails(tail_witnesses(+1, l),
                                      "right tail bounded, limit point " + std::to_string(l));
            }
            if (left.value_sign != right.value_sign) {
                range.kind = RangeClass::Kind::FullLine;
            } else if (left.value_sign > 0) {
                range.kind = RangeClass::Kind::BoundedBelow;
                range.endpoint = extremum_value(phi, Region::full(), true, cfg, nullptr);
            } else {
                range.kind = RangeClass::Kind::BoundedAbove;
                range.endpoint = extremum_value(phi, Region::full(), false, cfg, nullptr);
            }
            if (range_out) *range_out = range;
            return Verdict::holds({{"exact", 1.0},
                                   {"left_sign", static_cast<double>(left.value_sign)},
                                   {"right_sign", static_cast<double>(right.value_sign)}});
        }
    }

    // Numeric path: block minima of |phi| must escape every threshold.
    std::vector<LogScalar> pts = analysis_points(Region::full(), cfg, true);
    struct Tail {
        std::vector<std::pair<double, double>> lo; // (t, log mag_lo)
        std::vector<std::pair<double, double>> hi; // (t, log mag_hi)
        std::vector<std::pair<double, const LogScalar*>> hi_at;
        std::vector<int> sign; // definite value signs seen far out
    };
    Tail tails[2]; // 0: left, 1: right
    for (const LogScalar& x : pts) {
        if (x.is_zero() || x.lg < 0) continue; // |x| >= 1 only
        Bound b = phi.value_bound(x);
        if (!b.ok()) continue;
        Tail& t = tails[x.sign < 0 ? 0 : 1];
        LogScalar lo = mag_lo(b), hi = mag_hi(b);
        double lo_lg = lo.is_zero() ? -40.0 : std::min(lo.lg, 1e6);
        double hi_lg = hi.is_zero() ? -40.0 : std::min(hi.lg, 1e6);
        t.lo.push_back({x.lg, lo_lg});
        t.hi.push_back({x.lg, hi_lg});
        t.hi_at.push_back({x.lg, &x});
        if (!b.contains_zero() && x.lg > std::log(cfg.tail_lo))
            t.sign.push_back(b.lo.sign);
    }

    const double threshold = std::log(1024.0);
    int tail_sign[2] = {0, 0};
    for (int side = 0; side < 2; ++side) {
        Tail& t = tails[side];
        if (t.lo.size() < 32) return Verdict::inconclusive("too few valid tail samples");
        std::sort(t.lo.begin(), t.lo.end());
        std::sort(t.hi.begin(), t.hi.end());
        std::sort(t.hi_at.begin(), t.hi_at.end());

        // block minima of the certified lower bound must rise past the
        // threshold; a bounded subsequence shows up as block minima of the
        // upper bound pinned below it
        const int nb = 12;
        std::vector<double> min_lo(nb, kPosInf), min_hi(nb, kPosInf);
        std::vector<const LogScalar*> argmin(nb, nullptr);
        for (std::size_t i = 0; i < t.lo.size(); ++i) {
            std::size_t b = i * static_cast<std::size_t>(nb) / t.lo.size();
            min_lo[b] = std::min(min_lo[b], t.lo[i].second);
            if (t.hi[i].second < min_hi[b]) {
                min_hi[b] = t.hi[i].second;
                argmin[b] = t.hi_at[i].second;
            }
        }
        // escape: block minima of the certified lower bound rise (with slack)
        // and clear the threshold at the window edge
        bool holds = min_lo[static_cast<std::size_t>(nb - 1)] >= threshold;
        for (int b = 1; b < nb && holds; ++b)
            if (min_lo[static_cast<std::size_t>(b)] <
                min_lo[static_cast<std::size_t>(b - 1)] - 2.0)
                holds = false;
        if (holds) {
            // tail sign for the range classification
            int s = 0;
            for (int v : t.sign) {
                if (s == 0) s = v;
                if (v != s) s = 99; // mixed
            }
            tail_sign[side] = s == 99 ? 0 : s;
            continue;
        }
        // bounded subsequence?
        bool bounded = true;
        for (int b = 0; b < nb; ++b)
            if (min_hi[static_cast<std::size_t>(b)] > threshold) bounded = false;
        if (bounded) {
            std::vector<WitnessPoint> ws;
            double limit_est = 0;
            for (int b = 0; b < nb; ++b) {
                if (!argmin[static_cast<std::size_t>(b)]) continue;
                const LogScalar& x = *argmin[static_cast<std::size_t>(b)];
                Bound v = phi.value_bound(x);
                double val = v.ok() && v.is_point() ? v.lo.value() : 0.0;
                limit_est = val;
                ws.push_back(witness_at(x, 0, min_hi[static_cast<std::size_t>(b)],
                                        "small |phi| far out"));
            }
            if (range_out) *range_out = range;
            return Verdict::fails(std::move(ws),
                                  "bounded subsequence, limit point near " +
                                      std::to_string(limit_est));
        }
        if (range_out) *range_out = range;
        return Verdict::inconclusive("tail escape not confirmed on the probe window");
    }

    if (tail_sign[0] != 0 && tail_sign[1] != 0 && tail_sign[0] != tail_sign[1]) {
        range.kind = RangeClass::Kind::FullLine;
    } else if (tail_sign[0] > 0 && tail_sign[1] > 0) {
        range.kind = RangeClass::Kind::BoundedBelow;
        range.endpoint = extremum_value(phi, Region::full(), true, cfg, nullptr);
    } else if (tail_sign[0] < 0 && tail_sign[1] < 0) {
        range.kind = RangeClass::Kind::BoundedAbove;
        range.endpoint = extremum_value(phi, Region::full(), false, cfg, nullptr);
    }
    if (range_out) *range_out = range;
    return Verdict::holds({{"exact", 0.0},
                           {"left_sign", static_cast<double>(tail_sign[0])},
                           {"right_sign", static_cast<double>(tail_sign[1])}});
}

namespace {

std::vector<RatioPoint> condition_points(const PiecewiseRealFunction& phi, int j,
                                         const Region& region, const RunConfig& cfg,
                                         bool star_weight) {
    std::vector<LogScalar> pts = analysis_points(region, cfg, true);
    std::vector<RatioPoint> out(pts.size());
    table_scan(pts.size(), [&](std::size_t i) {
        RatioPoint& rp = out[i];
        rp.x = pts[i];
        rp.t = pts[i].is_zero() ? -40.0 : pts[i].lg;
        Bound num = phi.deriv_bound(j, pts[i]);
        Bound val = phi.value_bound(pts[i]);
        if (!num.ok() || !val.ok()) return SweepSample::none();
        LogScalar nlo = mag_lo(num), nhi = mag_hi(num);
        LogScalar vlo = mag_lo(val), vhi = mag_hi(val);
        rp.valid = true;
        rp.num_lo = nlo.is_zero() ? kNegInf : nlo.lg;
        rp.num_hi = nhi.is_zero() ? kNegInf : nhi.lg;
        if (star_weight) {
            // base (1+x^2); the fixed (1+|phi|) factor folds into num
            double den = log1p_sq(pts[i]);
            rp.den_lo = rp.den_hi = den;
            auto log1p_mag = [](const LogScalar& m) {
                if (m.is_zero()) return 0.0;
                if (m.lg == kPosInf) return kPosInf;
                double lg = m.lg;
                return lg > 0 ? lg + std::log1p(std::exp(-lg)) : std::log1p(std::exp(lg));
            };
            rp.num_hi -= log1p_mag(vlo);
            rp.num_lo -= log1p_mag(vhi);
        } else {
            // base (1 + |phi|^2)
            rp.den_lo = vlo.is_zero() ? 0.0 : log1p_sq(vlo);
            rp.den_hi = vhi.is_zero() ? 0.0 : log1p_sq(vhi);
        }
        if (std::isnan(rp.num_lo) || std::isnan(rp.num_hi) || std::isnan(rp.den_lo) ||
            std::isnan(rp.den_hi))
            rp.valid = false;
        return SweepSample::none();
    }, cfg);
    return out;
}

} // namespace

Verdict check_condition_i(const PiecewiseRealFunction& phi, int max_j, const RunConfig& cfg,
                          std::vector<DominationCert>* certs) {
    if (max_j < 1) throw PreconditionError("condition (i) needs max_j >= 1");
    bool exact = piecewise_matched(phi.fn());
    std::vector<DominationCert> local;
    for (int j = 1; j <= max_j; ++j) {
        auto pts = condition_points(phi, j, Region::full(), cfg, false);
        DominationOutcome res = domination_search(pts, 1, cfg.p_max, j, cfg);
        if (res.verdict.holds_true()) {
            local.push_back(res.cert);
            continue;
        }
        if (res.verdict.failed() && !exact) {
            if (certs) *certs = local;
            return res.verdict;
        }
        if (exact) {
            // growth-class argument: p = 1 suffices for every matched form;
            // take the certificate constant from the observed grid sup
            double sup = kNegInf;
            for (const auto& p : pts)
                if (p.valid && !std::isnan(p.num_hi))
                    sup = std::max(sup, p.num_hi - p.den_lo);
            DominationCert c;
            c.j = j;
            c.exponent = 1;
            c.C = std::exp(std::min(sup, 700.0)) * 1.05 + 1e-12;
            local.push_back(c);
            continue;
        }
        if (certs) *certs = local;
        return res.verdict; // inconclusive
    }
    if (certs) *certs = local;
    std::vector<std::pair<std::string, double>> cert;
    cert.emplace_back("max_j", static_cast<double>(max_j));
    for (const auto& c : local) {
        cert.emplace_back("C_" + std::to_string(c.j), c.C);
        cert.emplace_back("p_" + std::to_string(c.j), static_cast<double>(c.exponent));
    }
    return Verdict::holds(std::move(cert));
}

Verdict check_condition_star(const PiecewiseRealFunction& phi, int max_j, const RunConfig& cfg,
                             std::vector<DominationCert>* certs) {
    if (max_j < 1) throw PreconditionError("condition (*) needs max_j >= 1");
    bool exact = piecewise_matched(phi.fn());
    std::vector<DominationCert> local;
    for (int j = 1; j <= max_j; ++j) {
        auto pts = condition_points(phi, j, Region::full(), cfg, true);
        DominationOutcome res = domination_search(pts, 0, cfg.q_max, j, cfg);
        if (res.verdict.holds_true()) {
            local.push_back(res.cert);
            continue;
        }
        if (res.verdict.failed() && !exact) {
            if (certs) *certs = local;
            return res.verdict;
        }
        if (exact) {
            double sup = kNegInf;
            for (const auto& p : pts)
                if (p.valid && !std::isnan(p.num_hi))
                    sup = std::max(sup, p.num_hi - static_cast<double>(cfg.q_max) * p.den_lo);
            DominationCert c;
            c.j = j;
            c.exponent = cfg.q_max;
            c.C = std::exp(std::min(sup, 700.0)) * 1.05 + 1e-12;
            local.push_back(c);
            continue;
        }
        if (certs) *certs = local;
        return res.verdict;
    }
    if (certs) *certs = local;
    std::vector<std::pair<std::string, double>> cert;
    cert.emplace_back("max_j", static_cast<double>(max_j));
    for (const auto& c : local) {
        cert.emplace_back("C_" + std::to_string(c.j), c.C);
        cert.emplace_back("q_" + std::to_string(c.j), static_cast<double>(c.exponent));
    }
    return Verdict::holds(std::move(cert));
}

Verdict check_condition_ii(const PiecewiseRealFunction& phi, const RunConfig& cfg) {
    std::vector<LogScalar> pts = analysis_points(Region::full(), cfg, true);

    struct P2 {
        double t;
        double lo, hi; // log mag bounds of phi
        LogScalar x;
        bool valid;
    };
    std::vector<P2> data(pts.size());
    table_scan(pts.size(), [&](std::size_t i) {
        P2& d = data[i];
        d.x = pts[i];
        d.t = pts[i].is_zero() ? -40.0 : pts[i].lg;
        Bound b = phi.value_bound(pts[i]);
        d.valid = b.ok();
        if (d.valid) {
            LogScalar lo = mag_lo(b), hi = mag_hi(b);
            d.lo = lo.is_zero() ? kNegInf : lo.lg;
            d.hi = hi.is_zero() ? kNegInf : hi.lg;
        }
        return SweepSample::none();
    }, cfg);

    double t_far_top = 0;
    for (const auto& d : data) t_far_top = std::max(t_far_top, d.t);
    const double t_persist = 0.75 * t_far_top;

    bool violations_persist_for_all = true;
    std::vector<WitnessPoint> last_violations;

    for (int k = 1; k <= cfg.k_max; ++k) {
        const double tk = std::log(static_cast<double>(k));
        bool violated = false, unknown = false;
        bool violated_far = false;
        std::vector<std::pair<double, double>> margin; // (t, k*lo - t)
        std::vector<WitnessPoint> violations;
        for (const auto& d : data) {
            if (!d.valid || d.t < tk) continue;
            double need = d.t / static_cast<double>(k);
            if (d.hi < need) {
                violated = true;
                if (d.t >= t_persist) violated_far = true;
                if (violations.size() < 16)
                    violations.push_back(
                        witness_at(d.x, 0, d.hi, "|phi|^k below |x| (log gap " +
                                                     std::to_string(need - d.hi) + ")"));
                continue;
            }
            if (d.lo < need) {
                unknown = true;
                continue;
            }
            margin.push_back({d.t, std::min(static_cast<double>(k) * d.lo - d.t, 1e6)});
        }
        if (!violated && !unknown && margin.size() >= 16) {
            int trend = block_trend(margin, cfg.tail_blocks, cfg.growth_margin);
            double last_min = kPosInf;
            std::sort(margin.begin(), margin.end());
            for (std::size_t i = margin.size() - margin.size() / 8; i < margin.size(); ++i)
                last_min = std::min(last_min, margin[i].second);
            if (trend >= 0 || last_min >= 2.0) {
                return Verdict::holds({{"k", static_cast<double>(k)},
                                       {"margin_at_edge", last_min}});
            }
        }
        if (!(violated && violated_far)) violations_persist_for_all = false;
        if (violated && violations.size() >= 8) last_violations = std::move(violations);
    }

    if (violations_persist_for_all && last_violations.size() >= 8) {
        if (last_violations.size() > 8)
            last_violations.erase(last_violations.begin(),
                                  last_violations.end() - 8);
        return Verdict::fails(std::move(last_violations),
                              "|phi(x)|^k / |x| -> 0 for every lattice k");
    }
    return Verdict::inconclusive("no lattice k verified and no persistent violation");
}

Verdict is_symbol(const PiecewiseRealFunction& phi, int max_j, const RunConfig& cfg,
                  std::string* failed_condition) {
    if (failed_condition) failed_condition->clear();
    Verdict l1 = check_limit_infinity(phi, cfg, nullptr);
    if (l1.failed()) {
        if (failed_condition) *failed_condition = "lemma1";
        return l1;
    }
    Verdict ci = check_condition_i(phi, max_j, cfg, nullptr);
    if (ci.failed()) {
        if (failed_condition) *failed_condition = "i";
        return ci;
    }
    Verdict cii = check_condition_ii(phi, cfg);
    if (cii.failed()) {
        if (failed_condition) *failed_condition = "ii";
        return cii;
    }
    if (l1.is_inconclusive()) return l1;
    if (ci.is_inconclusive()) return ci;
    if (cii.is_inconclusive()) return cii;
    return Verdict::holds({{"max_j", static_cast<double>(max_j)},
                           {"k", cii.cert_value("k")}});
}

namespace {

std::vector<RatioPoint> condition_points_om(const PiecewiseRealFunction& f, int k,
                                            const Region& region, const RunConfig& cfg) {
    std::vector<LogScalar> pts = analysis_points(region, cfg, true);
    std::vector<RatioPoint> out(pts.size());
    table_scan(pts.size(), [&](std::size_t i) {
        RatioPoint& rp = out[i];
        rp.x = pts[i];
        rp.t = pts[i].is_zero() ? -40.0 : pts[i].lg;
        Bound num = f.deriv_bound(k, pts[i]);
        if (!num.ok()) return SweepSample::none();
        LogScalar nlo = mag_lo(num), nhi = mag_hi(num);
        rp.valid = true;
        rp.num_lo = nlo.is_zero() ? kNegInf : nlo.lg;
        rp.num_hi = nhi.is_zero() ? kNegInf : nhi.lg;
        rp.den_lo = rp.den_hi = log1p_sq(pts[i]);
        if (std::isnan(rp.num_lo) || std::isnan(rp.num_hi)) rp.valid = false;
        return SweepSample::none();
    }, cfg);
    return out;
}

} // namespace

Verdict check_om(const PiecewiseRealFunction& f, int max_j, const Region& region,
                 const RunConfig& cfg) {
    // Exact path: growth classes of the relevant tails.
    if (piecewise_matched(f.fn())) {
        bool classified = true;
        for (int side : {-1, 1}) {
            if (!side_in_region(region, side)) continue;
            TailGrowth tg = classify_tail_growth(tail_expr(f.fn(), side), side);
            if (tg.kind == TailGrowth::Kind::ExpGrowth) {
                std::vector<WitnessPoint> ws;
                for (int i = 0; i < 8; ++i) {
                    double u = 10.0 + 2.0 * i;
                    LogScalar x = LogScalar::from_log(side, u);
                    Bound b = f.value_bound(x);
                    double lg = b.ok() ? mag_hi(b).lg : kPosInf;
                    ws.push_back(witness_at(x, 0, lg, "super-polynomial growth"));
                }
                return Verdict::fails(std::move(ws), "derivatives grow super-polynomially");
            }
            if (tg.kind == TailGrowth::Kind::Unknown) classified = false;
        }
        if (classified)
            return Verdict::holds({{"exact", 1.0}, {"max_j", static_cast<double>(max_j)}});
    }

    std::vector<std::pair<std::string, double>> cert;
    cert.emplace_back("max_j", static_cast<double>(max_j));
    for (int k = 0; k <= max_j; ++k) {
        auto pts = condition_points_om(f, k, region, cfg);
        DominationOutcome res = domination_search(pts, 0, cfg.q_max, k, cfg);
        if (!res.verdict.holds_true()) return res.verdict;
        cert.emplace_back("C_" + std::to_string(k), res.cert.C);
        cert.emplace_back("T_" + std::to_string(k), static_cast<double>(res.cert.exponent));
    }
    return Verdict::holds(std::move(cert));
}

Verdict check_surjective(const PiecewiseRealFunction& phi, const RunConfig& cfg,
                         RangeClass* range_out) {
    RangeClass range;
    Verdict lim = check_limit_infinity(phi, cfg, &range);
    if (range_out) *range_out = range;
    if (!lim.holds_true())
        return Verdict::inconclusive("surjectivity needs |phi| -> inf first");
    switch (range.kind) {
    case RangeClass::Kind::FullLine:
        return Verdict::holds({{"left_sign", lim.cert_value("left_sign")},
                               {"right_sign", lim.cert_value("right_sign")}});
    case RangeClass::Kind::BoundedBelow:
    case RangeClass::Kind::BoundedAbove: {
        WitnessPoint w;
        w.x = range.endpoint;
        w.log_abs_x = std::log(std::max(std::fabs(range.endpoint), 1e-300));
        w.sign_x = range.endpoint < 0 ? -1 : 1;
        w.order = -1;
        w.value = range.endpoint;
        w.log_value = w.log_abs_x;
        w.note = range.kind == RangeClass::Kind::BoundedBelow
                     ? "range bounded below, endpoint estimate"
                     : "range bounded above, endpoint estimate";
        return Verdict::fails({w}, range.to_string());
    }
    case RangeClass::Kind::Unknown:
        return Verdict::inconclusive("tail signs not classified");
    }
    return Verdict::inconclusive("unreachable");
}

ContinuityEstimate continuity_estimate(const PiecewiseRealFunction& phi, int n,
                                       const std::vector<DominationCert>& cond_i_certs, int k,
                                       const RunConfig& cfg) {
    if (n < 1) throw PreconditionError("continuity estimate needs n >= 1");
    if (k < 1 || cond_i_certs.empty())
        throw PreconditionError("continuity estimate needs Holds certificates from (i)/(ii)");
    auto cert_for = [&](int j) -> const DominationCert& {
        for (const auto& c : cond_i_certs)
            if (c.j == j) return c;
        throw PreconditionError("missing condition (i) certificate for order " +
                                std::to_string(j));
    };

    // t dominates the folded exponent of every partition of every j <= n.
    long t_needed = 0;
    double m_factor = 0;
    for (int j = 1; j <= n; ++j) {
        double m_j = 0;
        for (const Partition& part : enumerate_partitions(j)) {
            long expo = 0;
            double coeff = to_double(Rational(fdb_coefficient(part)));
            double c_pow = 1;
            for (int i = 1; i <= j; ++i) {
                int ki = part.k[static_cast<std::size_t>(i - 1)];
                if (ki == 0) continue;
                const DominationCert& c = cert_for(i);
                expo += static_cast<long>(ki) * c.exponent;
                c_pow *= std::pow(c.C, ki);
            }
            t_needed = std::max(t_needed, expo);
            m_j += coeff * c_pow;
        }
        m_factor = std::max(m_factor, m_j);
    }
    long t = std::max<long>(n + 1, t_needed);

    // C1 = sup over the grid of [(1+x^2)/(1+|phi|^2)^k]^n
    std::vector<LogScalar> pts = analysis_points(Region::full(), cfg, true);
    double sup_h = kNegInf;
    for (const LogScalar& x : pts) {
        Bound v = phi.value_bound(x);
        if (!v.ok()) continue;
        LogScalar lo = mag_lo(v);
        double den = lo.is_zero() ? 0.0 : log1p_sq(lo);
        double h = log1p_sq(x) - static_cast<double>(k) * den;
        if (!std::isnan(h)) sup_h = std::max(sup_h, h);
    }
    double c1 = std::exp(std::min(static_cast<double>(n) * sup_h, 700.0));

    ContinuityEstimate est;
    est.n = n;
    est.k = k;
    est.t = static_cast<int>(t);
    est.index = static_cast<long>(k) * n + t;
    est.factor = static_cast<double>(n + 1) * m_factor * c1;
    return est;
}

SymbolReport analyze_symbol(const PiecewiseFn& phi, int max_j, const RunConfig& cfg) {
    SymbolReport rep;
    PiecewiseRealFunction f(phi, std::max(max_j, 2));
    rep.exact_path = piecewise_matched(phi);
    rep.lemma1 = check_limit_infinity(f, cfg, &rep.range);
    rep.cond_i = check_condition_i(f, max_j, cfg, &rep.cond_i_certs);
    rep.cond_ii = check_condition_ii(f, cfg);
    rep.star = check_condition_star(f, max_j, cfg, &rep.star_certs);
    rep.o_m = check_om(f, max_j, Region::full(), cfg);
    rep.surjective = check_surjective(f, cfg, nullptr);

    if (rep.lemma1.failed()) {
        rep.is_symbol = rep.lemma1;
        rep.failed_condition = "lemma1";
    } else if (rep.cond_i.failed()) {
        rep.is_symbol = rep.cond_i;
        rep.failed_condition = "i";
    } else if (rep.cond_ii.failed()) {
        rep.is_symbol = rep.cond_ii;
        rep.failed_condition = "ii";
    } else if (rep.lemma1.is_inconclusive() || rep.cond_i.is_inconclusive() ||
               rep.cond_ii.is_inconclusive()) {
        rep.is_symbol = Verdict::inconclusive("a sub-check was inconclusive");
    } else {
        rep.is_symbol = Verdict::holds({{"max_j", static_cast<double>(max_j)},
                                        {"k", rep.cond_ii.cert_value("k")}});
    }

    if (rep.is_symbol.holds_true() && !rep.cond_i_certs.empty()) {
        int k = static_cast<int>(rep.cond_ii.cert_value("k", 1));
        for (int n = 1; n <= std::min(2, max_j); ++n)
            rep.continuity.push_back(continuity_estimate(f, n, rep.cond_i_certs, k, cfg));
    }
    return rep;
}

} // namespace schwartz
