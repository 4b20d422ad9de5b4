#include "schwartz/seminorm.hpp"

#include "schwartz/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace schwartz {

const char* tail_status_name(TailStatus s) {
    switch (s) {
    case TailStatus::Decaying:
        return "decaying";
    case TailStatus::Growing:
        return "growing";
    case TailStatus::Flat:
        return "flat";
    case TailStatus::Ambiguous:
        return "ambiguous";
    }
    return "?";
}

namespace {

WitnessPoint make_witness(const LogScalar& x, int order, double log_value) {
    WitnessPoint w;
    w.x = x.value();
    w.log_abs_x = x.lg;
    w.sign_x = x.sign;
    w.order = order;
    w.log_value = log_value;
    w.value = std::exp(log_value);
    return w;
}

} // namespace

TailFit classify_tail(const std::vector<TailSample>& samples, const RunConfig& cfg) {
    TailFit fit;
    if (samples.empty()) {
        fit.status = TailStatus::Ambiguous;
        return fit;
    }

    // Per-sample certified log magnitudes (lower / upper).
    struct Row {
        double t;
        double lo; // -inf when the bound admits zero
        double hi;
        LogScalar x;
        bool valid;
    };
    std::vector<Row> rows;
    rows.reserve(samples.size());
    bool any_valid = false, all_zero = true;
    for (const TailSample& s : samples) {
        Row r;
        r.t = s.x.lg;
        r.x = s.x;
        r.valid = s.value.ok();
        if (r.valid) {
            LogScalar lo = mag_lo(s.value), hi = mag_hi(s.value);
            r.lo = lo.is_zero() ? kNegInf : lo.lg;
            r.hi = hi.is_zero() ? kNegInf : hi.lg;
            any_valid = true;
            if (r.hi != kNegInf) all_zero = false;
        } else {
            r.lo = r.hi = kNegInf;
        }
        rows.push_back(r);
    }
    if (!any_valid) {
        fit.status = TailStatus::Ambiguous;
        return fit;
    }
    if (all_zero) {
        fit.status = TailStatus::Decaying;
        fit.slope = kNegInf;
        return fit;
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.t < b.t; });

    // Block maxima over tail_blocks slices of the t-range.
    const int nb = std::max(2, cfg.tail_blocks);
    double t0 = rows.front().t, t1 = rows.back().t;
    if (t1 <= t0) {
        fit.status = TailStatus::Ambiguous;
        return fit;
    }
    std::vector<double> block_hi(static_cast<std::size_t>(nb), kNegInf);
    std::vector<double> block_lo(static_cast<std::size_t>(nb), kNegInf);
    std::vector<const Row*> block_lo_arg(static_cast<std::size_t>(nb), nullptr);
    for (const Row& r : rows) {
        if (!r.valid) continue;
        int b = std::min(nb - 1, static_cast<int>((r.t - t0) / (t1 - t0) * nb));
        std::size_t bi = static_cast<std::size_t>(b);
        block_hi[bi] = std::max(block_hi[bi], r.hi);
        if (r.lo > block_lo[bi]) {
            block_lo[bi] = r.lo;
            block_lo_arg[bi] = &r;
        }
    }

    auto trend = [&](const std::vector<double>& blocks, double margin) {
        // +1 rising, -1 falling, 0 neither; ignores empty blocks
        std::vector<double> vals;
        for (double v : blocks)
            if (v != kNegInf) vals.push_back(v);
        if (vals.size() < 2) return 0;
        bool rising = true, falling = true;
        for (std::size_t i = 1; i < vals.size(); ++i) {
            if (vals[i] > vals[i - 1] + 0.5) falling = false;
            if (vals[i] < vals[i - 1] - 0.5) rising = false;
        }
        double total = vals.back() - vals.front();
        if (rising && total >= margin) return 1;
        if (falling && total <= -margin) return -1;
        return 0;
    };

    // Trailing zeros (compact support) make the hi-blocks fall to -inf.
    int hi_trend = trend(block_hi, cfg.growth_margin);
    int lo_trend = trend(block_lo, cfg.growth_margin);

    // Regression on the upper bounds for the exponent estimate.
    std::vector<std::pair<double, double>> pts;
    for (const Row& r : rows)
        if (r.valid && r.hi != kNegInf) pts.push_back({r.t, r.hi});
    double slope = 0, residual = 0;
    if (pts.size() >= 2) std::tie(slope, residual) = fit_line(pts);
    fit.slope = slope;
    fit.residual = residual;
    // super-polynomial: log-value against log|x| accelerates beyond any line
    fit.super_polynomial = std::fabs(slope) > 2.0 * static_cast<double>(64) ||
                           (residual > 5.0 && std::fabs(slope) > 8.0);

    if (hi_trend < 0 || (block_hi.back() == kNegInf && hi_trend <= 0)) {
        fit.status = TailStatus::Decaying;
        return fit;
    }
    if (lo_trend > 0) {
        fit.status = TailStatus::Growing;
        for (const auto* arg : block_lo_arg)
            if (arg) fit.growth_witnesses.push_back(make_witness(arg->x, -1, arg->lo));
        return fit;
    }
    if (pts.size() < 2 || residual > cfg.residual_max) {
        fit.status = TailStatus::Ambiguous;
        return fit;
    }
    if (slope < -cfg.slope_eps) {
        fit.status = TailStatus::Decaying;
    } else if (slope > cfg.slope_eps) {
        // growth needs the certified lower bound to follow
        std::vector<std::pair<double, double>> lo_pts;
        for (const Row& r : rows)
            if (r.valid && r.lo != kNegInf) lo_pts.push_back({r.t, r.lo});
        if (lo_pts.size() >= 2 && fit_line(lo_pts).first > cfg.slope_eps) {
            fit.status = TailStatus::Growing;
            std::size_t step = std::max<std::size_t>(1, lo_pts.size() / 8);
            for (std::size_t i = 0; i < rows.size(); i += step)
                if (rows[i].valid && rows[i].lo != kNegInf)
                    fit.growth_witnesses.push_back(make_witness(rows[i].x, -1, rows[i].lo));
            fit.status = TailStatus::Growing;
        } else {
            fit.status = TailStatus::Ambiguous;
        }
    } else {
        fit.status = TailStatus::Flat;
    }
    return fit;
}

namespace {

// Evaluate f^{(j)} once per (point, j); reused by every weight exponent.
struct EvalMatrix {
    std::vector<LogScalar> pts;
    int max_j = 0;
    std::vector<Bound> values; // pts.size() x (max_j+1), row-major by point

    const Bound& at(std::size_t pi, int j) const {
        return values[pi * static_cast<std::size_t>(max_j + 1) + static_cast<std::size_t>(j)];
    }
};

EvalMatrix evaluate_matrix(const RealFunction& f, const std::vector<LogScalar>& pts, int max_j,
                           const RunConfig& cfg) {
    EvalMatrix m;
    m.pts = pts;
    m.max_j = max_j;
    m.values.resize(pts.size() * static_cast<std::size_t>(max_j + 1));
    const std::size_t stride = static_cast<std::size_t>(max_j + 1);
    table_scan(pts.size(), [&](std::size_t pi) {
        for (int j = 0; j <= max_j; ++j)
            m.values[pi * stride + static_cast<std::size_t>(j)] = f.deriv_bound(j, pts[pi]);
        return SweepSample::none();
    }, cfg);
    return m;
}

std::vector<TailSample> tail_samples(const EvalMatrix& m, int m_weight, int j, int side,
                                     double t_min, bool include_far) {
    std::vector<TailSample> out;
    for (std::size_t pi = 0; pi < m.pts.size(); ++pi) {
        const LogScalar& x = m.pts[pi];
        if (x.sign != side || x.lg < t_min) continue;
        if (!include_far && x.lg > std::log(1e308)) continue;
        const Bound& b = m.at(pi, j);
        Bound weighted = b;
        if (weighted.ok()) {
            LogScalar w = LogScalar::from_log(1, static_cast<double>(m_weight) * log1p_sq(x));
            if (m_weight == 0) w = LogScalar::from_double(1.0);
            weighted = b_mul(Bound::point(w), b);
        }
        out.push_back({x, weighted});
    }
    return out;
}

} // namespace

SeminormEstimate seminorm_pi(const RealFunction& f, int n, const Region& region,
                             const RunConfig& cfg) {
    if (n < 0) throw PreconditionError("seminorm order must be >= 0");
    SeminormEstimate est;
    est.n = n;
    est.window_max = cfg.window_max;
    est.base_points = cfg.base_points;
    est.refine_depth = cfg.refine_depth;

    std::vector<LogScalar> pts = log_grid(region, cfg);
    std::sort(pts.begin(), pts.end(), ls_less);
    pts.erase(std::unique(pts.begin(), pts.end(), ls_equal), pts.end());

    const std::size_t np = pts.size();
    const std::size_t orders = static_cast<std::size_t>(n) + 1;

    auto score_at = [&](const LogScalar& x, int j) -> SweepSample {
        SweepSample s;
        Bound b = f.deriv_bound(j, x);
        if (!b.ok()) return s;
        LogScalar lo = mag_lo(b);
        double raw = lo.is_zero() ? kNegInf : lo.lg;
        s.valid = true;
        s.score = static_cast<double>(n) * log1p_sq(x) + raw;
        s.abs_x_lg = x.is_zero() ? kNegInf : x.lg;
        s.sign_x = x.sign;
        s.order = j;
        s.x = x;
        s.aux = raw;
        return s;
    };

    SweepSample best = sup_scan(np * orders, [&](std::size_t i) {
        std::size_t pi = i / orders;
        int j = static_cast<int>(i % orders);
        return score_at(pts[pi], j);
    }, cfg);

    // Refinement: golden-section around the strongest discrete local maxima.
    struct Peak {
        SweepSample s;
        std::size_t pi;
    };
    std::vector<Peak> peaks;
    {
        std::vector<SweepSample> table = table_scan(np * orders, [&](std::size_t i) {
            std::size_t pi = i / orders;
            int j = static_cast<int>(i % orders);
            return score_at(pts[pi], j);
        }, cfg);
        for (std::size_t pi = 1; pi + 1 < np; ++pi) {
            for (std::size_t j = 0; j < orders; ++j) {
                const SweepSample& cur = table[pi * orders + j];
                const SweepSample& prev = table[(pi - 1) * orders + j];
                const SweepSample& next = table[(pi + 1) * orders + j];
                if (!cur.valid) continue;
                double ps = prev.valid ? prev.score : kNegInf;
                double ns = next.valid ? next.score : kNegInf;
                if (cur.score >= ps && cur.score >= ns) peaks.push_back({cur, pi});
            }
        }
    }
    std::sort(peaks.begin(), peaks.end(),
              [](const Peak& a, const Peak& b) { return sweep_better(a.s, b.s); });
    if (static_cast<int>(peaks.size()) > cfg.refine_peaks)
        peaks.resize(static_cast<std::size_t>(cfg.refine_peaks));

    for (const Peak& pk : peaks) {
        const LogScalar& left = pts[pk.pi - 1];
        const LogScalar& right = pts[pk.pi + 1];
        int j = pk.s.order;
        // choose a bracket coordinate: log|x| within one sign branch,
        // linear when the bracket touches zero or mixes signs
        bool log_coord = left.sign == right.sign && left.sign != 0;
        auto eval_coord = [&](double t) {
            LogScalar x = log_coord ? LogScalar::from_log(left.sign, t)
                                    : LogScalar::from_double(t);
            SweepSample s = score_at(x, j);
            return s.valid ? s.score : kNegInf;
        };
        double lo = log_coord ? left.lg : left.value();
        double hi = log_coord ? right.lg : right.value();
        if (!(lo < hi)) continue;
        auto [arg, val] = golden_max(lo, hi, 4 * cfg.refine_depth, eval_coord);
        if (val > best.score) {
            LogScalar x = log_coord ? LogScalar::from_log(left.sign, arg)
                                    : LogScalar::from_double(arg);
            SweepSample s = score_at(x, j);
            if (sweep_better(s, best)) best = s;
        }
    }

    if (best.valid) {
        est.log_value = best.score;
        est.value = std::exp(best.score);
        est.witness_x = best.x;
        est.witness_order = best.order;
    }

    // Tail status of the integrand pairs (m = n, j = 0..n), near window only.
    EvalMatrix mat = evaluate_matrix(f, pts, n, cfg);
    TailStatus tail = TailStatus::Decaying;
    auto rank = [](TailStatus s) {
        switch (s) {
        case TailStatus::Growing:
            return 3;
        case TailStatus::Ambiguous:
            return 2;
        case TailStatus::Flat:
            return 1;
        case TailStatus::Decaying:
            return 0;
        }
        return 2;
    };
    auto merge = [&](TailStatus s) {
        if (rank(s) > rank(tail)) tail = s;
    };
    for (int j = 0; j <= n; ++j) {
        for (int side : {-1, 1}) {
            if (!region.is_full()) {
                if (region.kind == Region::Kind::RightRay && side < 0 &&
                    region.endpoint >= -cfg.tail_lo)
                    continue;
                if (region.kind == Region::Kind::LeftRay && side > 0 &&
                    region.endpoint <= cfg.tail_lo)
                    continue;
            }
            auto samples = tail_samples(mat, n, j, side, std::log(cfg.tail_lo), false);
            if (samples.size() < 8) continue;
            merge(classify_tail(samples, cfg).status);
        }
    }
    est.tail = tail;
    return est;
}

DecayReport decay_report(const RealFunction& f, int max_m, int max_j, const Region& region,
                         const RunConfig& cfg) {
    DecayReport rep;
    std::vector<LogScalar> pts = log_grid(region, cfg);
    EvalMatrix mat = evaluate_matrix(f, pts, max_j, cfg);
    for (int m = 0; m <= max_m; ++m) {
        for (int j = 0; j <= max_j; ++j) {
            PairDecay pd;
            pd.m = m;
            pd.j = j;
            for (int side : {-1, 1}) {
                bool skip = false;
                if (region.kind == Region::Kind::RightRay && side < 0 &&
                    region.endpoint >= -cfg.tail_lo)
                    skip = true;
                if (region.kind == Region::Kind::LeftRay && side > 0 &&
                    region.endpoint <= cfg.tail_lo)
                    skip = true;
                TailFit fit;
                if (!skip) {
                    auto samples = tail_samples(mat, m, j, side, std::log(cfg.tail_lo), false);
                    fit = samples.size() >= 8 ? classify_tail(samples, cfg) : TailFit{};
                    if (samples.size() < 8) fit.status = TailStatus::Decaying; // tail outside region
                }
                else
                    fit.status = TailStatus::Decaying;
                if (side < 0) {
                    pd.left = fit.status;
                    pd.exponent_left = fit.slope;
                } else {
                    pd.right = fit.status;
                    pd.exponent_right = fit.slope;
                }
                pd.super_polynomial = pd.super_polynomial || fit.super_polynomial;
            }
            rep.pairs.push_back(pd);
        }
    }
    return rep;
}

Verdict membership_S(const RealFunction& f, int max_order, const Region& region,
                     const RunConfig& cfg) {
    if (max_order < 1) throw PreconditionError("membership check needs max_order >= 1");
    std::vector<LogScalar> pts = log_grid(region, cfg);
    std::sort(pts.begin(), pts.end(), ls_less);
    pts.erase(std::unique(pts.begin(), pts.end(), ls_equal), pts.end());
    EvalMatrix mat = evaluate_matrix(f, pts, max_order, cfg);

    std::string ambiguous_reason;
    for (int m = 0; m <= max_order; ++m) {
        for (int j = 0; j <= max_order; ++j) {
            for (int side : {-1, 1}) {
                if (region.kind == Region::Kind::RightRay && side < 0 &&
                    region.endpoint >= -cfg.tail_lo)
                    continue;
                if (region.kind == Region::Kind::LeftRay && side > 0 &&
                    region.endpoint <= cfg.tail_lo)
                    continue;
                auto samples = tail_samples(mat, m, j, side, std::log(cfg.tail_lo), false);
                if (samples.size() < 8) continue;
                TailFit fit = classify_tail(samples, cfg);
                if (fit.status == TailStatus::Growing) {
                    std::vector<WitnessPoint> ws = fit.growth_witnesses;
                    for (auto& w : ws) w.order = j;
                    std::ostringstream note;
                    note << "weighted derivative grows: pair (m=" << m << ", j=" << j
                         << "), side " << (side < 0 ? "left" : "right");
                    return Verdict::fails(std::move(ws), note.str());
                }
                if (fit.status != TailStatus::Decaying && ambiguous_reason.empty()) {
                    std::ostringstream note;
                    note << "tail fit " << tail_status_name(fit.status) << " for pair (m=" << m
                         << ", j=" << j << "), side " << (side < 0 ? "left" : "right");
                    ambiguous_reason = note.str();
                }
            }
        }
    }
    if (!ambiguous_reason.empty()) return Verdict::inconclusive(ambiguous_reason);

    // finite grid sup over every pair
    double worst = kNegInf;
    for (std::size_t pi = 0; pi < pts.size(); ++pi)
        for (int j = 0; j <= max_order; ++j) {
            const Bound& b = mat.at(pi, j);
            if (!b.ok()) continue;
            LogScalar hi = mag_hi(b);
            if (!hi.is_zero())
                worst = std::max(worst,
                                 static_cast<double>(max_order) * log1p_sq(pts[pi]) + hi.lg);
        }
    if (worst == kPosInf)
        return Verdict::inconclusive("weighted sup saturated the log range");
    return Verdict::holds({{"max_order", static_cast<double>(max_order)},
                           {"log_grid_sup", worst},
                           {"window_max", cfg.window_max}});
}

DNormResult d_norm(const RealFunction& f, int n, double a, double b, const RunConfig& cfg) {
    if (!(a < b)) throw PreconditionError("d_norm needs a < b");
    if (n < 0) throw PreconditionError("d_norm order must be >= 0");
    DNormResult res;
    std::vector<LogScalar> pts = uniform_grid(a, b, static_cast<std::size_t>(cfg.base_points));
    for (int k = 0; k <= n; ++k) {
        SweepSample best = sup_scan(pts.size(), [&](std::size_t i) {
            SweepSample s;
            Bound v = f.deriv_bound(k, pts[i]);
            if (!v.ok()) return s;
            LogScalar lo = mag_lo(v);
            s.valid = true;
            s.score = lo.is_zero() ? kNegInf : lo.lg;
            s.abs_x_lg = pts[i].is_zero() ? kNegInf : pts[i].lg;
            s.sign_x = pts[i].sign;
            s.order = k;
            s.x = pts[i];
            return s;
        }, cfg);
        double sup = 0;
        if (best.valid && best.score != kNegInf) {
            // refine around the peak in linear coordinates
            double xb = best.x.value();
            double h = (b - a) / static_cast<double>(cfg.base_points - 1);
            double lo = std::max(a, xb - h), hi = std::min(b, xb + h);
            auto g = [&](double t) {
                Bound v = f.deriv_bound(k, LogScalar::from_double(t));
                if (!v.ok()) return kNegInf;
                LogScalar m = mag_lo(v);
                return m.is_zero() ? kNegInf : m.lg;
            };
            auto [arg, val] = golden_max(lo, hi, 4 * cfg.refine_depth, g);
            (void)arg;
            sup = std::exp(std::max(best.score, val));
        }
        res.per_order.push_back(sup);
        res.value += sup;
    }

    // support-leak probe outside [a, b]
    RunConfig probe_cfg = cfg;
    probe_cfg.base_points = 256;
    for (const LogScalar& x : log_grid(Region::full(), probe_cfg)) {
        double xv = x.value();
        if (xv >= a && xv <= b) continue;
        Bound v = f.value_bound(x);
        if (!v.ok()) continue;
        LogScalar hi = mag_hi(v);
        if (!hi.is_zero() && hi.lg > std::log(cfg.tol_verify)) {
            res.support_leak = true;
            break;
        }
    }
    return res;
}

void emit_weighted_csv(std::ostream& os, const RealFunction& f, int n, const Region& region,
                       const RunConfig& cfg) {
    os << "x,j,weight_exponent,value,log_value\n";
    std::vector<LogScalar> pts = log_grid(region, cfg);
    std::sort(pts.begin(), pts.end(), ls_less);
    const std::size_t orders = static_cast<std::size_t>(n) + 1;
    std::vector<SweepSample> table = table_scan(pts.size() * orders, [&](std::size_t i) {
        std::size_t pi = i / orders;
        int j = static_cast<int>(i % orders);
        SweepSample s;
        Bound b = f.deriv_bound(j, pts[pi]);
        if (!b.ok()) return s;
        LogScalar lo = mag_lo(b);
        s.valid = true;
        s.score = static_cast<double>(n) * log1p_sq(pts[pi]) + (lo.is_zero() ? kNegInf : lo.lg);
        s.x = pts[pi];
        s.order = j;
        return s;
    }, cfg);
    char buf[160];
    for (const SweepSample& s : table) {
        if (!s.valid) continue;
        std::snprintf(buf, sizeof buf, "%.17g,%d,%d,%.17g,%.17g\n", s.x.value(), s.order, n,
                      std::exp(s.score), s.score);
        os << buf;
    }
}

} // namespace schwartz
