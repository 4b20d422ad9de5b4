#include "schwartz/multiplier.hpp"

#include "schwartz/errors.hpp"
#include "schwartz/polynomial.hpp"
#include "schwartz/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace schwartz {

namespace {

double region_clip_lo(const Region& r) {
    return r.kind == Region::Kind::RightRay ? r.endpoint : kNegInf;
}
double region_clip_hi(const Region& r) {
    return r.kind == Region::Kind::LeftRay ? r.endpoint : kPosInf;
}

// exact roots of one piece when its expression stays in the poly*exp class
std::optional<std::vector<PolyRoot>> exact_piece_roots(const Expr& e) {
    if (auto p = to_polynomial(e)) return real_roots(*p);
    if (auto f = match_poly_exp(e)) return real_roots(f->q); // e^p never vanishes
    return std::nullopt;
}

} // namespace

ZeroScan find_zeros(const PiecewiseRealFunction& F, const Region& region, int max_multiplicity,
                    const RunConfig& cfg) {
    ZeroScan scan;
    scan.window = cfg.window_max;
    const double wlo = std::max(-cfg.window_max, region_clip_lo(region));
    const double whi = std::min(cfg.window_max, region_clip_hi(region));

    struct RawZero {
        double x;
        std::optional<Rational> exact;
        int mult;
        bool capped = false;
    };
    std::vector<RawZero> raw;

    bool all_exact = true;
    for (const Piece& piece : F.fn().pieces()) {
        // clip the piece to the region window
        double plo = piece.interval.lo ? to_double(*piece.interval.lo) : wlo;
        double phi_hi = piece.interval.hi ? to_double(*piece.interval.hi) : whi;
        plo = std::max(plo, wlo);
        phi_hi = std::min(phi_hi, whi);
        if (plo > phi_hi) continue;

        if (auto roots = exact_piece_roots(piece.expr)) {
            for (const auto& r : *roots) {
                if (r.location < plo || r.location > phi_hi) continue;
                // breakpoint ownership: the piece containing the point decides
                if (F.fn().piece_index(r.location) !=
                    static_cast<std::size_t>(&piece - F.fn().pieces().data()))
                    continue;
                raw.push_back({r.location, r.exact, r.multiplicity, false});
            }
            continue;
        }
        all_exact = false;

        // numeric scan: sign changes and |F| dips on a dense uniform grid
        const int n = std::max(1024, cfg.base_points * 4);
        auto value_at = [&](double x) -> std::optional<double> {
            Bound b = F.value_bound(LogScalar::from_double(x));
            if (!b.ok() || !b.is_point()) return std::nullopt;
            return b.lo.value();
        };
        double prev_x = plo;
        std::optional<double> prev_v = value_at(plo);
        for (int i = 1; i <= n; ++i) {
            double x = plo + (phi_hi - plo) * static_cast<double>(i) / n;
            std::optional<double> v = value_at(x);
            if (prev_v && v) {
                bool sign_change = (*prev_v < 0 && *v > 0) || (*prev_v > 0 && *v < 0);
                bool dip = *v == 0.0;
                if (sign_change || dip) {
                    double a = prev_x, b = x;
                    for (int it = 0; it < 80 && b - a > 1e-15 * std::max(1.0, std::fabs(a));
                         ++it) {
                        double m = 0.5 * (a + b);
                        auto vm = value_at(m);
                        if (!vm) break;
                        if (*vm == 0.0) {
                            a = b = m;
                            break;
                        }
                        if ((*vm < 0) == (*prev_v < 0))
                            a = m;
                        else
                            b = m;
                    }
                    double root = 0.5 * (a + b);
                    // multiplicity probe: first derivative order that is
                    // clearly nonzero at the root
                    int mult = max_multiplicity;
                    bool capped = true;
                    for (int m = 1; m <= max_multiplicity; ++m) {
                        Bound d = F.deriv_bound(m, LogScalar::from_double(root));
                        if (!d.ok() || !d.is_point()) break;
                        double dv = d.lo.value();
                        if (std::fabs(dv) > cfg.zero_mag_tol * std::max(1.0, std::fabs(dv))) {
                            // relative scale: compare against the derivative a
                            // step away
                            Bound ref = F.deriv_bound(
                                m, LogScalar::from_double(root + (phi_hi - plo) / n));
                            double rv = ref.ok() && ref.is_point() ? ref.lo.value() : dv;
                            if (std::fabs(dv) > 1e-6 * std::max(1.0, std::fabs(rv))) {
                                mult = m;
                                capped = false;
                                break;
                            }
                        }
                    }
                    raw.push_back({root, std::nullopt, mult, capped});
                }
            }
            prev_x = x;
            prev_v = v;
        }
    }
    scan.exact = all_exact;

    std::sort(raw.begin(), raw.end(), [](const RawZero& a, const RawZero& b) { return a.x < b.x; });
    // merge near-duplicates from adjacent scan cells
    std::vector<RawZero> merged;
    for (const auto& r : raw) {
        if (!merged.empty() && std::fabs(merged.back().x - r.x) <
                                   1e-12 * std::max(1.0, std::fabs(r.x))) {
            continue;
        }
        merged.push_back(r);
    }

    for (std::size_t i = 0; i < merged.size(); ++i) {
        ZeroCluster c;
        c.location = merged[i].x;
        c.exact = merged[i].exact;
        c.multiplicity = merged[i].mult;
        c.multiplicity_capped = merged[i].capped;
        if (merged[i].capped) scan.complete = false;
        double d_prev = i > 0 ? merged[i].x - merged[i - 1].x : kPosInf;
        double d_next = i + 1 < merged.size() ? merged[i + 1].x - merged[i].x : kPosInf;
        double nearest = std::min(d_prev, d_next);
        c.isolation_radius = std::isfinite(nearest) ? nearest / 2
                                                    : std::min(1.0, cfg.window_max / 2);
        if (!region.is_full() && merged[i].x == region.endpoint) c.at_region_boundary = true;
        scan.clusters.push_back(c);
    }
    return scan;
}

std::pair<double, double> interval_IxT(double x, double T, const Region& region) {
    if (!(T > 0)) throw PreconditionError("interval I_{x,T} needs T > 0");
    double w = std::pow(1.0 + x * x, -T);
    double lo = x - w, hi = x + w;
    lo = std::max(lo, region_clip_lo(region));
    hi = std::min(hi, region_clip_hi(region));
    return {lo, hi};
}

namespace {

// Sample points for the (a)/(b) checks: log-spaced across the window plus a
// dense geometric approach to every zero cluster (avoiding the zeros
// themselves, where the strict inequality degenerates to 0 > 0).
std::vector<double> ab_samples(const Region& region, const ZeroScan& zeros,
                               const RunConfig& cfg) {
    std::set<double> xs;
    RunConfig grid_cfg = cfg;
    grid_cfg.base_points = std::max(512, cfg.base_points / 4);
    for (const LogScalar& p : log_grid(region, grid_cfg)) {
        double v = p.value();
        if (std::isfinite(v)) xs.insert(v);
    }
    for (const ZeroCluster& z : zeros.clusters) {
        double r = std::max(z.isolation_radius, 1e-3);
        for (int i = 0; i <= 24; ++i) {
            double off = r * std::ldexp(1.0, -i);
            for (double x : {z.location - off, z.location + off})
                if (region.contains(x)) xs.insert(x);
        }
    }
    std::vector<double> out(xs.begin(), xs.end());
    // never test exactly at a zero
    for (const ZeroCluster& z : zeros.clusters) {
        auto it = std::find(out.begin(), out.end(), z.location);
        if (it != out.end()) out.erase(it);
    }
    return out;
}

} // namespace

Verdict check_conditions_ab(const PiecewiseRealFunction& F, const ClosedRangeParams& params,
                            const Region& region, const ZeroScan& zeros, const RunConfig& cfg) {
    if (params.N < 1 || !(params.T > 0) || !(params.c > 0))
        throw PreconditionError("conditions (a)/(b) need N >= 1, T > 0, c > 0");
    if (!zeros.complete)
        return Verdict::inconclusive("zero scan incomplete (multiplicity cap reached)");

    const std::vector<double> samples = ab_samples(region, zeros, cfg);
    const double log_c = std::log(params.c);

    std::vector<WitnessPoint> violations;
    std::string ambiguous;
    for (double x : samples) {
        auto [ilo, ihi] = interval_IxT(x, params.T, region);

        int count = 0;
        double prod_log = 0.0;
        bool at_zero = false;
        for (const ZeroCluster& z : zeros.clusters) {
            if (z.location < ilo || z.location > ihi) continue;
            count += z.multiplicity;
            double d = std::fabs(x - z.location);
            if (d == 0.0) {
                at_zero = true;
                break;
            }
            prod_log += z.multiplicity * std::log(d);
        }
        if (at_zero) continue;

        if (count >= params.N) {
            WitnessPoint w;
            w.x = x;
            w.log_abs_x = std::log(std::max(std::fabs(x), 1e-300));
            w.sign_x = x < 0 ? -1 : 1;
            w.order = -1;
            w.value = count;
            w.log_value = std::log(static_cast<double>(count));
            w.note = "zero count in I_{x,T} reached N";
            violations.push_back(w);
            if (violations.size() >= 8) break;
            continue;
        }

        Bound v = F.value_bound(LogScalar::from_double(x));
        if (!v.ok()) {
            if (ambiguous.empty()) ambiguous = "evaluation failed inside the sample set";
            continue;
        }
        LogScalar flo = mag_lo(v), fhi = mag_hi(v);
        double w_log = params.T * log1p_sq(LogScalar::from_double(x));
        double rhs = log_c + prod_log;
        double lhs_lo = flo.is_zero() ? kNegInf : w_log + flo.lg;
        double lhs_hi = fhi.is_zero() ? kNegInf : w_log + fhi.lg;
        if (lhs_lo > rhs) continue; // certified satisfied
        if (lhs_hi <= rhs) {
            WitnessPoint w;
            w.x = x;
            w.log_abs_x = std::log(std::max(std::fabs(x), 1e-300));
            w.sign_x = x < 0 ? -1 : 1;
            w.order = -1;
            w.value = std::exp(lhs_hi - rhs);
            w.log_value = lhs_hi - rhs;
            w.note = "weighted |F| below the zero product bound";
            violations.push_back(w);
            if (violations.size() >= 8) break;
            continue;
        }
        if (ambiguous.empty()) {
            std::ostringstream os;
            os << "bound straddles the threshold at x=" << x;
            ambiguous = os.str();
        }
    }

    if (!violations.empty())
        return Verdict::fails(std::move(violations), "conditions (a)/(b) violated");
    if (!ambiguous.empty()) return Verdict::inconclusive(ambiguous);
    return Verdict::holds({{"N", static_cast<double>(params.N)},
                           {"T", params.T},
                           {"c", params.c},
                           {"samples", static_cast<double>(samples.size())}});
}

Verdict closed_range_multiplier(const PiecewiseRealFunction& F, const Region& region,
                                const RunConfig& cfg, MultiplierReport* report) {
    MultiplierReport local;
    local.region = region.to_string();

    local.om = check_om(F, cfg.max_j, region, cfg);
    if (!local.om.holds_true()) {
        local.closed_range =
            local.om.failed()
                ? Verdict::fails(local.om.witnesses(), "multiplier condition fails: " +
                                                           local.om.reason())
                : Verdict::inconclusive("multiplier condition inconclusive");
        if (report) *report = local;
        return local.closed_range;
    }

    local.zeros = find_zeros(F, region, cfg.mult_n_max + 2, cfg);
    if (!local.zeros.complete) {
        local.closed_range = Verdict::inconclusive("zero scan incomplete");
        if (report) *report = local;
        return local.closed_range;
    }

    // Structural obstruction: the weighted |F| tail sinks below every lattice
    // constant even at the largest exponent, so no (T, c) can work.
    {
        std::vector<LogScalar> pts = log_grid(region, cfg);
        const double t_tail = std::log(cfg.tail_lo);
        const double c_min_log = cfg.c_pow_min * std::log(2.0);
        const double T_top = cfg.t_lattice.back();
        bool obstructed = false;
        std::vector<WitnessPoint> ws;
        for (int side : {-1, 1}) {
            if (region.kind == Region::Kind::RightRay && side < 0 && region.endpoint >= -cfg.tail_lo)
                continue;
            if (region.kind == Region::Kind::LeftRay && side > 0 && region.endpoint <= cfg.tail_lo)
                continue;
            std::vector<std::pair<double, double>> trend_pts;
            std::vector<std::pair<double, const LogScalar*>> args;
            for (const LogScalar& x : pts) {
                if (x.sign != side || x.is_zero() || x.lg < t_tail) continue;
                Bound v = F.value_bound(x);
                if (!v.ok()) continue;
                LogScalar hi = mag_hi(v);
                double y = T_top * log1p_sq(x) + (hi.is_zero() ? -1e4 : hi.lg);
                trend_pts.push_back({x.lg, y});
                args.push_back({x.lg, &x});
            }
            if (trend_pts.size() < 16) continue;
            int tr = block_trend(trend_pts, cfg.tail_blocks, cfg.growth_margin);
            double last = kNegInf;
            std::sort(trend_pts.begin(), trend_pts.end());
            for (std::size_t i = trend_pts.size() - trend_pts.size() / 8;
                 i < trend_pts.size(); ++i)
                last = std::max(last, trend_pts[i].second);
            if (tr < 0 && last < c_min_log - cfg.growth_margin) {
                obstructed = true;
                std::sort(args.begin(), args.end());
                for (std::size_t i = args.size() >= 8 ? args.size() - 8 : 0; i < args.size();
                     ++i) {
                    WitnessPoint w;
                    const LogScalar& x = *args[i].second;
                    w.x = x.value();
                    w.log_abs_x = x.lg;
                    w.sign_x = x.sign;
                    w.order = -1;
                    Bound v = F.value_bound(x);
                    w.log_value = v.ok() ? T_top * log1p_sq(x) + mag_hi(v).lg : kNegInf;
                    w.value = std::exp(w.log_value);
                    w.note = "weighted |F| tail below every lattice c";
                    ws.push_back(w);
                }
            }
        }
        if (obstructed && !ws.empty()) {
            local.closed_range = Verdict::fails(std::move(ws), "weighted |F| tail sinks to zero");
            if (report) *report = local;
            return local.closed_range;
        }
    }

    // Zero-accumulation obstruction: some I_{x,T} exceeds every lattice N for
    // every lattice T.
    {
        bool accum_all_t = true;
        for (double T : cfg.t_lattice) {
            int worst = 0;
            // count around each cluster center offset by its radius
            for (const ZeroCluster& z : local.zeros.clusters) {
                double x = z.location + z.isolation_radius / 2;
                auto [ilo, ihi] = interval_IxT(x, T, region);
                int count = 0;
                for (const ZeroCluster& other : local.zeros.clusters)
                    if (other.location >= ilo && other.location <= ihi)
                        count += other.multiplicity;
                worst = std::max(worst, count);
            }
            if (worst < cfg.mult_n_max) {
                accum_all_t = false;
                break;
            }
        }
        if (accum_all_t && !local.zeros.clusters.empty()) {
            std::vector<WitnessPoint> ws;
            for (const ZeroCluster& z : local.zeros.clusters) {
                WitnessPoint w;
                w.x = z.location;
                w.log_abs_x = std::log(std::max(std::fabs(z.location), 1e-300));
                w.sign_x = z.location < 0 ? -1 : 1;
                w.order = -1;
                w.value = z.multiplicity;
                w.log_value = std::log(static_cast<double>(z.multiplicity));
                w.note = "zero cluster";
                ws.push_back(w);
                if (ws.size() >= 8) break;
            }
            if (!ws.empty()) {
                local.closed_range =
                    Verdict::fails(std::move(ws), "zeros accumulate faster than I_{x,T} shrinks");
                if (report) *report = local;
                return local.closed_range;
            }
        }
    }

    // Lattice search, first certified triple wins (N asc, T asc, c desc).
    for (int N = 1; N <= cfg.mult_n_max; ++N) {
        for (double T : cfg.t_lattice) {
            for (int cp = 0; cp >= cfg.c_pow_min; --cp) {
                ClosedRangeParams params{N, T, std::ldexp(1.0, cp)};
                Verdict v = check_conditions_ab(F, params, region, local.zeros, cfg);
                if (v.holds_true()) {
                    local.params = params;
                    local.closed_range = v;
                    if (report) *report = local;
                    return v;
                }
            }
        }
    }
    local.closed_range =
        Verdict::inconclusive("no certificate on the (N,T,c) lattice and no obstruction found");
    if (report) *report = local;
    return local.closed_range;
}

} // namespace schwartz
