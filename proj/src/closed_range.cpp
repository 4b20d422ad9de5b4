#include "schwartz/closed_range.hpp"

#include "schwartz/errors.hpp"
#include "schwartz/faa_di_bruno.hpp"
#include "schwartz/parser.hpp"
#include "schwartz/seminorm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace schwartz {

const char* flag_name(Flag f) {
    switch (f) {
    case Flag::Yes:
        return "yes";
    case Flag::No:
        return "no";
    case Flag::Auto:
        return "auto";
    case Flag::Unknown:
        return "unknown";
    }
    return "?";
}

const char* closed_range_status_name(ClosedRangeStatus s) {
    switch (s) {
    case ClosedRangeStatus::Closed:
        return "closed";
    case ClosedRangeStatus::NotClosed:
        return "not_closed";
    case ClosedRangeStatus::Inconclusive:
        return "inconclusive";
    }
    return "?";
}

namespace {

std::string verdict_summary(const Verdict& v) {
    std::string s = outcome_name(v.outcome());
    if (v.is_inconclusive() && !v.reason().empty()) s += " (" + v.reason() + ")";
    return s;
}

// monotone branches of phi between consecutive critical points
struct Branch {
    double lo, hi;   // x-interval
    double vlo, vhi; // value interval (sorted)
};

std::vector<Branch> monotone_branches(const PiecewiseRealFunction& phi,
                                      const PiecewiseRealFunction& dphi, double window,
                                      const RunConfig& cfg) {
    RunConfig zcfg = cfg;
    zcfg.window_max = window;
    ZeroScan zeros = find_zeros(dphi, Region::full(), 4, zcfg);
    std::vector<double> cuts{-window};
    for (const ZeroCluster& z : zeros.clusters) cuts.push_back(z.location);
    cuts.push_back(window);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<Branch> out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        Branch b;
        b.lo = cuts[i];
        b.hi = cuts[i + 1];
        if (!(b.hi > b.lo)) continue;
        double va = phi.fn().evaluate(b.lo), vb = phi.fn().evaluate(b.hi);
        b.vlo = std::min(va, vb);
        b.vhi = std::max(va, vb);
        out.push_back(b);
    }
    return out;
}

// bisection solve phi(x) = y on a monotone branch
std::optional<double> branch_solve(const PiecewiseRealFunction& phi, const Branch& br, double y) {
    auto val = [&](double x) -> std::optional<double> {
        Bound b = phi.value_bound(LogScalar::from_double(x));
        if (!b.ok() || !b.is_point()) return std::nullopt;
        double v = b.lo.value();
        if (!std::isfinite(v)) return std::nullopt;
        return v;
    };
    auto fa = val(br.lo), fb = val(br.hi);
    if (!fa || !fb) return std::nullopt;
    double a = br.lo, b = br.hi;
    double ga = *fa - y, gb = *fb - y;
    if (ga == 0) return a;
    if (gb == 0) return b;
    if ((ga < 0) == (gb < 0)) return std::nullopt;
    for (int i = 0; i < 100 && b - a > 1e-14 * std::max(1.0, std::fabs(a)); ++i) {
        double m = 0.5 * (a + b);
        auto gm = val(m);
        if (!gm) return std::nullopt;
        double g = *gm - y;
        if (g == 0) return m;
        if ((g < 0) == (ga < 0)) {
            a = m;
            ga = g;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

} // namespace

Verdict cinf_heuristic(const PiecewiseRealFunction& phi, const SymbolReport& symbol,
                       const RunConfig& cfg) {
    const double window = std::min(cfg.window_max, 64.0);
    PiecewiseRealFunction dphi(phi.fn().derivative(1), 2);
    std::vector<Branch> branches = monotone_branches(phi, dphi, window, cfg);
    if (branches.empty()) return Verdict::inconclusive("unknown: no monotone branches found");

    // sampled attained values; for non-surjective symbols an endpoint
    // neighborhood is excluded (endpoint values may be attained only at
    // critical points without obstructing anything)
    double vmin = kPosInf, vmax = kNegInf;
    for (const Branch& b : branches) {
        vmin = std::min(vmin, b.vlo);
        vmax = std::max(vmax, b.vhi);
    }
    vmin = std::max(vmin, -1e6);
    vmax = std::min(vmax, 1e6);
    if (symbol.range.kind == RangeClass::Kind::BoundedBelow)
        vmin = std::max(vmin, symbol.range.endpoint) +
               1e-2 * (1 + std::fabs(symbol.range.endpoint));
    if (symbol.range.kind == RangeClass::Kind::BoundedAbove)
        vmax = std::min(vmax, symbol.range.endpoint) -
               1e-2 * (1 + std::fabs(symbol.range.endpoint));
    if (!(vmin < vmax)) return Verdict::inconclusive("unknown: empty sampled value range");

    const int samples = 64;
    const double dtol = 1e-6;
    for (int i = 0; i < samples; ++i) {
        // strictly interior samples: branch endpoints are bracketing bounds
        double y = vmin + (vmax - vmin) * (static_cast<double>(i) + 0.5) / samples;
        bool good = false;
        for (const Branch& br : branches) {
            if (y < br.vlo || y > br.vhi) continue;
            auto x = branch_solve(phi, br, y);
            if (!x) continue;
            Bound d = dphi.value_bound(LogScalar::from_double(*x));
            if (d.ok() && d.is_point() && std::fabs(d.lo.value()) > dtol) {
                good = true;
                break;
            }
        }
        if (!good)
            return Verdict::inconclusive("unknown: value " + std::to_string(y) +
                                         " has no preimage clear of critical points");
    }
    return Verdict::holds({{"samples", static_cast<double>(samples)},
                           {"derivative_tol", dtol},
                           {"window", window}});
}

PiecewiseFn default_star_candidate(bool mirrored) {
    // 1/x past 1 (not rapidly decreasing: x * f = 1 there), zero on the other
    // side, smooth bridge between; the mirror image for left-sided ranges.
    if (!mirrored) return parse("piecewise((-inf,0]: 0; [1,inf): 1/x; blend: 8)");
    return parse("piecewise((-inf,-1]: -1/x; [0,inf): 0; blend: 8)");
}

namespace {

struct EngineState {
    const PiecewiseFn* phi;
    const RunConfig* cfg;
    SymbolReport symbol;
    std::unique_ptr<PiecewiseRealFunction> phi_rf;
    std::unique_ptr<PiecewiseRealFunction> dphi_rf;
    Flag cinf = Flag::Unknown;
    Flag deriv_nv = Flag::Unknown;
};

RuleRecord rule_necessary_cinf(EngineState& st) {
    RuleRecord r;
    r.id = "nec-cinf";
    r.anchor = "closed range on the rapidly-decreasing space forces closed range on the "
               "smooth-function space; a user-asserted failure there decides";
    r.evaluated = true;
    r.premises.emplace_back("cinf_closed_range", flag_name(st.cinf));
    r.fired = st.cinf == Flag::No;
    if (r.fired) r.detail = "user-supplied: composition lacks closed range on smooth functions";
    return r;
}

RuleRecord rule_necessary_growth(EngineState& st) {
    RuleRecord r;
    r.id = "nec-growth";
    r.anchor = "a surjective symbol with eventually nonvanishing derivative and closed range "
               "must have polynomially bounded derivatives and |phi'| >= c (1+x^2)^{-T}";
    r.evaluated = true;
    r.premises.emplace_back("surjective", verdict_summary(st.symbol.surjective));
    r.premises.emplace_back("derivative_eventually_nonvanishing", flag_name(st.deriv_nv));
    if (!st.symbol.surjective.holds_true() || st.deriv_nv != Flag::Yes) return r;

    r.premises.emplace_back("o_m", verdict_summary(st.symbol.o_m));
    if (st.symbol.o_m.failed()) {
        r.fired = true;
        r.detail = "phi leaves the polynomially-bounded multiplier class";
        return r;
    }

    // lower bound |phi'(x)| >= c (1+x^2)^{-T}: blocked minima of
    // log|phi'| + T log(1+x^2) must not sink below every lattice c
    const RunConfig& cfg = *st.cfg;
    std::vector<LogScalar> pts = log_grid(Region::full(), cfg);
    const double t_tail = std::log(cfg.tail_lo);
    const double c_min_log = cfg.c_pow_min * std::log(2.0);
    bool all_fail = true;
    for (double T : cfg.t_lattice) {
        bool t_fails = false;
        for (int side : {-1, 1}) {
            std::vector<std::pair<double, double>> ys;
            for (const LogScalar& x : pts) {
                if (x.sign != side || x.is_zero() || x.lg < t_tail) continue;
                Bound d = st.dphi_rf->value_bound(x);
                if (!d.ok()) continue;
                LogScalar lo = mag_lo(d);
                ys.push_back({x.lg, (lo.is_zero() ? -1e4 : lo.lg) + T * log1p_sq(x)});
            }
            if (ys.size() < 16) continue;
            // minima version of the trend: negate
            for (auto& p : ys) p.second = -p.second;
            int tr = block_trend(ys, cfg.tail_blocks, cfg.growth_margin);
            double worst = kNegInf; // max of negated = -min
            std::sort(ys.begin(), ys.end());
            for (std::size_t i = ys.size() - ys.size() / 8; i < ys.size(); ++i)
                worst = std::max(worst, ys[i].second);
            if (tr > 0 && -worst < c_min_log - cfg.growth_margin) t_fails = true;
        }
        if (!t_fails) all_fail = false;
    }
    r.premises.emplace_back("derivative_lower_bound",
                            all_fail ? "fails for every lattice (c,T)" : "not refuted");
    if (all_fail) {
        r.fired = true;
        r.detail = "|phi'| sinks below c (1+x^2)^{-T} for every lattice pair";
    }
    return r;
}

RuleRecord rule_asterisco(EngineState& st, const std::optional<PiecewiseFn>& user_candidate) {
    RuleRecord r;
    r.id = "asterisco";
    r.anchor = "for a surjective symbol with the mixed growth bound, a smooth non-decaying f "
               "whose composition with phi is rapidly decreasing rules out closed range";
    r.evaluated = true;
    r.premises.emplace_back("surjective", verdict_summary(st.symbol.surjective));
    r.premises.emplace_back("star", verdict_summary(st.symbol.star));
    if (!st.symbol.surjective.holds_true() || !st.symbol.star.holds_true()) return r;

    const RunConfig& cfg = *st.cfg;
    std::vector<std::pair<std::string, PiecewiseFn>> candidates;
    if (user_candidate) {
        candidates.emplace_back("user candidate", *user_candidate);
    } else {
        candidates.emplace_back("default candidate", default_star_candidate(false));
        candidates.emplace_back("mirrored candidate", default_star_candidate(true));
    }
    for (const auto& [name, cand] : candidates) {
        PiecewiseRealFunction f(cand, cfg.max_order);
        Verdict f_membership = membership_S(f, cfg.max_order, Region::full(), cfg);
        if (!f_membership.failed()) {
            r.premises.emplace_back(name + " outside S", verdict_summary(f_membership));
            continue;
        }
        ComposedRealFunction comp(f, *st.phi_rf);
        Verdict comp_membership = membership_S(comp, cfg.max_order, Region::full(), cfg);
        r.premises.emplace_back(name + " composite in S", verdict_summary(comp_membership));
        if (comp_membership.holds_true()) {
            r.fired = true;
            r.detail = name + ": " + cand.to_string();
            return r;
        }
    }
    return r;
}

RuleRecord rule_sufficient_om(EngineState& st, MultiplierReport* mult_report) {
    RuleRecord r;
    r.id = "suf-om";
    r.anchor = "a polynomially-bounded symbol whose derivative multiplies the "
               "rapidly-decreasing space with closed range gives a closed-range composition";
    r.evaluated = true;
    r.premises.emplace_back("o_m", verdict_summary(st.symbol.o_m));
    r.premises.emplace_back("is_symbol", verdict_summary(st.symbol.is_symbol));
    if (!st.symbol.o_m.holds_true() || !st.symbol.is_symbol.holds_true()) return r;
    Verdict mult = closed_range_multiplier(*st.dphi_rf, Region::full(), *st.cfg, mult_report);
    r.premises.emplace_back("multiplier(phi') on the line", verdict_summary(mult));
    if (mult.holds_true()) {
        r.fired = true;
        std::ostringstream os;
        os << "multiplier certificate (N=" << mult.cert_value("N") << ", T=" << mult.cert_value("T")
           << ", c=" << mult.cert_value("c") << ")";
        r.detail = os.str();
    }
    return r;
}

// first half-line from the lattice where M_{phi'} certifies closed range
std::optional<Region> certified_halfline(EngineState& st, bool right) {
    for (double rr : st.cfg->halfline_lattice) {
        Region region = right ? Region::right_of(rr) : Region::left_of(-rr);
        Verdict v = closed_range_multiplier(*st.dphi_rf, region, *st.cfg, nullptr);
        if (v.holds_true()) return region;
    }
    return std::nullopt;
}

RuleRecord rule_sufficient_nonsurjective(EngineState& st) {
    RuleRecord r;
    r.id = "suf-nonsurj";
    r.anchor = "a non-surjective symbol with closed smooth-range needs the derivative to be a "
               "closed-range multiplier on just one unbounded interval";
    r.evaluated = true;
    r.premises.emplace_back("surjective", verdict_summary(st.symbol.surjective));
    r.premises.emplace_back("cinf_closed_range", flag_name(st.cinf));
    if (!st.symbol.surjective.failed() || st.cinf != Flag::Yes) return r;
    for (bool right : {true, false}) {
        if (auto region = certified_halfline(st, right)) {
            r.fired = true;
            r.detail = "multiplier certified on " + region->to_string();
            r.premises.emplace_back("multiplier(phi') on " + region->to_string(), "holds");
            return r;
        }
    }
    r.premises.emplace_back("multiplier(phi') on a half-line lattice", "none certified");
    return r;
}

RuleRecord rule_sufficient_surjective(EngineState& st) {
    RuleRecord r;
    r.id = "suf-surj";
    r.anchor = "a surjective symbol with closed smooth-range needs the derivative to be a "
               "closed-range multiplier on both tails";
    r.evaluated = true;
    r.premises.emplace_back("surjective", verdict_summary(st.symbol.surjective));
    r.premises.emplace_back("cinf_closed_range", flag_name(st.cinf));
    if (!st.symbol.surjective.holds_true() || st.cinf != Flag::Yes) return r;
    auto right = certified_halfline(st, true);
    r.premises.emplace_back("multiplier(phi') on a right ray",
                            right ? "holds on " + right->to_string() : "none certified");
    if (!right) return r;
    auto left = certified_halfline(st, false);
    r.premises.emplace_back("multiplier(phi') on a left ray",
                            left ? "holds on " + left->to_string() : "none certified");
    if (!left) return r;
    r.fired = true;
    r.detail = "multiplier certified on " + left->to_string() + " and " + right->to_string();
    return r;
}

} // namespace

ClosedRangeVerdict decide_closed_range(const PiecewiseFn& phi, const AssumptionSet& assumptions,
                                       const RunConfig& cfg,
                                       const std::optional<PiecewiseFn>& f_candidate) {
    EngineState st;
    st.phi = &phi;
    st.cfg = &cfg;
    int orders = std::max({cfg.max_j, cfg.max_order, 2});
    st.phi_rf = std::make_unique<PiecewiseRealFunction>(phi, orders);
    st.symbol = analyze_symbol(phi, cfg.max_j, cfg);
    if (!st.symbol.is_symbol.holds_true())
        throw PreconditionError(
            "phi is not a symbol (composition is not an operator on the space): " +
            st.symbol.is_symbol.reason());
    st.dphi_rf = std::make_unique<PiecewiseRealFunction>(phi.derivative(1), orders);

    ClosedRangeVerdict out;

    // resolve assumptions
    st.cinf = assumptions.cinf_closed_range;
    if (st.cinf == Flag::Auto) {
        Verdict h = cinf_heuristic(*st.phi_rf, st.symbol, cfg);
        st.cinf = h.holds_true() ? Flag::Yes : Flag::Unknown;
    }
    st.deriv_nv = assumptions.derivative_eventually_nonvanishing;
    if (st.deriv_nv == Flag::Auto) {
        ZeroScan zeros = find_zeros(*st.dphi_rf, Region::full(), 4, cfg);
        // finite zero set in the window and stable tail signs
        bool stable = zeros.complete;
        for (int side : {-1, 1}) {
            int sign_seen = 0;
            for (double u : {12.0, 16.0, 24.0, 32.0}) {
                Bound d = st.dphi_rf->value_bound(LogScalar::from_log(side, u));
                if (!d.ok() || d.contains_zero()) continue;
                int s = d.lo.sign;
                if (sign_seen == 0) sign_seen = s;
                if (s != sign_seen) stable = false;
            }
            if (sign_seen == 0) stable = false;
        }
        st.deriv_nv = stable ? Flag::Yes : Flag::Unknown;
    }
    out.resolved_cinf = st.cinf;
    out.resolved_deriv_nonvanishing = st.deriv_nv;

    // necessary rules first; all of them are evaluated so the trace shows
    // every independent NotClosed route
    out.trace.push_back(rule_necessary_cinf(st));
    out.trace.push_back(rule_necessary_growth(st));
    out.trace.push_back(rule_asterisco(st, f_candidate));
    bool not_closed = false;
    for (const RuleRecord& r : out.trace)
        if (r.fired) {
            not_closed = true;
            if (out.witness.empty()) out.witness = r.id + ": " + r.detail;
        }
    if (not_closed) {
        out.status = ClosedRangeStatus::NotClosed;
        // sufficient rules are recorded as not evaluated
        for (const char* id : {"suf-om", "suf-nonsurj", "suf-surj"}) {
            RuleRecord r;
            r.id = id;
            r.anchor = "skipped: a necessary condition already failed";
            out.trace.push_back(r);
        }
        return out;
    }

    RuleRecord om = rule_sufficient_om(st, nullptr);
    out.trace.push_back(om);
    if (!om.fired) {
        RuleRecord ns = rule_sufficient_nonsurjective(st);
        out.trace.push_back(ns);
        if (!ns.fired) {
            RuleRecord ss = rule_sufficient_surjective(st);
            out.trace.push_back(ss);
        }
    }
    for (const RuleRecord& r : out.trace)
        if (r.fired) out.status = ClosedRangeStatus::Closed;

    if (out.status == ClosedRangeStatus::Closed && st.symbol.surjective.holds_true() &&
        st.deriv_nv == Flag::Yes) {
        out.advisory =
            "with these hypotheses the composition also maps the decaying classes of some "
            "closed unbounded interval onto each other, and the derivative multiplies that "
            "interval's class with closed range of codimension at most 1";
    }
    return out;
}

} // namespace schwartz
