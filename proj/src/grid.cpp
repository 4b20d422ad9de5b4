#include "schwartz/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace schwartz {

bool Region::contains(double x) const {
    switch (kind) {
    case Kind::FullLine:
        return true;
    case Kind::LeftRay:
        return x <= endpoint;
    case Kind::RightRay:
        return x >= endpoint;
    }
    return false;
}

std::string Region::to_string() const {
    switch (kind) {
    case Kind::FullLine:
        return "full";
    case Kind::LeftRay:
        return "-inf:" + std::to_string(endpoint);
    case Kind::RightRay:
        return std::to_string(endpoint) + ":inf";
    }
    return "?";
}

bool sweep_better(const SweepSample& a, const SweepSample& b) {
    if (!a.valid) return false;
    if (!b.valid) return true;
    if (a.score != b.score) return a.score > b.score;
    if (a.abs_x_lg != b.abs_x_lg) return a.abs_x_lg < b.abs_x_lg;
    if (a.sign_x != b.sign_x) return a.sign_x > b.sign_x;
    return a.order < b.order;
}

SweepSample sup_scan_serial(std::size_t count, const SweepEval& eval) {
    SweepSample best = SweepSample::none();
    for (std::size_t i = 0; i < count; ++i) {
        SweepSample s = eval(i);
        if (sweep_better(s, best)) best = s;
    }
    return best;
}

int effective_workers(const RunConfig& cfg) {
    if (const char* env = std::getenv("SCHWARTZ_WORKERS")) {
        int w = std::atoi(env);
        if (w > 0) return w;
    }
    if (cfg.workers > 0) return cfg.workers;
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

SweepSample sup_scan_parallel(std::size_t count, const SweepEval& eval, int threads) {
#ifdef _OPENMP
    if (count == 0) return SweepSample::none();
    if (threads <= 0) threads = omp_get_max_threads();
    std::vector<SweepSample> chunk_best(static_cast<std::size_t>(threads), SweepSample::none());
#pragma omp parallel num_threads(threads)
    {
        int tid = omp_get_thread_num();
        SweepSample local = SweepSample::none();
#pragma omp for schedule(static)
        for (long i = 0; i < static_cast<long>(count); ++i) {
            SweepSample s = eval(static_cast<std::size_t>(i));
            if (sweep_better(s, local)) local = s;
        }
        chunk_best[static_cast<std::size_t>(tid)] = local;
    }
    // Merge in thread order; the strict total order makes the result
    // independent of the partitioning.
    SweepSample best = SweepSample::none();
    for (const SweepSample& s : chunk_best)
        if (sweep_better(s, best)) best = s;
    return best;
#else
    (void)threads;
    return sup_scan_serial(count, eval);
#endif
}

SweepSample sup_scan(std::size_t count, const SweepEval& eval, const RunConfig& cfg) {
    int workers = effective_workers(cfg);
    if (workers <= 1) return sup_scan_serial(count, eval);
    return sup_scan_parallel(count, eval, workers);
}

std::vector<SweepSample> table_scan(std::size_t count, const SweepEval& eval,
                                    const RunConfig& cfg) {
    std::vector<SweepSample> out(count);
    int workers = effective_workers(cfg);
#ifdef _OPENMP
    if (workers > 1) {
#pragma omp parallel for schedule(static) num_threads(workers)
        for (long i = 0; i < static_cast<long>(count); ++i)
            out[static_cast<std::size_t>(i)] = eval(static_cast<std::size_t>(i));
        return out;
    }
#endif
    (void)workers;
    for (std::size_t i = 0; i < count; ++i) out[i] = eval(i);
    return out;
}

std::vector<LogScalar> log_grid(const Region& region, const RunConfig& cfg) {
    std::vector<LogScalar> pts;
    pts.reserve(static_cast<std::size_t>(cfg.base_points) * 2 + 8);
    const double t_lo = std::log(cfg.window_min);
    const double t_hi = std::log(cfg.window_max);
    const int n = cfg.base_points;
    auto push = [&](double x) {
        if (x == 0.0) {
            if (region.contains(0.0)) pts.push_back(LogScalar::zero());
            return;
        }
        if (region.contains(x)) pts.push_back(LogScalar::from_double(x));
    };
    push(0.0);
    for (int i = 0; i < n; ++i) {
        double t = t_lo + (t_hi - t_lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        double m = std::exp(t);
        push(m);
        push(-m);
    }
    if (!region.is_full()) {
        // the endpoint and a small geometric approach to it
        push(region.endpoint);
        double dir = region.kind == Region::Kind::RightRay ? 1.0 : -1.0;
        for (int i = 1; i <= 16; ++i) push(region.endpoint + dir * std::ldexp(1.0, -i));
    }
    return pts;
}

std::vector<LogScalar> far_field_grid(const Region& region, const RunConfig& cfg) {
    std::vector<LogScalar> pts;
    const double u_lo = std::log(cfg.window_max) * 1.05;
    const double u_hi = cfg.far_field_umax;
    if (u_hi <= u_lo || cfg.far_field_points < 2) return pts;
    const int n = cfg.far_field_points;
    const double r = std::log(u_hi / u_lo);
    for (int i = 0; i < n; ++i) {
        double u = u_lo * std::exp(r * static_cast<double>(i) / static_cast<double>(n - 1));
        // +exp(u) lies in every right-unbounded region, -exp(u) in every
        // left-unbounded one (the far field is past any finite endpoint).
        if (region.kind != Region::Kind::LeftRay) pts.push_back(LogScalar::from_log(1, u));
        if (region.kind != Region::Kind::RightRay) pts.push_back(LogScalar::from_log(-1, u));
    }
    return pts;
}

std::vector<LogScalar> uniform_grid(double a, double b, std::size_t count) {
    std::vector<LogScalar> pts;
    pts.reserve(count);
    if (count == 1) {
        pts.push_back(LogScalar::from_double((a + b) / 2));
        return pts;
    }
    for (std::size_t i = 0; i < count; ++i) {
        double x = a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
        pts.push_back(LogScalar::from_double(x));
    }
    return pts;
}

std::pair<double, double> golden_max(double lo, double hi, int iters,
                                     const std::function<double(double)>& g) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0; // 0.618...
    double a = lo, b = hi;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = g(x1), f2 = g(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = g(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = g(x1);
        }
    }
    if (f1 >= f2) return {x1, f1};
    return {x2, f2};
}

int block_trend(const std::vector<std::pair<double, double>>& pts, int nblocks, double margin) {
    if (pts.size() < 4 || nblocks < 2) return 0;
    std::vector<std::pair<double, double>> sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    nblocks = std::min<int>(nblocks, static_cast<int>(sorted.size()) / 2);
    std::vector<double> bmax(static_cast<std::size_t>(nblocks), kNegInf);
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        std::size_t b = i * static_cast<std::size_t>(nblocks) / sorted.size();
        bmax[b] = std::max(bmax[b], sorted[i].second);
    }
    bool rising = true, falling = true;
    for (std::size_t i = 1; i < bmax.size(); ++i) {
        if (bmax[i] > bmax[i - 1] + 0.5) falling = false;
        if (bmax[i] < bmax[i - 1] - 0.5) rising = false;
    }
    double total = bmax.back() - bmax.front();
    if (rising && total >= margin) return 1;
    if (falling && total <= -margin) return -1;
    return 0;
}

std::pair<double, double> fit_line(const std::vector<std::pair<double, double>>& pts) {
    const double n = static_cast<double>(pts.size());
    double st = 0, sy = 0;
    for (const auto& [t, y] : pts) {
        st += t;
        sy += y;
    }
    double mt = st / n, my = sy / n;
    double num = 0, den = 0;
    for (const auto& [t, y] : pts) {
        num += (t - mt) * (y - my);
        den += (t - mt) * (t - mt);
    }
    double slope = den > 0 ? num / den : 0.0;
    double ss = 0;
    for (const auto& [t, y] : pts) {
        double r = y - (my + slope * (t - mt));
        ss += r * r;
    }
    return {slope, std::sqrt(ss / n)};
}

} // namespace schwartz
