#pragma once

#include "schwartz/config.hpp"
#include "schwartz/logdomain.hpp"

#include <functional>
#include <string>
#include <vector>

namespace schwartz {

// The full line or a closed half-line.
struct Region {
    enum class Kind { FullLine, LeftRay, RightRay };
    Kind kind = Kind::FullLine;
    double endpoint = 0; // b for (-inf, b], a for [a, inf)

    static Region full() { return {Kind::FullLine, 0}; }
    static Region left_of(double b) { return {Kind::LeftRay, b}; }
    static Region right_of(double a) { return {Kind::RightRay, a}; }

    bool contains(double x) const;
    bool is_full() const { return kind == Kind::FullLine; }
    std::string to_string() const;
};

// One evaluated grid sample inside a sup sweep. The comparison keys form a
// strict total order for distinct (score, |x|, sign, order), which makes the
// parallel reduction independent of chunking.
struct SweepSample {
    bool valid = false;
    double score = kNegInf; // maximized quantity, log scale
    double abs_x_lg = kPosInf;
    int sign_x = 0;
    int order = 0;
    LogScalar x{};
    double aux = 0; // free payload

    static SweepSample none() { return SweepSample{}; }
};

// true when a should replace b: larger score, then smaller |x|, then positive
// sign, then smaller derivative order.
bool sweep_better(const SweepSample& a, const SweepSample& b);

using SweepEval = std::function<SweepSample(std::size_t)>;

// Serial reference implementation.
SweepSample sup_scan_serial(std::size_t count, const SweepEval& eval);
// OpenMP kernel; bit-identical to the serial scan for any worker count
// (threads <= 0 uses the OpenMP default).
SweepSample sup_scan_parallel(std::size_t count, const SweepEval& eval, int threads = 0);
// Dispatches on worker configuration (cfg.workers, SCHWARTZ_WORKERS env).
SweepSample sup_scan(std::size_t count, const SweepEval& eval, const RunConfig& cfg);

// Evaluate every sample (for CSV emission); parallel, order-preserving.
std::vector<SweepSample> table_scan(std::size_t count, const SweepEval& eval,
                                    const RunConfig& cfg);

int effective_workers(const RunConfig& cfg);

// Sample coordinates -------------------------------------------------------

// Log-spaced magnitudes on [window_min, window_max] per admissible sign, the
// origin, and the region endpoint when present. Values all carry finite x.
std::vector<LogScalar> log_grid(const Region& region, const RunConfig& cfg);

// Far-field probe x = +-exp(u), u log-spaced on [log(window_max)*1.05,
// far_field_umax]; x itself may exceed double range.
std::vector<LogScalar> far_field_grid(const Region& region, const RunConfig& cfg);

// Uniformly spaced points on [a, b] (inclusive).
std::vector<LogScalar> uniform_grid(double a, double b, std::size_t count);

// Golden-section maximization of g on [lo, hi]; returns (arg, value).
// g returns -inf for invalid points.
std::pair<double, double> golden_max(double lo, double hi, int iters,
                                     const std::function<double(double)>& g);

// Least-squares line fit y ~ a + s*t; returns (slope, rms_residual).
// Requires >= 2 points.
std::pair<double, double> fit_line(const std::vector<std::pair<double, double>>& pts);

// Trend of y over equal-count blocks of (t, y) pairs sorted by t, judged on
// block maxima: +1 rising by at least `margin` overall, -1 falling, 0 flat
// or mixed.
int block_trend(const std::vector<std::pair<double, double>>& pts, int nblocks, double margin);

} // namespace schwartz
