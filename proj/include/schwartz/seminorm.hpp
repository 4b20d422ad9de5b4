#pragma once

#include "schwartz/faa_di_bruno.hpp"
#include "schwartz/grid.hpp"
#include "schwartz/real_function.hpp"
#include "schwartz/verdict.hpp"

#include <iosfwd>

namespace schwartz {

enum class TailStatus : int { Decaying, Growing, Flat, Ambiguous };
const char* tail_status_name(TailStatus s);

// Trend of a weighted magnitude along one tail. Growth claims are made on
// certified lower bounds, decay claims on upper bounds.
struct TailFit {
    TailStatus status = TailStatus::Ambiguous;
    double slope = 0;    // fitted d log(value) / d log|x|
    double residual = 0; // rms of the log-log fit
    bool super_polynomial = false;
    std::vector<WitnessPoint> growth_witnesses;
};

// One (t = log|x|, bound) tail sample.
struct TailSample {
    LogScalar x;
    Bound value;
};

TailFit classify_tail(const std::vector<TailSample>& samples, const RunConfig& cfg);

// Certified lower bound for sup over the region of
// (1+x^2)^n |f^{(j)}(x)|, j = 0..n (order 0 included: the membership
// failure witnesses live there).
struct SeminormEstimate {
    int n = 0;
    double log_value = kNegInf;
    double value = 0;
    LogScalar witness_x{};
    int witness_order = 0;
    TailStatus tail = TailStatus::Ambiguous;
    // grid spec used
    double window_max = 0;
    int base_points = 0;
    int refine_depth = 0;
};

SeminormEstimate seminorm_pi(const RealFunction& f, int n, const Region& region,
                             const RunConfig& cfg);

// Fitted growth exponents of (1+x^2)^m |f^{(j)}| per pair, tails only.
struct PairDecay {
    int m = 0, j = 0;
    TailStatus left = TailStatus::Ambiguous;
    TailStatus right = TailStatus::Ambiguous;
    double exponent_left = 0;
    double exponent_right = 0;
    bool super_polynomial = false;
};

struct DecayReport {
    std::vector<PairDecay> pairs;
};

DecayReport decay_report(const RealFunction& f, int max_m, int max_j, const Region& region,
                         const RunConfig& cfg);

// Finite-order, finite-window membership evidence for f in S(region):
// Holds when every pair (m, j) with m, j <= max_order has decaying tails and
// a finite grid sup; Fails with the witnessing pair.
Verdict membership_S(const RealFunction& f, int max_order, const Region& region,
                     const RunConfig& cfg);

// Sum over k <= n of the grid-refined sup of |f^{(k)}| on [a, b].
struct DNormResult {
    double value = 0;
    std::vector<double> per_order;
    bool support_leak = false;
};

DNormResult d_norm(const RealFunction& f, int n, double a, double b, const RunConfig& cfg);

// Fixed CSV schema: x, j, weight_exponent, value, log_value.
void emit_weighted_csv(std::ostream& os, const RealFunction& f, int n, const Region& region,
                       const RunConfig& cfg);

} // namespace schwartz
