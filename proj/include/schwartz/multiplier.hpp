#pragma once

#include "schwartz/config.hpp"
#include "schwartz/grid.hpp"
#include "schwartz/real_function.hpp"
#include "schwartz/verdict.hpp"

#include <optional>
#include <vector>

namespace schwartz {

struct ZeroCluster {
    double location = 0;
    std::optional<Rational> exact; // rational location on the polynomial path
    int multiplicity = 1;
    double isolation_radius = 0;
    bool at_region_boundary = false;
    bool multiplicity_capped = false; // maxMultiplicity reached, cluster suspect
};

struct ClosedRangeParams {
    int N = 0;
    double T = 0;
    double c = 0;
};

struct ZeroScan {
    std::vector<ZeroCluster> clusters;
    double window = 0;   // scan covered [-window, window] (clipped to region)
    bool complete = true; // false when the scan could not classify something
    bool exact = false;
};

// Zeros of F on the region window with multiplicities. Exact real-root
// isolation for polynomial (and poly*exp) pieces, sign-change bisection plus
// derivative probes elsewhere.
ZeroScan find_zeros(const PiecewiseRealFunction& F, const Region& region, int max_multiplicity,
                    const RunConfig& cfg);

// I_{x,T} = [x - 1/(1+x^2)^T, x + 1/(1+x^2)^T], clipped to the region.
std::pair<double, double> interval_IxT(double x, double T, const Region& region);

// Conditions (a) zero count < N in every I_{x,T}, (b)
// (1+x^2)^T |F(x)| > c * prod |x - x_i| over the zeros in I_{x,T} (just c
// for the empty product), sampled densely near clusters and log-spaced on
// the tails.
Verdict check_conditions_ab(const PiecewiseRealFunction& F, const ClosedRangeParams& params,
                            const Region& region, const ZeroScan& zeros, const RunConfig& cfg);

struct MultiplierReport {
    Verdict om = Verdict::inconclusive("not run");
    ZeroScan zeros;
    Verdict closed_range = Verdict::inconclusive("not run");
    std::optional<ClosedRangeParams> params;
    std::string region;
};

// Full decision: multiplier condition first, then structural obstructions,
// then the (N, T, c) lattice search.
Verdict closed_range_multiplier(const PiecewiseRealFunction& F, const Region& region,
                                const RunConfig& cfg, MultiplierReport* report = nullptr);

} // namespace schwartz
