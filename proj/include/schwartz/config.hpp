#pragma once

#include <string>
#include <vector>

namespace schwartz {

// Every numeric knob in one place. Identical config + input gives
// byte-identical reports; the effective config is embedded in every report.
struct RunConfig {
    // standard window: log-spaced base grid on [x_eps, window_max] per sign
    double window_max = 1e4;
    double window_min = 1e-8;
    int base_points = 4096; // per sign

    // golden-section refinement around grid peaks
    int refine_depth = 12;
    int refine_peaks = 24;

    // far-field probe x = +-exp(u) for growth comparisons
    double far_field_umax = 1e4;
    int far_field_points = 512; // per sign

    // tail classification
    double tail_lo = 1e2;
    double tail_hi = 1e4;
    int tail_blocks = 8;
    double slope_eps = 0.05;
    double residual_max = 0.1;  // log-log fit residual above this: ambiguous
    double growth_margin = 3.0; // log-units a trend must move to count

    // orders
    int max_order = 4; // membership pairs (m, j) up to this
    int max_j = 4;     // condition (i)/(*) derivative orders
    int max_partition_n = 20;

    // lattices
    int p_max = 32;
    int k_max = 64;
    int q_max = 32;
    int mult_n_max = 8;
    std::vector<double> t_lattice = {0.5, 1.0, 2.0, 4.0, 8.0};
    int c_pow_min = -10; // c ranges over 2^c_pow_min .. 2^0
    std::vector<double> halfline_lattice = {1, 2, 4, 8, 16, 32, 64};

    // tolerances
    double tol_smooth = 1e-6;
    double tol_verify = 1e-9;
    double zero_mag_tol = 1e-9; // |F| below this (relative) counts as a zero candidate

    unsigned seed = 12345;
    int workers = 0; // 0: library default; SCHWARTZ_WORKERS env overrides

    std::string format = "text"; // text | json

    static RunConfig defaults() { return RunConfig{}; }
};

} // namespace schwartz
