#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qdent/distributions.hpp"
#include "qdent/kernel_qdf.hpp"

namespace qdent {

struct BandwidthGrid {
    std::vector<double> h; // strictly increasing, positive

    static BandwidthGrid log_spaced(double lo, double hi, int count);
    // 40 log-spaced candidates on [1e-3, 1].
    static BandwidthGrid default_grid();
};

// Plug-in bandwidth minimizing the asymptotic MSE of the kernel qdf at t:
//   h = { q(t)^2 int K^2 / ( n q''(t)^2 (int x^2 K)^2 ) }^{1/5}
// with analytic q(t) = 1/f(Q(t)) and
// q''(t) = [f''(Q) f(Q) - 3 f'(Q)^2] / f(Q)^5 and Gaussian-kernel constants
// int K^2 = 1/(2 sqrt(pi)), int x^2 K = 1.
// Throws Error{SingularCurvature} when q''(t) = 0.
double amse_optimal_h(const Distribution& d, double t, std::size_t n);

// Scalar summary: the median of amse_optimal_h over t in {0.2, 0.3, ..., 0.8}.
double amse_median_h(const Distribution& d, std::size_t n);

struct GridPoint {
    double h = 0.0;
    double mse = 0.0;
    std::size_t failures = 0;
    bool disqualified = false; // failed more than 1% of replications
};

struct GridSearchResult {
    double h_star = 0.0;
    std::vector<GridPoint> curve;
};

// Monte-Carlo MSE of the trimmed kernel entropy estimate against the true
// entropy of d, minimized over the grid. Candidates share replication
// streams (common random numbers); the result is deterministic in
// (d, n, grid, reps, seed) and independent of the thread count.
GridSearchResult grid_search_h(const Distribution& d, std::size_t n, KernelConfig config,
                               const BandwidthGrid& grid, std::size_t reps, std::uint64_t seed,
                               unsigned threads = 0);

} // namespace qdent
