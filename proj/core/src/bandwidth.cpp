#include "qdent/bandwidth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qdent/errors.hpp"
#include "qdent/parallel.hpp"

namespace qdent {

BandwidthGrid BandwidthGrid::log_spaced(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(hi > lo) || count < 1) {
        throw std::invalid_argument("bandwidth grid needs 0 < lo < hi and count >= 1");
    }
    BandwidthGrid grid;
    grid.h.resize(static_cast<std::size_t>(count));
    if (count == 1) {
        grid.h[0] = lo;
        return grid;
    }
    const double step = (std::log(hi) - std::log(lo)) / (count - 1);
    for (int i = 0; i < count; ++i) {
        grid.h[static_cast<std::size_t>(i)] = std::exp(std::log(lo) + step * i);
    }
    return grid;
}

BandwidthGrid BandwidthGrid::default_grid() { return log_spaced(1e-3, 1.0, 40); }

double amse_optimal_h(const Distribution& d, double t, std::size_t n) {
    if (!(t > 0.0 && t < 1.0)) throw std::domain_error("amse_optimal_h requires t in (0,1)");
    const double x = d.quantile(t);
    const double f = d.pdf(x);
    const double q = 1.0 / f;
    const double qpp = (d.pdf_deriv2(x) * f - 3.0 * d.pdf_deriv1(x) * d.pdf_deriv1(x)) /
                       (f * f * f * f * f);
    if (qpp == 0.0) {
        throw Error(ErrorKind::SingularCurvature,
                    "q''(t) vanishes at t=" + std::to_string(t) + " for " + d.to_string());
    }
    const double kernel_l2 = 1.0 / (2.0 * std::sqrt(M_PI)); // int K^2 for Gaussian K
    const double kernel_var = 1.0;                           // int x^2 K
    return std::pow(q * q * kernel_l2 /
                        (static_cast<double>(n) * qpp * qpp * kernel_var * kernel_var),
                    0.2);
}

double amse_median_h(const Distribution& d, std::size_t n) {
    std::vector<double> values;
    for (int i = 2; i <= 8; ++i) {
        values.push_back(amse_optimal_h(d, i / 10.0, n));
    }
    std::sort(values.begin(), values.end());
    return values[values.size() / 2];
}

GridSearchResult grid_search_h(const Distribution& d, std::size_t n, KernelConfig config,
                               const BandwidthGrid& grid, std::size_t reps, std::uint64_t seed,
                               unsigned threads) {
    if (grid.h.empty()) throw std::invalid_argument("empty bandwidth grid");
    for (std::size_t j = 1; j < grid.h.size(); ++j) {
        if (!(grid.h[j] > grid.h[j - 1])) {
            throw std::invalid_argument("bandwidth grid must be strictly increasing");
        }
    }
    if (!(grid.h.front() > 0.0)) throw std::invalid_argument("bandwidths must be positive");
    if (reps < 2) throw std::invalid_argument("grid search needs reps >= 2");

    // Common random numbers: one set of samples, shared by every candidate.
    std::vector<Sample> samples;
    samples.reserve(reps);
    for (std::size_t r = 0; r < reps; ++r) {
        RngStream rng(seed, r);
        samples.push_back(sample(d, n, rng));
    }
    const double truth = d.true_entropy();

    GridSearchResult result;
    result.curve.resize(grid.h.size());
    for (std::size_t j = 0; j < grid.h.size(); ++j) {
        KernelConfig candidate = config;
        candidate.h = grid.h[j];
        candidate.validate();
        std::vector<double> sq_err(reps, 0.0);
        std::vector<unsigned char> failed(reps, 0);
        parallel_for(reps, threads, [&](std::size_t r) {
            try {
                const double v = entropy_hat(samples[r], candidate).value;
                sq_err[r] = (v - truth) * (v - truth);
            } catch (const Error&) {
                failed[r] = 1;
            }
        });
        GridPoint& point = result.curve[j];
        point.h = candidate.h;
        double acc = 0.0;
        std::size_t used = 0;
        for (std::size_t r = 0; r < reps; ++r) {
            if (failed[r]) {
                ++point.failures;
            } else {
                acc += sq_err[r];
                ++used;
            }
        }
        point.disqualified = point.failures * 100 > reps;
        point.mse = used ? acc / static_cast<double>(used) : 0.0;
    }

    const GridPoint* best = nullptr;
    for (const GridPoint& point : result.curve) {
        if (point.disqualified) continue;
        if (!best || point.mse < best->mse) best = &point;
    }
    if (!best) {
        throw Error(ErrorKind::NonPositiveQdf,
                    "every bandwidth candidate failed more than 1% of replications");
    }
    result.h_star = best->h;
    return result;
}

} // namespace qdent
