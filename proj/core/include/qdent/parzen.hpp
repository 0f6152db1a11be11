#pragma once

#include "qdent/distributions.hpp"
#include "qdent/kernel_qdf.hpp"
#include "qdent/sample.hpp"
#include "qdent/spacing_estimators.hpp"

namespace qdent {

// Standardized null shape of a location-scale family. Only the normal shape
// and the uniform reduction (used in tests) are supported. These statistics
// target the entropy of the null-uniformized variable, which is 0 under the
// null; they are experimental companions to the main estimators.
struct LocationScaleNull {
    Distribution shape = Distribution::normal(0.0, 1.0);
    // First-cell slope convention for the interpolated quantile: the default
    // pins X_{0;n} to X_{1;n} (zero slope on cell 1); the flag switches to
    // the same linear extrapolation used by the Yousefzadeh cdf.
    bool extrapolate_first_cell = false;
};

// Piecewise-linear sample quantile
//   Qtilde(t) = n(i/n - t) X_{i-1;n} + n(t - (i-1)/n) X_{i;n},
// (i-1)/n <= t <= i/n, with X_{0;n} := X_{1;n}. Domain (0,1].
double sample_quantile_tilde(const Sample& x, double t);

// Entropy of the density-quantile dstar(t) = f0(Q0(t)) qhat(t) / sigma0,
// sigma0 the trimmed integral of f0(Q0(t)) qhat(t); both integrals use the
// same eps-trimming as the kernel entropy estimate.
EntropyEstimate parzen_entropy_star(const Sample& x, const LocationScaleNull& null_model,
                                    const KernelConfig& cfg);

// Same statistic with qhat replaced by the piecewise-constant derivative of
// Qtilde; every integral is evaluated cell-exactly. Throws
// Error{DegenerateSpacings} for a zero-slope cell inside the trimmed range.
EntropyEstimate parzen_entropy_tilde(const Sample& x, const LocationScaleNull& null_model,
                                     double eps = 0.01);

} // namespace qdent
