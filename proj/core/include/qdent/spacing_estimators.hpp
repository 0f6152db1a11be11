#pragma once

#include <cstddef>
#include <string>

#include "qdent/sample.hpp"

namespace qdent {

enum class EstimatorId {
    Vasicek,
    VanEs,
    Correa,
    Wieczorkowski,
    Ebrahimi,
    Yousefzadeh,
    Kernel,
    ParzenStar,
    ParzenTilde,
};

std::string to_string(EstimatorId id);
EstimatorId parse_estimator_id(const std::string& name); // throws std::invalid_argument

// Window (spacing order) plus the resolution flags for the places where the
// printed formulas are ambiguous. Defaults follow the printed forms except
// where the printed form is non-monotone (Yousefzadeh's cdf extrapolation).
struct SpacingConfig {
    int m = 1;
    bool ebrahimi_symmetric_tail = false; // tail weights 1+(n-i)/m instead of 1+(n-i)/n
    bool yousefzadeh_as_printed = false;  // keep the printed minus in the top extrapolation
    bool correa_printed_range = false;    // outer sum over i = 1..n-m instead of 1..n
};

struct EntropyEstimate {
    double value = 0.0;
    EstimatorId id = EstimatorId::Vasicek;
    std::size_t n = 0;
};

// The six order-statistics estimators. All sort internally (Sample already
// carries the order statistics), clamp out-of-range indices to the extremes,
// and throw Error{InvalidWindow} for m < 1 or 2m > n and
// Error{DegenerateSpacings} when a logarithm argument is not positive.
EntropyEstimate vasicek(const Sample& x, const SpacingConfig& cfg);
EntropyEstimate van_es(const Sample& x, const SpacingConfig& cfg);
EntropyEstimate correa(const Sample& x, const SpacingConfig& cfg);
EntropyEstimate wieczorkowski(const Sample& x, const SpacingConfig& cfg);
EntropyEstimate ebrahimi(const Sample& x, const SpacingConfig& cfg);
EntropyEstimate yousefzadeh(const Sample& x, const SpacingConfig& cfg);

// The deterministic gap wieczorkowski - vasicek; depends on (n, m) only.
double wieczorkowski_correction(std::size_t n, int m);

} // namespace qdent
