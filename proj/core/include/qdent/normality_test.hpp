#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "qdent/distributions.hpp"
#include "qdent/kernel_qdf.hpp"
#include "qdent/sample.hpp"

namespace qdent {

// One calibrated entry plus everything needed to reproduce it.
struct CvRecord {
    std::size_t n = 0;
    double alpha = 0.0;
    double value = 0.0;
    std::size_t reps = 0;
    std::uint64_t seed = 0;
    double h = 0.0;
    double eps = 0.0;
};

// Monte-Carlo critical values of the normality statistic, persisted as a
// fixed-header text table with 8 significant digits per value.
class CriticalValueTable {
public:
    void add(const CvRecord& record);
    const CvRecord* find(std::size_t n, double alpha) const;
    const CvRecord& require(std::size_t n, double alpha) const; // Error{MissingCalibration}
    const std::vector<CvRecord>& records() const noexcept { return records_; }

    void save(std::ostream& out) const;
    static CriticalValueTable load(std::istream& in); // throws std::runtime_error on bad input

private:
    std::vector<CvRecord> records_;
};

// T_n = log sqrt(2 pi sigma_n^2) + 0.5 - Hhat, sigma_n^2 the divide-by-n
// sample variance. Large values are evidence against normality (the normal
// maximizes entropy at fixed variance). Throws Error{DegenerateSample} for a
// constant sample; estimator errors propagate.
double statistic_tn(const Sample& x, const KernelConfig& cfg);

// For each n: simulate `reps` standard-normal samples, compute the statistic
// on each, and store the empirical upper (1-alpha) quantile per level.
// Requires reps >= 1000 and alpha*reps >= 20. Replication errors propagate.
CriticalValueTable calibrate_critical_values(const std::vector<std::size_t>& sample_sizes,
                                             const std::vector<double>& alphas, std::size_t reps,
                                             const KernelConfig& cfg, std::uint64_t seed,
                                             unsigned threads = 0);

struct TestResult {
    double statistic = 0.0;
    double critical_value = 0.0;
    double alpha = 0.0;
    bool reject = false; // statistic >= critical value (closed upper set)
    std::size_t n = 0;
};

TestResult test_normality(const Sample& x, double alpha, const CriticalValueTable& table,
                          const KernelConfig& cfg);

// Fraction of `reps` replications from `alternative` rejected at level alpha.
double power_study(const Distribution& alternative, std::size_t n, double alpha,
                   std::size_t reps, const CriticalValueTable& table, const KernelConfig& cfg,
                   std::uint64_t seed, unsigned threads = 0);

} // namespace qdent
