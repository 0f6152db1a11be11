#pragma once

#include <vector>

#include "qdent/quadrature.hpp"
#include "qdent/sample.hpp"
#include "qdent/spacing_estimators.hpp"

namespace qdent {

// Tuning of the smoothed quantile-density estimator and of the trimmed
// entropy functional built on it. The convolution kernel is the standard
// Gaussian density; its tails are never truncated.
struct KernelConfig {
    double h = 0.1;          // bandwidth
    double eps = 0.01;       // boundary trim, in (0, 1/2)
    QuadratureSpec quadrature{};

    void validate() const;   // throws std::invalid_argument
};

// Q_n(t) = X_{k;n} for (k-1)/n < t <= k/n. Throws std::domain_error for
// t outside (0,1].
double empirical_quantile(const Sample& x, double t);

// Closed-form kernel qdf estimate at one point:
//   qhat(t) = (1/h) sum_i K((t - i/n)/h) (X_{i+1;n} - X_{i;n})
//           + (1/h) [K((t-1)/h) X_{n;n} - K(t/h) X_{1;n}]
// Precomputes the spacings once; each evaluation is O(n).
class QdfEvaluator {
public:
    QdfEvaluator(const Sample& x, double h);
    double operator()(double t) const;

private:
    double h_;
    double x_min_;
    double x_max_;
    std::vector<double> spacings_;
};

double qdf_hat(const Sample& x, double t, const KernelConfig& cfg);

struct QdfCurve {
    std::vector<double> t;
    std::vector<double> q; // all entries strictly positive
};

// Uniform grid of qdf values over [eps, 1-eps]; throws Error{NonPositiveQdf}
// if any value fails to be positive.
QdfCurve qdf_curve(const Sample& x, const KernelConfig& cfg, int points);

// Boundary-trimmed entropy estimate
//   eps log qhat(eps) + eps log qhat(1-eps) + int_eps^{1-eps} log qhat,
// the integral evaluated by refined composite Simpson. Throws
// Error{NonPositiveQdf} (reporting the offending t) and
// Error{QuadratureNotConverged}.
EntropyEstimate entropy_hat(const Sample& x, const KernelConfig& cfg);

} // namespace qdent
