#pragma once

#include <cstddef>
#include <string>

#include "qdent/rng.hpp"
#include "qdent/sample.hpp"

namespace qdent {

enum class DistKind { Normal, Uniform01, Weibull, Exponential, StudentT, Cauchy };

// One of the six parametric test-bed laws. Immutable; holds at most two
// parameters. Quantiles are analytic inverses except Student-t, which is
// inverted numerically from its cdf (bisection + Newton, 1e-10).
class Distribution {
public:
    static Distribution normal(double mean, double sd);
    static Distribution uniform01();
    static Distribution weibull(double shape, double scale);
    static Distribution exponential(double rate);
    static Distribution student_t(double dof);
    static Distribution cauchy();

    // Parses the short text form used by the CLI: "normal(0,1)", "uniform",
    // "weibull(2,0.5)", "exp(1)", "t(3)", "cauchy". Throws
    // std::invalid_argument on anything else.
    static Distribution parse(const std::string& text);
    std::string to_string() const;

    DistKind kind() const noexcept { return kind_; }

    // Q(u) = inf{x : F(x) >= u}; throws std::domain_error for u outside (0,1).
    double quantile(double u) const;
    double cdf(double x) const;
    double pdf(double x) const;
    double log_pdf(double x) const;
    double pdf_deriv1(double x) const; // f'
    double pdf_deriv2(double x) const; // f''

    // Exact differential entropy in nats, by closed form.
    double true_entropy() const;

private:
    Distribution(DistKind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}

    DistKind kind_;
    double a_; // mean / shape / rate / dof
    double b_; // sd / scale
};

// n i.i.d. draws by inverse transform; deterministic in (d, n, rng state).
Sample sample(const Distribution& d, std::size_t n, RngStream& rng);

// Mixture draws: each observation comes from `contaminant` with probability
// `frac`, else from `base`. Mixture flags consume a substream of `rng`, so
// frac = 0 is bit-identical to sample(base, n, rng).
// Throws std::domain_error for frac outside [0,1].
Sample sample_contaminated(const Distribution& base, const Distribution& contaminant,
                           double frac, std::size_t n, RngStream& rng);

// Standard normal quantile (absolute error < 1e-15) and cdf.
double normal_quantile(double u);
double normal_cdf(double x);

} // namespace qdent
