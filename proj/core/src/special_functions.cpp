#include "qdent/special_functions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qdent {

namespace {

// Lanczos approximation, g = 7, 9 terms.
constexpr double lanczos_g = 7.0;
constexpr double lanczos_c[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

void require_positive(double x, const char* fn) {
    if (!(x > 0.0)) {
        throw std::domain_error(std::string(fn) + " requires a positive argument, got " +
                                std::to_string(x));
    }
}

} // namespace

double log_gamma(double x) {
    require_positive(x, "log_gamma");
    double acc = lanczos_c[0];
    for (int i = 1; i < 9; ++i) {
        acc += lanczos_c[i] / (x - 1.0 + i);
    }
    const double t = x - 0.5 + lanczos_g;
    return 0.5 * std::log(2.0 * M_PI) + (x - 0.5) * std::log(t) - t + std::log(acc);
}

double digamma(double x) {
    require_positive(x, "digamma");
    // Shift to x >= 10, then the asymptotic series in 1/x^2 (Bernoulli terms
    // through x^-12) leaves the error well below 1e-13.
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    const double series = inv2 * (1.0 / 12.0 + inv2 * (-1.0 / 120.0 + inv2 * (1.0 / 252.0 +
                          inv2 * (-1.0 / 240.0 + inv2 * (1.0 / 132.0 - inv2 * 691.0 / 32760.0)))));
    return acc + std::log(x) - 0.5 * inv - series;
}

double log_beta(double a, double b) {
    require_positive(a, "log_beta");
    require_positive(b, "log_beta");
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

} // namespace qdent
