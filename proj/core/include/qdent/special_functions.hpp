#pragma once

namespace qdent {

// Euler-Mascheroni constant.
inline constexpr double euler_gamma = 0.5772156649015328606;

// log Gamma(x) for x > 0, relative error below 1e-13.
// Throws std::domain_error for x <= 0.
double log_gamma(double x);

// Psi(x) = d log Gamma(x) / dx for x > 0, absolute error below 1e-12
// on [1e-3, 1e6]. Throws std::domain_error for x <= 0.
double digamma(double x);

// log Beta(a, b) = log Gamma(a) + log Gamma(b) - log Gamma(a+b), a, b > 0.
double log_beta(double a, double b);

} // namespace qdent
