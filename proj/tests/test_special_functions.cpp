#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "qdent/special_functions.hpp"

using namespace qdent;

TEST_CASE("euler gamma constant") {
    CHECK(euler_gamma == doctest::Approx(0.5772156649015329).epsilon(1e-15));
    CHECK(std::fabs(digamma(1.0) + euler_gamma) < 1e-13);
    CHECK(std::fabs(digamma(2.0) + euler_gamma - 1.0) < 1e-13);
}

TEST_CASE("digamma anchor values") {
    CHECK(std::fabs(digamma(1.0) - (-0.57721566490153286)) < 1e-13);
    CHECK(std::fabs(digamma(2.0) - 0.42278433509846714) < 1e-13);
    // psi(1/2) = -gamma - 2 log 2
    CHECK(std::fabs(digamma(0.5) - (-1.9635100260214235)) < 1e-12);
    CHECK(std::fabs(digamma(1e6) - (std::log(1e6) - 5e-7)) < 1e-12);
    CHECK_THROWS_AS(digamma(0.0), std::domain_error);
    CHECK_THROWS_AS(digamma(-3.5), std::domain_error);
}

TEST_CASE("log_gamma anchor values") {
    CHECK(std::fabs(log_gamma(1.0)) < 1e-14);
    CHECK(std::fabs(log_gamma(2.0)) < 1e-14);
    CHECK(std::fabs(log_gamma(5.0) - std::log(24.0)) < 1e-13 * std::log(24.0));
    // log Gamma(1/2) = log sqrt(pi)
    CHECK(std::fabs(log_gamma(0.5) - 0.57236494292470009) < 1e-13);
    CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
}

TEST_CASE("log_beta identities") {
    CHECK(std::fabs(log_beta(1.0, 1.0)) < 1e-14);
    // Beta(1/2,1/2) = pi
    CHECK(std::fabs(log_beta(0.5, 0.5) - 1.1447298858494002) < 1e-13);
    // Beta(2,3) = 1/12
    CHECK(std::fabs(log_beta(2.0, 3.0) - (-2.4849066497880004)) < 1e-13);
    CHECK_THROWS_AS(log_beta(-1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(log_beta(2.0, 0.0), std::domain_error);
}

TEST_CASE("digamma recurrence on random arguments") {
    std::mt19937_64 gen(12345);
    std::uniform_real_distribution<double> u(1e-6, 100.0);
    for (int i = 0; i < 1000; ++i) {
        const double x = u(gen);
        CHECK(std::fabs(digamma(x + 1.0) - digamma(x) - 1.0 / x) < 1e-12);
    }
}

TEST_CASE("integer digamma identity") {
    double harmonic = 0.0;
    for (int k = 1; k <= 50; ++k) {
        CHECK(std::fabs(digamma(static_cast<double>(k)) - (harmonic - euler_gamma)) < 1e-12);
        harmonic += 1.0 / k;
    }
}

TEST_CASE("log_gamma recurrence on random arguments") {
    std::mt19937_64 gen(777);
    std::uniform_real_distribution<double> u(1e-3, 100.0);
    for (int i = 0; i < 1000; ++i) {
        const double x = u(gen);
        const double lhs = log_gamma(x + 1.0);
        const double rhs = log_gamma(x) + std::log(x);
        CHECK(std::fabs(lhs - rhs) < 1e-12 * std::max(1.0, std::fabs(rhs)));
    }
}

TEST_CASE("digamma matches central difference of log_gamma") {
    const double h = 1e-5;
    for (double x : {0.3, 0.7, 1.5, 3.0, 12.0, 250.0}) {
        const double fd = (log_gamma(x + h) - log_gamma(x - h)) / (2.0 * h);
        // second-order accurate: error ~ h^2 |psi''|/6
        CHECK(std::fabs(fd - digamma(x)) < 1e-7);
    }
}
