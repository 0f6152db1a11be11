#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qdent/distributions.hpp"
#include "qdent/errors.hpp"
#include "qdent/kernel_qdf.hpp"
#include "qdent/quadrature.hpp"
#include "qdent/sample.hpp"

using namespace qdent;

namespace {

Sample normal_sample(std::size_t n, std::uint64_t seed) {
    RngStream rng(seed, 0);
    return sample(Distribution::normal(0.0, 1.0), n, rng);
}

// Smoothed empirical quantile by the convolution integral in closed form:
// each flat cell of Q_n contributes X_k times the kernel mass over the cell.
double smoothed_quantile_oracle(const Sample& x, double t, double h) {
    const auto n = x.size();
    double acc = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        const double lo = (static_cast<double>(k) - 1.0) / static_cast<double>(n);
        const double hi = static_cast<double>(k) / static_cast<double>(n);
        const double mass = normal_cdf((t - lo) / h) - normal_cdf((t - hi) / h);
        acc += x.order_stat(static_cast<std::ptrdiff_t>(k)) * mass;
    }
    return acc;
}

} // namespace

TEST_CASE("empirical quantile cells") {
    const Sample x({0.5, 1.5, 2.5, 3.5});
    CHECK(empirical_quantile(x, 0.5) == 1.5);  // k = 2
    CHECK(empirical_quantile(x, 0.51) == 2.5); // just past k/n
    CHECK(empirical_quantile(x, 1.0) == 3.5);
    CHECK(empirical_quantile(x, 0.25) == 0.5);
    CHECK_THROWS_AS(empirical_quantile(x, 0.0), std::domain_error);
    CHECK_THROWS_AS(empirical_quantile(x, 1.0001), std::domain_error);
}

TEST_CASE("qdf closed-form spot value") {
    const Sample x({1, 2, 3, 4});
    KernelConfig cfg;
    cfg.h = 0.1;
    const double v = qdf_hat(x, 0.5, cfg);
    CHECK(std::fabs(v - 4.3400) < 5e-4);              // tabulated-kernel arithmetic
    CHECK(v == doctest::Approx(4.340033415471139).epsilon(1e-12)); // frozen regression value
}

TEST_CASE("qdf is homogeneous in the order statistics") {
    const Sample x = normal_sample(20, 3);
    std::vector<double> scaled(x.values());
    for (double& v : scaled) v *= 2.5;
    const Sample y{std::move(scaled)};
    KernelConfig cfg;
    cfg.h = 0.07;
    for (double t : {0.1, 0.33, 0.5, 0.9}) {
        CHECK(qdf_hat(y, t, cfg) == doctest::Approx(2.5 * qdf_hat(x, t, cfg)).epsilon(1e-13));
    }
}

TEST_CASE("qdf matches the derivative of the smoothed quantile") {
    // interior t only: near the edges the closed form adds its boundary
    // reflection terms on top of the plain convolution derivative
    const Sample x = normal_sample(20, 12);
    const double h = 0.08;
    const double dt = 1e-6;
    KernelConfig cfg;
    cfg.h = h;
    for (double t : {0.45, 0.5, 0.55}) {
        const double fd = (smoothed_quantile_oracle(x, t + dt, h) -
                           smoothed_quantile_oracle(x, t - dt, h)) /
                          (2.0 * dt);
        CHECK(std::fabs(qdf_hat(x, t, cfg) - fd) < 1e-4 * std::fabs(fd));
    }
}

TEST_CASE("entropy estimate is exactly scale equivariant") {
    const Sample x = normal_sample(50, 4);
    KernelConfig cfg;
    cfg.h = 0.0333;
    for (double a : {0.2, 3.0, 41.5}) {
        std::vector<double> scaled(x.values());
        for (double& v : scaled) v *= a;
        const double lhs = entropy_hat(Sample{std::move(scaled)}, cfg).value;
        const double rhs = entropy_hat(x, cfg).value + std::log(a);
        CHECK(std::fabs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("translation leaks only through the boundary kernels") {
    // with eps/h = 10 the boundary kernel mass is ~1e-22, so a unit shift
    // must not move the estimate beyond rounding noise
    const Sample x = normal_sample(40, 5);
    KernelConfig cfg;
    cfg.h = 0.01;
    cfg.eps = 0.1;
    std::vector<double> shifted(x.values());
    for (double& v : shifted) v += 1.0;
    const double delta =
        std::fabs(entropy_hat(Sample{std::move(shifted)}, cfg).value - entropy_hat(x, cfg).value);
    CHECK(delta < 1e-10);
}

TEST_CASE("constant sample has no positive qdf") {
    try {
        KernelConfig cfg;
        cfg.h = 0.1;
        entropy_hat(Sample({1.0, 1.0, 1.0, 1.0}), cfg);
        FAIL("expected NonPositiveQdf");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonPositiveQdf);
        CHECK(std::string(e.what()).find("t=") != std::string::npos);
    }
}

TEST_CASE("qdf curve entries are positive and trimmed") {
    const Sample x = normal_sample(50, 6);
    KernelConfig cfg;
    cfg.h = 0.0333;
    const QdfCurve curve = qdf_curve(x, cfg, 101);
    CHECK(curve.t.front() == doctest::Approx(cfg.eps));
    CHECK(curve.t.back() == doctest::Approx(1.0 - cfg.eps));
    for (double q : curve.q) CHECK(q > 0.0);
}

TEST_CASE("quadrature refinement is stable") {
    const Sample x = normal_sample(50, 7);
    KernelConfig coarse;
    coarse.h = 0.0333;
    KernelConfig fine = coarse;
    fine.quadrature.initial_nodes = 257;
    const double a = entropy_hat(x, coarse).value;
    const double b = entropy_hat(x, fine).value;
    CHECK(std::fabs(a - b) < 1e-6);
}

TEST_CASE("refinement that stalls above tolerance is an error") {
    const Sample x = normal_sample(50, 8);
    KernelConfig cfg;
    cfg.h = 0.0333;
    cfg.quadrature.tolerance = 1e-18;
    cfg.quadrature.max_nodes = 257;
    try {
        entropy_hat(x, cfg);
        FAIL("expected QuadratureNotConverged");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::QuadratureNotConverged);
    }
}

TEST_CASE("qdf mass approaches the sample range as the smoothing vanishes") {
    // int qhat over [eps, 1-eps], evaluated in closed form through the
    // kernel cdf. In the joint small-(h, eps) regime with eps/h large every
    // interior spacing keeps its full kernel mass inside the window and the
    // boundary-reflection atoms leak nothing in, so the integral recovers
    // max - min. (With h comparable to eps the reflection terms add mass
    // and the trim removes tail spacings; the 5% band fails there.)
    const Sample x = normal_sample(1000, 9);
    const double h = 1e-4;
    const double eps = 5e-4;
    const auto n = x.size();
    auto kernel_window_mass = [&](double center) {
        return normal_cdf((1.0 - eps - center) / h) - normal_cdf((eps - center) / h);
    };
    double mass = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        const double spacing = x.sorted()[i] - x.sorted()[i - 1];
        mass += spacing * kernel_window_mass(static_cast<double>(i) / static_cast<double>(n));
    }
    mass += x.sorted().back() * kernel_window_mass(1.0) -
            x.sorted().front() * kernel_window_mass(0.0);
    const double range = x.sorted().back() - x.sorted().front();
    CHECK(std::fabs(mass - range) < 0.05 * range);
}

TEST_CASE("estimation error shrinks with the sample size") {
    const double truth = Distribution::normal(0.0, 1.0).true_entropy();
    auto median_abs_error = [&](std::size_t n, double h) {
        KernelConfig cfg;
        cfg.h = h;
        std::vector<double> errors;
        for (int r = 0; r < 40; ++r) {
            RngStream rng(2222, static_cast<std::uint64_t>(r));
            const Sample x = sample(Distribution::normal(0.0, 1.0), n, rng);
            errors.push_back(std::fabs(entropy_hat(x, cfg).value - truth));
        }
        std::sort(errors.begin(), errors.end());
        return errors[errors.size() / 2];
    };
    const double at50 = median_abs_error(50, 0.0333);
    const double at500 = median_abs_error(500, 0.0333 * std::sqrt(50.0 / 500.0));
    CHECK(at500 < at50);
}

TEST_CASE("config validation") {
    const Sample x({1, 2, 3});
    KernelConfig cfg;
    cfg.h = 0.0;
    CHECK_THROWS_AS(entropy_hat(x, cfg), std::invalid_argument);
    cfg.h = 0.1;
    cfg.eps = 0.5;
    CHECK_THROWS_AS(entropy_hat(x, cfg), std::invalid_argument);
    cfg.eps = 0.01;
    cfg.quadrature.initial_nodes = 128; // even
    CHECK_THROWS_AS(entropy_hat(x, cfg), std::invalid_argument);
}
