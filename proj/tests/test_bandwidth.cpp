#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "qdent/bandwidth.hpp"
#include "qdent/errors.hpp"

using namespace qdent;

TEST_CASE("amse plug-in value for the unit exponential") {
    // q(1/2) = 2, q''(1/2) = -16: h = {4/(2 sqrt(pi)) / (50*256)}^{1/5}
    const double h = amse_optimal_h(Distribution::exponential(1.0), 0.5, 50);
    CHECK(std::fabs(h - 0.15456) < 1e-4);
}

TEST_CASE("uniform law has singular curvature everywhere") {
    for (double t : {0.1, 0.5, 0.9}) {
        try {
            amse_optimal_h(Distribution::uniform01(), t, 50);
            FAIL("expected SingularCurvature");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::SingularCurvature);
        }
    }
    CHECK_THROWS_AS(amse_median_h(Distribution::uniform01(), 50), Error);
}

TEST_CASE("amse bandwidth is scale invariant") {
    // q and q'' both scale linearly, so the ratio q^2/q''^2 cancels
    for (double t : {0.2, 0.5, 0.8}) {
        const double base = amse_optimal_h(Distribution::normal(0.0, 1.0), t, 100);
        const double scaled = amse_optimal_h(Distribution::normal(0.0, 7.0), t, 100);
        CHECK(scaled == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("amse median summary sits between the pointwise extremes") {
    const auto d = Distribution::exponential(1.0);
    double lo = 1e9, hi = 0.0;
    for (int i = 2; i <= 8; ++i) {
        const double h = amse_optimal_h(d, i / 10.0, 50);
        lo = std::min(lo, h);
        hi = std::max(hi, h);
    }
    const double med = amse_median_h(d, 50);
    CHECK(med >= lo);
    CHECK(med <= hi);
}

TEST_CASE("grid helpers") {
    const auto grid = BandwidthGrid::log_spaced(0.001, 1.0, 40);
    CHECK(grid.h.size() == 40);
    CHECK(grid.h.front() == doctest::Approx(0.001));
    CHECK(grid.h.back() == doctest::Approx(1.0));
    for (std::size_t i = 1; i < grid.h.size(); ++i) CHECK(grid.h[i] > grid.h[i - 1]);
    CHECK(BandwidthGrid::default_grid().h.size() == 40);
    CHECK_THROWS_AS(BandwidthGrid::log_spaced(0.0, 1.0, 5), std::invalid_argument);
}

TEST_CASE("single-candidate grid returns that candidate") {
    BandwidthGrid grid;
    grid.h = {0.157};
    const auto result = grid_search_h(Distribution::normal(0.0, 1.0), 10, {}, grid, 50, 99);
    CHECK(result.h_star == 0.157);
    CHECK(result.curve.size() == 1);
    CHECK(result.curve[0].mse >= 0.0);
}

TEST_CASE("grid search is deterministic in the seed") {
    BandwidthGrid grid;
    grid.h = {0.05, 0.157, 0.5};
    const auto a = grid_search_h(Distribution::normal(0.0, 1.0), 10, {}, grid, 100, 7);
    const auto b = grid_search_h(Distribution::normal(0.0, 1.0), 10, {}, grid, 100, 7);
    CHECK(a.h_star == b.h_star);
    REQUIRE(a.curve.size() == b.curve.size());
    for (std::size_t j = 0; j < a.curve.size(); ++j) {
        CHECK(a.curve[j].mse == b.curve[j].mse);
        CHECK(a.curve[j].failures == b.curve[j].failures);
    }
}

TEST_CASE("argmin attains the curve minimum") {
    BandwidthGrid grid;
    grid.h = {0.02, 0.0333, 0.1, 0.3};
    const auto result = grid_search_h(Distribution::normal(0.0, 1.0), 50, {}, grid, 300, 17);
    double best = 1e300;
    for (const auto& point : result.curve) {
        CHECK(point.mse >= 0.0);
        if (!point.disqualified) best = std::min(best, point.mse);
    }
    for (const auto& point : result.curve) {
        if (point.h == result.h_star) CHECK(point.mse == best);
    }
}

TEST_CASE("degenerate bandwidths are disqualified") {
    // at h = 1e-6 the kernel mass between design points vanishes, so the
    // qdf estimate is nonpositive at almost every node
    BandwidthGrid grid;
    grid.h = {1e-6, 0.157};
    const auto result = grid_search_h(Distribution::normal(0.0, 1.0), 10, {}, grid, 100, 23);
    CHECK(result.curve[0].disqualified);
    CHECK(result.curve[0].failures > 1);
    CHECK(result.h_star == 0.157);
}

TEST_CASE("normal n=50 optimum lands near its published bandwidth") {
    // the table value 0.0333 should be recovered to within one grid step
    const auto grid = BandwidthGrid::log_spaced(0.01, 0.12, 10);
    const auto result = grid_search_h(Distribution::normal(0.0, 1.0), 50, {}, grid, 2000, 4242);
    std::size_t star = 0, target = 0;
    for (std::size_t j = 0; j < grid.h.size(); ++j) {
        if (grid.h[j] == result.h_star) star = j;
        if (std::fabs(grid.h[j] - 0.0333) < std::fabs(grid.h[target] - 0.0333)) target = j;
    }
    const auto distance = (star > target) ? star - target : target - star;
    CHECK(distance <= 1);
}
