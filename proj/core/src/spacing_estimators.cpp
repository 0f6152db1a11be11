#include "qdent/spacing_estimators.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qdent/errors.hpp"
#include "qdent/special_functions.hpp"

namespace qdent {

namespace {

void check_window(const Sample& x, int m, bool need_extrapolation = false) {
    const auto n = x.size();
    if (m < 1 || 2 * static_cast<std::size_t>(m) > n) {
        throw Error(ErrorKind::InvalidWindow,
                    "window m=" + std::to_string(m) + " outside [1, n/2] for n=" +
                        std::to_string(n));
    }
    if (need_extrapolation && n < 4) {
        throw Error(ErrorKind::InvalidWindow, "estimator needs n >= 4");
    }
}

double checked_log(double arg, std::size_t i) {
    if (!(arg > 0.0)) {
        throw Error(ErrorKind::DegenerateSpacings,
                    "log argument " + std::to_string(arg) + " at term i=" + std::to_string(i));
    }
    return std::log(arg);
}

} // namespace

std::string to_string(EstimatorId id) {
    switch (id) {
        case EstimatorId::Vasicek:       return "vasicek";
        case EstimatorId::VanEs:         return "vanes";
        case EstimatorId::Correa:        return "correa";
        case EstimatorId::Wieczorkowski: return "wg";
        case EstimatorId::Ebrahimi:      return "ebrahimi";
        case EstimatorId::Yousefzadeh:   return "yousefzadeh";
        case EstimatorId::Kernel:        return "kernel";
        case EstimatorId::ParzenStar:    return "parzen-star";
        case EstimatorId::ParzenTilde:   return "parzen-tilde";
    }
    return "?";
}

EstimatorId parse_estimator_id(const std::string& name) {
    if (name == "vasicek") return EstimatorId::Vasicek;
    if (name == "vanes") return EstimatorId::VanEs;
    if (name == "correa") return EstimatorId::Correa;
    if (name == "wg") return EstimatorId::Wieczorkowski;
    if (name == "ebrahimi") return EstimatorId::Ebrahimi;
    if (name == "yousefzadeh") return EstimatorId::Yousefzadeh;
    if (name == "kernel") return EstimatorId::Kernel;
    if (name == "parzen-star") return EstimatorId::ParzenStar;
    if (name == "parzen-tilde") return EstimatorId::ParzenTilde;
    throw std::invalid_argument("unknown estimator id: " + name);
}

EntropyEstimate vasicek(const Sample& x, const SpacingConfig& cfg) {
    check_window(x, cfg.m);
    const auto n = static_cast<std::ptrdiff_t>(x.size());
    const double scale = static_cast<double>(n) / (2.0 * cfg.m);
    double acc = 0.0;
    for (std::ptrdiff_t i = 1; i <= n; ++i) {
        const double spacing = x.order_stat(i + cfg.m) - x.order_stat(i - cfg.m);
        acc += checked_log(scale * spacing, static_cast<std::size_t>(i));
    }
    return {acc / static_cast<double>(n), EstimatorId::Vasicek, x.size()};
}

EntropyEstimate van_es(const Sample& x, const SpacingConfig& cfg) {
    check_window(x, cfg.m);
    const auto n = static_cast<std::ptrdiff_t>(x.size());
    const int m = cfg.m;
    double acc = 0.0;
    for (std::ptrdiff_t i = 1; i <= n - m; ++i) {
        const double spacing = x.order_stat(i + m) - x.order_stat(i);
        acc += checked_log((n + 1.0) / m * spacing, static_cast<std::size_t>(i));
    }
    double tail = 0.0;
    for (std::ptrdiff_t k = m; k <= n; ++k) tail += 1.0 / static_cast<double>(k);
    const double value =
        acc / static_cast<double>(n - m) + tail + std::log(static_cast<double>(m)) -
        std::log(n + 1.0);
    return {value, EstimatorId::VanEs, x.size()};
}

EntropyEstimate correa(const Sample& x, const SpacingConfig& cfg) {
    check_window(x, cfg.m);
    const auto n = static_cast<std::ptrdiff_t>(x.size());
    const int m = cfg.m;
    const std::ptrdiff_t last = cfg.correa_printed_range ? n - m : n;
    double acc = 0.0;
    for (std::ptrdiff_t i = 1; i <= last; ++i) {
        double mean = 0.0;
        for (std::ptrdiff_t j = i - m; j <= i + m; ++j) mean += x.order_stat(j);
        mean /= (2.0 * m + 1.0);
        double num = 0.0;
        double ss = 0.0;
        for (std::ptrdiff_t j = i - m; j <= i + m; ++j) {
            const double dev = x.order_stat(j) - mean;
            num += dev * static_cast<double>(j - i);
            ss += dev * dev;
        }
        if (!(ss > 0.0)) {
            throw Error(ErrorKind::DegenerateSpacings,
                        "zero-variance window at i=" + std::to_string(i));
        }
        // local least-squares slope of the empirical cdf against the data
        acc += checked_log(num / (static_cast<double>(n) * ss), static_cast<std::size_t>(i));
    }
    return {-acc / static_cast<double>(n), EstimatorId::Correa, x.size()};
}

double wieczorkowski_correction(std::size_t n, int m) {
    const double dn = static_cast<double>(n);
    double psi_sum = 0.0;
    for (int i = 1; i <= m; ++i) psi_sum += digamma(static_cast<double>(i + m - 1));
    return -std::log(dn) + std::log(2.0 * m) - (1.0 - 2.0 * m / dn) * digamma(2.0 * m) +
           digamma(dn + 1.0) - 2.0 / dn * psi_sum;
}

EntropyEstimate wieczorkowski(const Sample& x, const SpacingConfig& cfg) {
    EntropyEstimate base = vasicek(x, cfg);
    base.value += wieczorkowski_correction(x.size(), cfg.m);
    base.id = EstimatorId::Wieczorkowski;
    return base;
}

EntropyEstimate ebrahimi(const Sample& x, const SpacingConfig& cfg) {
    check_window(x, cfg.m);
    const auto n = static_cast<std::ptrdiff_t>(x.size());
    const int m = cfg.m;
    const double dn = static_cast<double>(n);
    double acc = 0.0;
    for (std::ptrdiff_t i = 1; i <= n; ++i) {
        double c;
        if (i <= m) {
            c = 1.0 + (i - 1.0) / m;
        } else if (i <= n - m) {
            c = 2.0;
        } else {
            c = 1.0 + (dn - i) / (cfg.ebrahimi_symmetric_tail ? m : dn);
        }
        const double spacing = x.order_stat(i + m) - x.order_stat(i - m);
        acc += checked_log(dn / (c * m) * spacing, static_cast<std::size_t>(i));
    }
    return {acc / dn, EstimatorId::Ebrahimi, x.size()};
}

namespace {

// The piecewise-linear cdf estimator behind the Yousefzadeh estimator,
// tabulated at the order statistics. The printed top extrapolation
// X_{n+1} = X_n - n/(n-1) (X_n - X_{n-1}) makes the last piece decreasing;
// the repaired reading flips that sign and is the default.
std::vector<double> yousefzadeh_cdf_at_order_stats(const Sample& x, bool as_printed) {
    const auto n = static_cast<std::ptrdiff_t>(x.size());
    const double dn = static_cast<double>(n);
    const double c = (dn - 1.0) / (dn * (dn + 1.0));
    const double x0 = x.order_stat(1) - dn / (dn - 1.0) * (x.order_stat(2) - x.order_stat(1));
    const double top_step = dn / (dn - 1.0) * (x.order_stat(n) - x.order_stat(n - 1));
    const double xn1 = as_printed ? x.order_stat(n) - top_step : x.order_stat(n) + top_step;

    auto ratio = [](double num, double den, std::ptrdiff_t i) {
        if (den == 0.0) {
            throw Error(ErrorKind::DegenerateSpacings,
                        "tied order statistics near i=" + std::to_string(i));
        }
        return num / den;
    };

    std::vector<double> f(static_cast<std::size_t>(n));
    for (std::ptrdiff_t k = 1; k <= n; ++k) {
        const double xv = x.order_stat(k);
        double value;
        if (k <= 2) {
            value = c * (dn / (dn - 1.0) +
                         ratio(xv - x0, x.order_stat(2) - x0, k) +
                         ratio(xv - x.order_stat(1), x.order_stat(3) - x.order_stat(1), k));
        } else if (k <= n - 1) {
            // piece i = k-1 so that X_i <= x <= X_{i+1}
            const std::ptrdiff_t i = k - 1;
            value = c * (static_cast<double>(i) + 1.0 / (dn - 1.0) +
                         ratio(xv - x.order_stat(i - 1), x.order_stat(i + 1) - x.order_stat(i - 1), k) +
                         ratio(xv - x.order_stat(i), x.order_stat(i + 2) - x.order_stat(i), k));
        } else {
            value = c * (dn - 1.0 + 1.0 / (dn - 1.0) +
                         ratio(xv - x.order_stat(n - 2), x.order_stat(n) - x.order_stat(n - 2), k) +
                         ratio(xv - x.order_stat(n - 1), xn1 - x.order_stat(n - 1), k));
        }
        f[static_cast<std::size_t>(k - 1)] = value;
    }
    for (std::size_t k = 1; k < f.size(); ++k) {
        if (f[k] < f[k - 1]) {
            throw Error(ErrorKind::MalformedCdf,
                        "cdf estimate decreases between order statistics " + std::to_string(k) +
                            " and " + std::to_string(k + 1));
        }
    }
    return f;
}

} // namespace

EntropyEstimate yousefzadeh(const Sample& x, const SpacingConfig& cfg) {
    check_window(x, cfg.m, /*need_extrapolation=*/true);
    const auto n = static_cast<std::ptrdiff_t>(x.size());
    const int m = cfg.m;
    const std::vector<double> f = yousefzadeh_cdf_at_order_stats(x, cfg.yousefzadeh_as_printed);
    auto f_at = [&](std::ptrdiff_t i) {
        if (i < 1) i = 1;
        if (i > n) i = n;
        return f[static_cast<std::size_t>(i - 1)];
    };
    double weight_sum = 0.0;
    double acc = 0.0;
    for (std::ptrdiff_t i = 1; i <= n; ++i) {
        const double spacing = x.order_stat(i + m) - x.order_stat(i - m);
        const double df = f_at(i + m) - f_at(i - m);
        if (!(df > 0.0)) {
            throw Error(ErrorKind::DegenerateSpacings,
                        "flat cdf across window at i=" + std::to_string(i));
        }
        acc += checked_log(spacing / df, static_cast<std::size_t>(i)) * df;
        weight_sum += df;
    }
    return {acc / weight_sum, EstimatorId::Yousefzadeh, x.size()};
}

} // namespace qdent
