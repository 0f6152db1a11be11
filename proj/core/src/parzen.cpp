#include "qdent/parzen.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdent/errors.hpp"
#include "qdent/quadrature.hpp"

namespace qdent {

namespace {

double shape_density_at_quantile(const Distribution& shape, double t) {
    if (shape.kind() == DistKind::Uniform01) return 1.0;
    return shape.pdf(shape.quantile(t));
}

// int_a^b f0(Q0(t)) dt, closed form (substituting t = F0(y) gives
// int f0(y)^2 dy).
double shape_weight_integral(const Distribution& shape, double a, double b) {
    switch (shape.kind()) {
        case DistKind::Uniform01:
            return b - a;
        case DistKind::Normal: {
            const double ya = normal_quantile(a);
            const double yb = normal_quantile(b);
            return (normal_cdf(yb * std::sqrt(2.0)) - normal_cdf(ya * std::sqrt(2.0))) /
                   (2.0 * std::sqrt(M_PI));
        }
        default:
            throw std::invalid_argument("location-scale null supports normal or uniform shape");
    }
}

// int_a^b log f0(Q0(t)) dt, closed form for the supported shapes.
double shape_log_density_integral(const Distribution& shape, double a, double b) {
    switch (shape.kind()) {
        case DistKind::Uniform01:
            return 0.0;
        case DistKind::Normal: {
            const double ya = normal_quantile(a);
            const double yb = normal_quantile(b);
            auto second_moment_piece = [](double y) {
                const double phi = std::exp(-0.5 * y * y) / std::sqrt(2.0 * M_PI);
                return normal_cdf(y) - y * phi; // antiderivative of y^2 phi(y)
            };
            const double y2_mass = second_moment_piece(yb) - second_moment_piece(ya);
            return -0.5 * std::log(2.0 * M_PI) * (b - a) - 0.5 * y2_mass;
        }
        default:
            throw std::invalid_argument("location-scale null supports normal or uniform shape");
    }
}

std::size_t cell_index(double t, std::size_t n) {
    auto i = static_cast<std::ptrdiff_t>(std::ceil(t * static_cast<double>(n)));
    if (i < 1) i = 1;
    if (i > static_cast<std::ptrdiff_t>(n)) i = static_cast<std::ptrdiff_t>(n);
    return static_cast<std::size_t>(i);
}

std::vector<double> cell_slopes(const Sample& x, bool extrapolate_first_cell) {
    const auto n = static_cast<std::ptrdiff_t>(x.size());
    const double dn = static_cast<double>(n);
    std::vector<double> slopes(x.size());
    double x0 = x.order_stat(1);
    if (extrapolate_first_cell) {
        x0 = x.order_stat(1) - dn / (dn - 1.0) * (x.order_stat(2) - x.order_stat(1));
    }
    slopes[0] = dn * (x.order_stat(1) - x0);
    for (std::ptrdiff_t i = 2; i <= n; ++i) {
        slopes[static_cast<std::size_t>(i - 1)] = dn * (x.order_stat(i) - x.order_stat(i - 1));
    }
    return slopes;
}

} // namespace

double sample_quantile_tilde(const Sample& x, double t) {
    if (!(t > 0.0 && t <= 1.0)) {
        throw std::domain_error("sample_quantile_tilde requires t in (0,1]");
    }
    const auto n = static_cast<double>(x.size());
    const auto i = static_cast<std::ptrdiff_t>(cell_index(t, x.size()));
    const double lo = (i == 1) ? x.order_stat(1) : x.order_stat(i - 1);
    const double hi = x.order_stat(i);
    if (lo == hi) return lo;
    return lo + n * (t - (i - 1.0) / n) * (hi - lo);
}

EntropyEstimate parzen_entropy_star(const Sample& x, const LocationScaleNull& null_model,
                                    const KernelConfig& cfg) {
    cfg.validate();
    const QdfEvaluator qhat(x, cfg.h);
    const double eps = cfg.eps;

    auto positive_qhat = [&](double t) {
        const double q = qhat(t);
        if (!(q > 0.0)) {
            throw Error(ErrorKind::NonPositiveQdf,
                        "qdf estimate " + std::to_string(q) + " at t=" + std::to_string(t));
        }
        return q;
    };
    auto weighted = [&](double t) { return shape_density_at_quantile(null_model.shape, t) *
                                           positive_qhat(t); };

    // relative criterion: the normalizer carries the data units, so the
    // refinement depth (and with it exact scale invariance) must not depend
    // on the measurement scale
    const QuadratureResult sigma_integral = simpson_refine(weighted, eps, 1.0 - eps,
                                                           cfg.quadrature,
                                                           RefinementCriterion::Relative);
    if (!sigma_integral.converged) {
        throw Error(ErrorKind::QuadratureNotConverged, "scale normalizer did not converge");
    }
    const double sigma0 = eps * weighted(eps) + eps * weighted(1.0 - eps) + sigma_integral.value;
    const double log_sigma0 = std::log(sigma0);

    auto log_dstar = [&](double t) {
        return std::log(shape_density_at_quantile(null_model.shape, t)) +
               std::log(positive_qhat(t)) - log_sigma0;
    };
    const QuadratureResult entropy_integral = simpson_refine(log_dstar, eps, 1.0 - eps,
                                                             cfg.quadrature);
    if (!entropy_integral.converged) {
        throw Error(ErrorKind::QuadratureNotConverged, "entropy integral did not converge");
    }
    const double value = eps * log_dstar(eps) + eps * log_dstar(1.0 - eps) +
                         entropy_integral.value;
    return {value, EstimatorId::ParzenStar, x.size()};
}

EntropyEstimate parzen_entropy_tilde(const Sample& x, const LocationScaleNull& null_model,
                                     double eps) {
    if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("eps must lie in (0, 1/2)");
    const auto n = x.size();
    const double dn = static_cast<double>(n);
    const std::vector<double> slopes = cell_slopes(x, null_model.extrapolate_first_cell);

    auto slope_at = [&](double t) {
        const double s = slopes[cell_index(t, n) - 1];
        if (!(s > 0.0)) {
            throw Error(ErrorKind::DegenerateSpacings,
                        "zero quantile slope inside the trimmed range at t=" + std::to_string(t));
        }
        return s;
    };

    // Per-cell pieces of [eps, 1-eps].
    struct Piece {
        double a, b;
        double slope;
    };
    std::vector<Piece> pieces;
    const std::size_t first = cell_index(eps, n);
    const std::size_t last = cell_index(1.0 - eps, n);
    for (std::size_t i = first; i <= last; ++i) {
        const double a = std::max(eps, (static_cast<double>(i) - 1.0) / dn);
        const double b = std::min(1.0 - eps, static_cast<double>(i) / dn);
        if (b <= a) continue;
        const double s = slopes[i - 1];
        if (!(s > 0.0)) {
            throw Error(ErrorKind::DegenerateSpacings,
                        "zero quantile slope on cell " + std::to_string(i));
        }
        pieces.push_back({a, b, s});
    }

    double sigma0 = eps * shape_density_at_quantile(null_model.shape, eps) * slope_at(eps) +
                    eps * shape_density_at_quantile(null_model.shape, 1.0 - eps) *
                        slope_at(1.0 - eps);
    for (const Piece& piece : pieces) {
        sigma0 += piece.slope * shape_weight_integral(null_model.shape, piece.a, piece.b);
    }
    const double log_sigma0 = std::log(sigma0);

    auto log_density = [&](double t) {
        return std::log(shape_density_at_quantile(null_model.shape, t)) +
               std::log(slope_at(t)) - log_sigma0;
    };
    double value = eps * log_density(eps) + eps * log_density(1.0 - eps);
    for (const Piece& piece : pieces) {
        value += shape_log_density_integral(null_model.shape, piece.a, piece.b) +
                 (piece.b - piece.a) * (std::log(piece.slope) - log_sigma0);
    }
    return {value, EstimatorId::ParzenTilde, x.size()};
}

} // namespace qdent
