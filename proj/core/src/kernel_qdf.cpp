#include "qdent/kernel_qdf.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qdent/errors.hpp"

namespace qdent {

namespace {

inline double gaussian_kernel(double u) {
    return std::exp(-0.5 * u * u) / std::sqrt(2.0 * M_PI);
}

[[noreturn]] void throw_nonpositive(double q, double t) {
    throw Error(ErrorKind::NonPositiveQdf,
                "qdf estimate " + std::to_string(q) + " at t=" + std::to_string(t));
}

} // namespace

void KernelConfig::validate() const {
    if (!(h > 0.0)) throw std::invalid_argument("bandwidth h must be positive");
    if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("eps must lie in (0, 1/2)");
    if (quadrature.initial_nodes < 3 || quadrature.initial_nodes % 2 == 0) {
        throw std::invalid_argument("quadrature needs an odd node count >= 3");
    }
    if (quadrature.max_nodes < quadrature.initial_nodes) {
        throw std::invalid_argument("quadrature node budget below the initial grid");
    }
    if (!(quadrature.tolerance > 0.0)) {
        throw std::invalid_argument("quadrature tolerance must be positive");
    }
}

double empirical_quantile(const Sample& x, double t) {
    if (!(t > 0.0 && t <= 1.0)) {
        throw std::domain_error("empirical_quantile requires t in (0,1]");
    }
    const auto n = x.size();
    auto k = static_cast<std::ptrdiff_t>(std::ceil(t * static_cast<double>(n)));
    if (k < 1) k = 1;
    return x.order_stat(k);
}

QdfEvaluator::QdfEvaluator(const Sample& x, double h)
    : h_(h), x_min_(x.sorted().front()), x_max_(x.sorted().back()) {
    const auto& s = x.sorted();
    spacings_.resize(s.size() - 1);
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        spacings_[i] = s[i + 1] - s[i];
    }
}

double QdfEvaluator::operator()(double t) const {
    const auto n = spacings_.size() + 1;
    double acc = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        const double u = (t - static_cast<double>(i) / static_cast<double>(n)) / h_;
        acc += gaussian_kernel(u) * spacings_[i - 1];
    }
    acc += gaussian_kernel((t - 1.0) / h_) * x_max_ - gaussian_kernel(t / h_) * x_min_;
    return acc / h_;
}

double qdf_hat(const Sample& x, double t, const KernelConfig& cfg) {
    cfg.validate();
    if (!(t > 0.0 && t < 1.0)) {
        throw std::domain_error("qdf_hat requires t in (0,1)");
    }
    return QdfEvaluator(x, cfg.h)(t);
}

QdfCurve qdf_curve(const Sample& x, const KernelConfig& cfg, int points) {
    cfg.validate();
    if (points < 2) throw std::invalid_argument("qdf_curve needs at least 2 points");
    const QdfEvaluator qhat(x, cfg.h);
    QdfCurve curve;
    curve.t.resize(static_cast<std::size_t>(points));
    curve.q.resize(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double t = cfg.eps + (1.0 - 2.0 * cfg.eps) * i / (points - 1);
        const double q = qhat(t);
        if (!(q > 0.0)) throw_nonpositive(q, t);
        curve.t[static_cast<std::size_t>(i)] = t;
        curve.q[static_cast<std::size_t>(i)] = q;
    }
    return curve;
}

EntropyEstimate entropy_hat(const Sample& x, const KernelConfig& cfg) {
    cfg.validate();
    const QdfEvaluator qhat(x, cfg.h);
    auto log_qhat = [&](double t) {
        const double q = qhat(t);
        if (!(q > 0.0)) throw_nonpositive(q, t);
        return std::log(q);
    };
    const double lo = log_qhat(cfg.eps);
    const double hi = log_qhat(1.0 - cfg.eps);
    const QuadratureResult integral =
        simpson_refine(log_qhat, cfg.eps, 1.0 - cfg.eps, cfg.quadrature);
    if (!integral.converged) {
        throw Error(ErrorKind::QuadratureNotConverged,
                    "refinement still above tolerance at " + std::to_string(integral.nodes) +
                        " nodes");
    }
    return {cfg.eps * lo + cfg.eps * hi + integral.value, EstimatorId::Kernel, x.size()};
}

} // namespace qdent
