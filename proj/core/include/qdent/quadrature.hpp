#pragma once

#include <cmath>
#include <utility>
#include <vector>

namespace qdent {

// Composite-Simpson refinement plan: start on `initial_nodes`, double the
// grid until two successive estimates agree to `tolerance` or `max_nodes`
// is reached. Node counts must be of the form 2^k + 1.
struct QuadratureSpec {
    int initial_nodes = 129;
    int max_nodes = 4097;
    double tolerance = 1e-8;
};

struct QuadratureResult {
    double value = 0.0;
    int nodes = 0;
    bool converged = false;
};

// Absolute tolerance suits integrands whose level is fixed (log qdf values);
// relative suits normalizers that scale with the data.
enum class RefinementCriterion { Absolute, Relative };

// Deterministic refinement; previously evaluated nodes are reused when the
// grid doubles. Exceptions from `f` propagate.
template <class F>
QuadratureResult simpson_refine(F&& f, double a, double b, const QuadratureSpec& spec,
                                RefinementCriterion criterion = RefinementCriterion::Absolute) {
    auto simpson_sum = [&](const std::vector<double>& v) {
        double s = v.front() + v.back();
        for (std::size_t i = 1; i + 1 < v.size(); ++i) {
            s += v[i] * ((i % 2 == 1) ? 4.0 : 2.0);
        }
        return s * (b - a) / static_cast<double>(v.size() - 1) / 3.0;
    };

    int nodes = spec.initial_nodes;
    std::vector<double> vals(static_cast<std::size_t>(nodes));
    for (int i = 0; i < nodes; ++i) {
        vals[static_cast<std::size_t>(i)] = f(a + (b - a) * i / (nodes - 1));
    }
    double estimate = simpson_sum(vals);

    while (nodes < spec.max_nodes) {
        const int refined_nodes = 2 * (nodes - 1) + 1;
        std::vector<double> refined(static_cast<std::size_t>(refined_nodes));
        for (int i = 0; i < refined_nodes; ++i) {
            refined[static_cast<std::size_t>(i)] =
                (i % 2 == 0) ? vals[static_cast<std::size_t>(i / 2)]
                             : f(a + (b - a) * i / (refined_nodes - 1));
        }
        const double next = simpson_sum(refined);
        vals = std::move(refined);
        nodes = refined_nodes;
        const double scale =
            (criterion == RefinementCriterion::Relative) ? std::fabs(next) : 1.0;
        if (std::fabs(next - estimate) < spec.tolerance * scale) {
            return {next, nodes, true};
        }
        estimate = next;
    }
    return {estimate, nodes, false};
}

} // namespace qdent
