#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qdent {

// A data vector together with its order statistics. Every estimator in the
// library is a function of the sorted view only; input order never matters.
class Sample {
public:
    explicit Sample(std::vector<double> values) : values_(std::move(values)) {
        if (values_.size() < 2) {
            throw std::invalid_argument("Sample requires at least 2 observations, got " +
                                        std::to_string(values_.size()));
        }
        for (double v : values_) {
            if (!std::isfinite(v)) {
                throw std::invalid_argument("Sample contains a non-finite value");
            }
        }
        sorted_ = values_;
        std::sort(sorted_.begin(), sorted_.end());
    }

    std::size_t size() const noexcept { return values_.size(); }
    const std::vector<double>& values() const noexcept { return values_; }
    const std::vector<double>& sorted() const noexcept { return sorted_; }

    // 1-based order statistic with the boundary convention used by all
    // spacing estimators: indices below 1 clamp to the minimum, above n to
    // the maximum.
    double order_stat(std::ptrdiff_t i) const noexcept {
        const auto n = static_cast<std::ptrdiff_t>(sorted_.size());
        if (i < 1) i = 1;
        if (i > n) i = n;
        return sorted_[static_cast<std::size_t>(i - 1)];
    }

private:
    std::vector<double> values_;
    std::vector<double> sorted_;
};

} // namespace qdent
