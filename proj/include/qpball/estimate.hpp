#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "qpball/carleson_box.hpp"
#include "qpball/core.hpp"

namespace qpball {

using AchievingArg = std::variant<CPoint, CarlesonBox>;

/// Result of a Monte-Carlo estimate (integral or supremum cell).
struct EstimateReport {
    double value = 0.0;
    double stderr_ = 0.0;
    long samples = 0;
    std::optional<AchievingArg> achieving_arg;
    bool converged = true;
    long excluded = 0;
};

/// Pairwise (cascade) summation; fixed order gives bit-reproducible reductions.
inline double pairwise_sum(const double* xs, size_t count) {
    if (count == 0) return 0.0;
    if (count <= 8) {
        double s = 0.0;
        for (size_t i = 0; i < count; ++i) s += xs[i];
        return s;
    }
    const size_t half = count / 2;
    return pairwise_sum(xs, half) + pairwise_sum(xs + half, count - half);
}

inline double pairwise_sum(const std::vector<double>& xs) { return pairwise_sum(xs.data(), xs.size()); }

} // namespace qpball
