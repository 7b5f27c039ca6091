#pragma once

#include <functional>
#include <optional>
#include <string>

#include "qpball/core.hpp"

namespace qpball {

/// Positive Borel measure on B given by a density against dv, optionally
/// cut off to the shell |z| > r.  Densities must be non-negative wherever
/// they are sampled; a negative value is a caller bug and throws.
struct MeasureDensity {
    std::function<double(const CPoint&)> density;
    std::string description;
    std::optional<double> cutoff_r;

    double operator()(const CPoint& z) const {
        if (cutoff_r && z.abs() <= *cutoff_r) return 0.0;
        const double d = density(z);
        if (d < 0.0) throw std::domain_error("MeasureDensity: negative density sampled (" + description + ")");
        return d;
    }

    MeasureDensity with_cutoff(double r) const {
        if (!(r > 0.0 && r < 1.0)) throw std::domain_error("MeasureDensity: cutoff radius must lie in (0, 1)");
        MeasureDensity m = *this;
        m.cutoff_r = r;
        m.description = description + " restricted to |z| > " + std::to_string(r);
        return m;
    }

    static MeasureDensity zero() {
        return {[](const CPoint&) { return 0.0; }, "zero measure", std::nullopt};
    }
    static MeasureDensity lebesgue() {
        return {[](const CPoint&) { return 1.0; }, "dv", std::nullopt};
    }
};

} // namespace qpball
