#pragma once

#include "qpball/mobius.hpp"
#include "qpball/quadrature.hpp"

namespace qpball {

/// Radial Green-type profile
///   g(r) = (n+1)/(2n) * int_r^1 (1 - t^2)^(n-1) t^(-2n+1) dt,   r in (0, 1],
/// strictly decreasing with g(1) = 0 and a pole at r = 0.
inline double green_g(int n, double r, double rel_tol = kQuadRelTol) {
    if (n < 2 || n > kMaxDim) throw std::domain_error("green_g: n must be in [2, " + std::to_string(kMaxDim) + "]");
    if (r <= 0.0) throw pole_error("green_g: pole at r = 0");
    if (r >= 1.0) return 0.0;
    const double e = static_cast<double>(-2 * n + 1);
    auto integrand = [n, e](double t) {
        return std::pow(1.0 - t * t, n - 1) * std::pow(t, e);
    };
    auto q = integrate_gk(integrand, r, 1.0, rel_tol, 1e-300);
    return (n + 1.0) / (2.0 * n) * q.value;
}

/// G(z, a) = g(|phi_a(z)|); pole at z = a.
inline double green_G(const CPoint& z, const CPoint& a, double rel_tol = kQuadRelTol) {
    const double r = pseudo_hyperbolic_dist(a, z);
    if (r == 0.0) throw pole_error("green_G: pole at z = a");
    return green_g(z.dim(), r, rel_tol);
}

} // namespace qpball
