#pragma once

#include "qpball/holo_function.hpp"
#include "qpball/quadrature.hpp"
#include "qpball/sampling.hpp"

namespace qpball {

/// int_0^1 h(tz) dt/t for h vanishing at 0 to order >= 1.  Polynomials go
/// through the exact term-wise rule sum c_alpha z^alpha / |alpha|; everything
/// else through adaptive quadrature (the integrand extends continuously to
/// t = 0 by the vanishing contract, and the rule never evaluates endpoints).
inline cplx ray_integral(const HoloFunction& h, const CPoint& z, double rel_tol = 1e-9) {
    if (h.is_polynomial()) return h.as_polynomial().ray_primitive().eval(z);
    const cplx h0 = h.eval(CPoint::origin(h.dim()));
    if (std::abs(h0) > 1e-12)
        throw std::invalid_argument("ray_integral: h(0) != 0, the dt/t integral diverges");
    if (z.abs() == 0.0) return 0.0;
    auto along_ray = [&](double t) -> cplx {
        CVec v(z.dim());
        for (int j = 0; j < z.dim(); ++j) v[j] = t * z.v[j];
        return h.eval(CPoint(v)) / t;
    };
    return integrate_gk(along_ray, 0.0, 1.0, rel_tol, 1e-14).value;
}

/// Monte-Carlo value of the representation-formula transform
///   int_B h(w) (1-|w|^2)^s / |1 - <z,w>|^(n+1+s) dv(w),
/// for a dv cloud over the ball.
template <typename H>
EstimateReport kernel_transform(H&& h, double s, const CPoint& z,
                                const SampleCloud& cloud, const EstimatePolicy& policy = {}) {
    if (s <= -1.0) throw std::domain_error("kernel_transform: s must exceed -1 for an integrable weight");
    if (cloud.target != TargetMeasure::dv)
        throw std::invalid_argument("kernel_transform: cloud must target dv");
    const double n = cloud.n;
    auto integrand = [&](const CPoint& w) {
        const double k = std::pow(1.0 - w.abs_sq(), s) / std::pow(std::abs(1.0 - inner(z, w)), n + 1.0 + s);
        return h(w) * k;
    };
    return integrate(integrand, cloud, policy);
}

} // namespace qpball
