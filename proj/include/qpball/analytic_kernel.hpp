#pragma once

#include "qpball/core.hpp"

namespace qpball {

/// Closed-form holomorphic test functions of the scalar variable u = <z, w>.
///
///   LogKernel(w):             log 1/(1 - <z,w>),                     |w| < 1
///   ShiftedLogKernel(xi, d):  log 2/(1 - <z, (1-d) xi>)
///   NormalizedSquaredLog:     c * (log 2/(1 - <z,w>))^2 with
///                             c = 1/log(2/d)  for the (xi, d) form, or
///                             c = 1/log(2/(1-|w|^2)) for the w form.
///
/// 1 - u has positive real part throughout the closed ball (since |u| <= |w| < 1),
/// so the principal branch of the logarithm is never near its cut.
class AnalyticKernel {
public:
    enum class Kind { log_kernel, shifted_log, normalized_squared_log };

    static AnalyticKernel log_kernel(const CPoint& w) {
        require_interior(w, "AnalyticKernel::log_kernel");
        return AnalyticKernel(Kind::log_kernel, w, 1.0, 0.0);
    }
    static AnalyticKernel shifted_log(const CPoint& xi, double delta) {
        require_unit(xi, "AnalyticKernel::shifted_log");
        if (!(delta > 0.0 && delta < 1.0))
            throw std::domain_error("AnalyticKernel::shifted_log: delta must lie in (0, 1)");
        return AnalyticKernel(Kind::shifted_log, scale_point(xi, 1.0 - delta), 1.0, delta);
    }
    static AnalyticKernel normalized_squared_log(const CPoint& xi, double delta) {
        require_unit(xi, "AnalyticKernel::normalized_squared_log");
        if (!(delta > 0.0 && delta < 1.0))
            throw std::domain_error("AnalyticKernel::normalized_squared_log: delta must lie in (0, 1)");
        return AnalyticKernel(Kind::normalized_squared_log, scale_point(xi, 1.0 - delta),
                              1.0 / std::log(2.0 / delta), delta);
    }
    static AnalyticKernel normalized_squared_log_at(const CPoint& w) {
        require_interior(w, "AnalyticKernel::normalized_squared_log_at");
        return AnalyticKernel(Kind::normalized_squared_log, w,
                              1.0 / std::log(2.0 / (1.0 - w.abs_sq())), 0.0);
    }

    Kind kind() const { return kind_; }
    const CPoint& anchor() const { return w_; }
    int dim() const { return w_.dim(); }
    double prefactor() const { return c_; }

    cplx eval(const CPoint& z) const { return profile(inner(z, w_)); }

    /// R f(z) = F'(u) * u with u = <z, w>.
    cplx radial_derivative(const CPoint& z) const {
        const cplx u = inner(z, w_);
        return profile_derivative(u) * u;
    }

    /// grad f(z) = F'(u) * conj(w).
    CVec gradient(const CPoint& z) const {
        const cplx d = profile_derivative(inner(z, w_));
        CVec g(w_.dim());
        for (int j = 0; j < w_.dim(); ++j) g[j] = d * std::conj(w_[j]);
        return g;
    }

    cplx profile(cplx u) const {
        const cplx lg = branch_log(u);
        switch (kind_) {
            case Kind::log_kernel: return -lg;
            case Kind::shifted_log: return kLog2 - lg;
            case Kind::normalized_squared_log: {
                const cplx t = kLog2 - lg;
                return c_ * t * t;
            }
        }
        return 0;
    }
    cplx profile_derivative(cplx u) const {
        const cplx inv = branch_inv(u);
        switch (kind_) {
            case Kind::log_kernel: return inv;
            case Kind::shifted_log: return inv;
            case Kind::normalized_squared_log: return 2.0 * c_ * (kLog2 - branch_log(u)) * inv;
        }
        return 0;
    }

private:
    AnalyticKernel(Kind k, CPoint w, double c, double delta) : kind_(k), w_(w), c_(c), delta_(delta) {}

    static CPoint scale_point(const CPoint& xi, double s) {
        CVec v(xi.dim());
        for (int j = 0; j < xi.dim(); ++j) v[j] = s * xi[j];
        return CPoint(v);
    }
    static cplx branch_log(cplx u) {
        const cplx d = 1.0 - u;
        if (std::abs(d) < 1e-300) throw pole_error("AnalyticKernel: singularity at 1 - <z,w> = 0");
        return std::log(d); // principal branch; Re(1-u) > 0 on the domain
    }
    static cplx branch_inv(cplx u) {
        const cplx d = 1.0 - u;
        if (std::abs(d) < 1e-300) throw pole_error("AnalyticKernel: singularity at 1 - <z,w> = 0");
        return 1.0 / d;
    }

    static constexpr double kLog2 = 0.6931471805599453094172321214581766;

    Kind kind_;
    CPoint w_; // effective anchor ((1-delta) xi already folded in)
    double c_;
    double delta_;

public:
    double delta() const { return delta_; }
};

} // namespace qpball
