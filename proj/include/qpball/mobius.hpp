#pragma once

#include "qpball/core.hpp"

namespace qpball {

// Mobius automorphism phi_a of the unit ball, projection form
//   phi_a(z) = (a - P_a z - s_a Q_a z) / (1 - <z,a>),   s_a = sqrt(1 - |a|^2),
// with P_a the orthogonal projection onto C*a and Q_a = I - P_a.
// Defining contract: phi_a(0) = a, phi_a(a) = 0, phi_a an involution, and
//   1 - |phi_a(z)|^2 = (1 - |a|^2)(1 - |z|^2) / |1 - <z,a>|^2.
inline CPoint mobius(const CPoint& a, const CPoint& z) {
    if (a.abs() >= 1.0) throw std::domain_error("mobius: |a| must be < 1");
    const int n = a.dim();
    const double a2 = a.abs_sq();
    const double s = std::sqrt(1.0 - a2);
    const cplx za = inner(z, a);
    const cplx denom = 1.0 - za;
    CVec out(n);
    if (a2 == 0.0) {
        for (int j = 0; j < n; ++j) out[j] = -z.v[j];
        return CPoint(out);
    }
    const cplx proj = za / a2; // P_a z = proj * a
    for (int j = 0; j < n; ++j) {
        const cplx pz = proj * a.v[j];
        const cplx qz = z.v[j] - pz;
        out[j] = (a.v[j] - pz - s * qz) / denom;
    }
    // Rounding can push |out| a hair past 1 for boundary z; renormalize inside the tolerance.
    const double r = out.norm();
    if (r > 1.0 && r <= 1.0 + 1e-12) {
        for (int j = 0; j < n; ++j) out[j] /= r;
    }
    return CPoint(out);
}

/// Complex Jacobian matrix of phi_a at the origin, D phi_a(0) = -(s^2 P_a + s Q_a).
/// Row-major n x n; apply_transpose gives the chain-rule factor for the invariant gradient.
struct MobiusJacobian0 {
    std::array<cplx, kMaxDim * kMaxDim> m{};
    int n = 0;

    cplx at(int row, int col) const { return m[static_cast<size_t>(row * n + col)]; }

    CVec apply(const CVec& v) const {
        CVec r(n);
        for (int i = 0; i < n; ++i) {
            cplx s = 0;
            for (int j = 0; j < n; ++j) s += at(i, j) * v[j];
            r[i] = s;
        }
        return r;
    }
    /// Plain (not conjugate) transpose, as required by the holomorphic chain rule.
    CVec apply_transpose(const CVec& v) const {
        CVec r(n);
        for (int j = 0; j < n; ++j) {
            cplx s = 0;
            for (int i = 0; i < n; ++i) s += at(i, j) * v[i];
            r[j] = s;
        }
        return r;
    }
};

inline MobiusJacobian0 mobius_jacobian0(const CPoint& a) {
    if (a.abs() >= 1.0) throw std::domain_error("mobius_jacobian0: |a| must be < 1");
    const int n = a.dim();
    MobiusJacobian0 J;
    J.n = n;
    const double a2 = a.abs_sq();
    const double s = std::sqrt(1.0 - a2);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            // P_a[i][j] = a_i conj(a_j) / |a|^2 (zero map when a = 0)
            const cplx p = (a2 == 0.0) ? cplx(0) : a.v[i] * std::conj(a.v[j]) / a2;
            const cplx q = (i == j ? cplx(1) : cplx(0)) - p;
            J.m[static_cast<size_t>(i * n + j)] = -(s * s * p + s * q);
        }
    }
    return J;
}

/// |phi_z(w)|, the pseudo-hyperbolic distance; symmetric in its arguments.
inline double pseudo_hyperbolic_dist(const CPoint& z, const CPoint& w) {
    if (!z.in_open_ball() || !w.in_open_ball())
        throw std::domain_error("pseudo_hyperbolic_dist: both points must lie in the open ball");
    return mobius(z, w).abs();
}

/// 1 - |phi_a(z)|^2 evaluated through the closed-form identity (no Mobius map applied).
inline double one_minus_mobius_abs_sq(const CPoint& a, const CPoint& z) {
    const cplx za = inner(z, a);
    return (1.0 - a.abs_sq()) * (1.0 - z.abs_sq()) / std::norm(1.0 - za);
}

} // namespace qpball
