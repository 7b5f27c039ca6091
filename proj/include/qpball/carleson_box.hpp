#pragma once

#include <vector>

#include "qpball/core.hpp"
#include "qpball/mobius.hpp"
#include "qpball/quadrature.hpp"
#include "qpball/rng.hpp"

namespace qpball {

/// Non-isotropic gauge |1 - <z, xi>|; z lies in Q_delta(xi) iff the gauge is < delta.
inline double noniso_gauge(const CPoint& z, const CPoint& xi) {
    require_unit(xi, "noniso_gauge");
    return std::abs(1.0 - inner(z, xi));
}

/// Non-isotropic box Q_delta(xi) = { z in B : |1 - <z,xi>| < delta } anchored at
/// a boundary point.  The sphere cap Q'_delta and the collar Q-hat_delta are
/// views of the same (center, delta) pair.
struct CarlesonBox {
    CPoint center; // on S
    double delta;  // in (0, 2]

    CarlesonBox(CPoint xi, double d) : center(xi), delta(d) {
        require_unit(center, "CarlesonBox");
        if (!(d > 0.0) || d > 2.0) throw std::domain_error("CarlesonBox: delta must lie in (0, 2]");
    }

    bool contains(const CPoint& z) const {
        return z.abs() < 1.0 && noniso_gauge(z, center) < delta;
    }
    /// Cap membership for a direction eta on S; a cap with delta >= 2 is all of S.
    bool cap_contains(const CPoint& eta) const {
        return delta >= 2.0 || noniso_gauge(eta, center) < delta;
    }
    /// Collar Q-hat: direction in the cap and 1 - delta < |z| < 1.
    bool collar_contains(const CPoint& z) const {
        const double r = z.abs();
        if (!(r > 1.0 - delta) || r >= 1.0) return false;
        if (r == 0.0) return delta > 1.0;
        CVec dir = z.v;
        for (int i = 0; i < dir.n; ++i) dir[i] /= r;
        return cap_contains(CPoint(dir));
    }
};

/// Pseudo-hyperbolic metric ball E(center, radius) = { w : |phi_center(w)| < radius }.
struct PseudoHyperbolicBall {
    CPoint center; // interior
    double radius; // in (0, 1)

    PseudoHyperbolicBall(CPoint c, double r) : center(c), radius(r) {
        require_interior(center, "PseudoHyperbolicBall");
        if (!(r > 0.0 && r < 1.0)) throw std::domain_error("PseudoHyperbolicBall: radius must lie in (0, 1)");
    }
    bool contains(const CPoint& w) const { return pseudo_hyperbolic_dist(center, w) < radius; }
};

namespace detail {

/// Orthonormal basis of C^n whose first vector is xi; used to move slice
/// coordinates (lambda, sqrt(1-|lambda|^2) omega) onto an arbitrary cap.
struct SliceFrame {
    std::array<CVec, kMaxDim> basis;
    int n;

    explicit SliceFrame(const CPoint& xi) : n(xi.dim()) {
        basis[0] = xi.v;
        int have = 1;
        for (int j = 0; j < n && have < n; ++j) {
            CVec e(n);
            e[j] = 1.0;
            for (int k = 0; k < have; ++k) {
                const cplx proj = inner(e, basis[k]);
                for (int i = 0; i < n; ++i) e[i] -= proj * basis[k][i];
            }
            const double r = e.norm();
            if (r > 1e-8) {
                for (int i = 0; i < n; ++i) e[i] /= r;
                basis[static_cast<size_t>(have++)] = e;
            }
        }
        if (have != n) throw std::runtime_error("SliceFrame: orthogonalization failed");
    }

    /// eta = lambda * xi + sqrt(1-|lambda|^2) * (omega expanded in the tangent frame).
    CPoint assemble(cplx lambda, const CVec& omega) const {
        const double t = std::sqrt(std::max(0.0, 1.0 - std::norm(lambda)));
        CVec v(n);
        for (int i = 0; i < n; ++i) v[i] = lambda * basis[0][i];
        for (int k = 1; k < n; ++k)
            for (int i = 0; i < n; ++i) v[i] += t * omega[k - 1] * basis[static_cast<size_t>(k)][i];
        const double r = v.norm();
        if (r > 0.0)
            for (int i = 0; i < n; ++i) v[i] /= r;
        return CPoint(v);
    }
};

/// One uniform (w.r.t. sigma) direction in the cap Q'_delta(xi), by slice
/// coordinates: lambda uniform in {|1-lambda|<delta} cap D thinned by the
/// slice density (1-|lambda|^2)^(n-2), omega uniform on the (n-1)-sphere.
inline CPoint sample_cap_direction(const SliceFrame& frame, double delta, Rng& rng) {
    const int n = frame.n;
    for (;;) {
        const cplx lambda = 1.0 + delta * rng.unit_disc();
        const double l2 = std::norm(lambda);
        if (l2 >= 1.0) continue;
        if (n > 2) {
            const double dens = std::pow(1.0 - l2, n - 2); // <= 1
            if (rng.uniform() >= dens) continue;
        }
        CVec omega(std::max(1, n - 1));
        if (n > 1) omega = rng.sphere_direction(n - 1);
        return frame.assemble(lambda, omega);
    }
}

} // namespace detail

/// sigma(Q'_delta(xi)), the normalized surface measure of a cap, by nested
/// quadrature in polar slice coordinates around lambda = 1.
inline double cap_sigma(int n, double delta) {
    if (n < 2 || n > kMaxDim) throw std::domain_error("cap_sigma: n must be in [2, " + std::to_string(kMaxDim) + "]");
    if (!(delta > 0.0)) throw std::domain_error("cap_sigma: delta must be positive");
    const double top = std::min(delta, 2.0);
    auto outer = [n](double rho) {
        const double th0 = std::acos(std::min(1.0, rho / 2.0));
        if (n == 2) return rho * 2.0 * th0;
        auto inner_fn = [n, rho](double th) {
            return std::pow(rho * (2.0 * std::cos(th) - rho), n - 2);
        };
        auto in = integrate_gk(inner_fn, -th0, th0, 1e-12, 1e-300, 30);
        return rho * in.value;
    };
    auto q = integrate_gk(outer, 0.0, top, 1e-12, 1e-300, 40);
    return (n - 1.0) / M_PI * q.value;
}

/// Covering of the cap Q'_delta(xi) by caps of radius delta/m: a greedy
/// maximal net of centers inside the cap with pairwise gauge >= delta/(2m).
/// Deterministic for a fixed seed.  Coverage is a sampled property, not a
/// certificate; the count obeys an empirical N <= C * m^n scaling.
inline std::vector<CarlesonBox> cover_box(const CPoint& xi, double delta, int m,
                                          uint64_t seed = 0x51d0c0443ULL) {
    require_unit(xi, "cover_box");
    if (!(delta > 0.0) || delta > 2.0) throw std::domain_error("cover_box: delta must lie in (0, 2]");
    if (m < 1) throw std::domain_error("cover_box: m must be >= 1");
    if (m == 1) return {CarlesonBox(xi, delta)};

    const int n = xi.dim();
    const double sep = delta / (2.0 * m);
    detail::SliceFrame frame(xi);
    Rng rng(seed, 17);

    long long want = 1500;
    for (int i = 0; i < n; ++i) want *= m;
    const long long n_candidates = std::min<long long>(std::max<long long>(8192, want), 200000);

    std::vector<CarlesonBox> net;
    net.emplace_back(xi, delta / m);
    for (long long k = 0; k < n_candidates; ++k) {
        const CPoint eta = detail::sample_cap_direction(frame, delta, rng);
        bool separated = true;
        for (const auto& b : net) {
            if (noniso_gauge(eta, b.center) < sep) {
                separated = false;
                break;
            }
        }
        if (separated) net.emplace_back(eta, delta / m);
    }
    return net;
}

} // namespace qpball
