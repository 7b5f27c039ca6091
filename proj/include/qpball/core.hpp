#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qpball {

using cplx = std::complex<double>;

// Desk scale: the estimators target n in {2, 3}; 4 is the hard cap.
inline constexpr int kMaxDim = 4;

// Default tolerances: algebraic identities / 1-D quadrature.
inline constexpr double kAlgebraTol = 1e-12;
inline constexpr double kQuadRelTol = 1e-10;

/// Thrown where an integrand or kernel is evaluated at (or too close to)
/// a genuine singularity.  Callers that integrate must handle it.
class pole_error : public std::domain_error {
public:
    explicit pole_error(const std::string& what) : std::domain_error(what) {}
};

/// Fixed-capacity complex vector; the workhorse for gradients and directions.
struct CVec {
    std::array<cplx, kMaxDim> c{};
    int n = 0;

    CVec() = default;
    explicit CVec(int dim) : n(dim) {
        if (dim < 1 || dim > kMaxDim)
            throw std::domain_error("CVec: dimension must be in [1, " + std::to_string(kMaxDim) + "]");
    }
    CVec(std::initializer_list<cplx> xs) {
        if (xs.size() < 1 || xs.size() > kMaxDim)
            throw std::domain_error("CVec: dimension must be in [1, " + std::to_string(kMaxDim) + "]");
        n = static_cast<int>(xs.size());
        int i = 0;
        for (const auto& x : xs) c[i++] = x;
    }

    cplx& operator[](int i) { return c[static_cast<size_t>(i)]; }
    const cplx& operator[](int i) const { return c[static_cast<size_t>(i)]; }

    double norm_sq() const {
        double s = 0;
        for (int i = 0; i < n; ++i) s += std::norm(c[i]);
        return s;
    }
    double norm() const { return std::sqrt(norm_sq()); }

    CVec& operator+=(const CVec& o) {
        for (int i = 0; i < n; ++i) c[i] += o.c[i];
        return *this;
    }
    CVec& operator-=(const CVec& o) {
        for (int i = 0; i < n; ++i) c[i] -= o.c[i];
        return *this;
    }
    CVec& operator*=(cplx s) {
        for (int i = 0; i < n; ++i) c[i] *= s;
        return *this;
    }
    friend CVec operator+(CVec a, const CVec& b) { return a += b; }
    friend CVec operator-(CVec a, const CVec& b) { return a -= b; }
    friend CVec operator*(cplx s, CVec a) { return a *= s; }
    friend CVec operator-(CVec a) {
        for (int i = 0; i < a.n; ++i) a.c[i] = -a.c[i];
        return a;
    }
};

/// Hermitian inner product <z, w> = sum_j z_j * conj(w_j).
inline cplx inner(const CVec& z, const CVec& w) {
    cplx s = 0;
    for (int i = 0; i < z.n; ++i) s += z.c[i] * std::conj(w.c[i]);
    return s;
}

/// A point of the closed unit ball of C^n.  Construction rejects |z| > 1 + 1e-12.
struct CPoint {
    CVec v;

    CPoint() = default;
    explicit CPoint(CVec vec) : v(vec) {
        if (v.norm() > 1.0 + 1e-12)
            throw std::domain_error("CPoint: |z| = " + std::to_string(v.norm()) + " exceeds the closed ball");
    }
    CPoint(std::initializer_list<cplx> xs) : CPoint(CVec(xs)) {}

    static CPoint origin(int n) { return CPoint(CVec(n)); }

    int dim() const { return v.n; }
    cplx operator[](int i) const { return v[i]; }
    double abs() const { return v.norm(); }
    double abs_sq() const { return v.norm_sq(); }

    bool in_open_ball() const { return abs() < 1.0; }
    bool on_sphere(double tol = 1e-12) const { return std::abs(abs() - 1.0) <= tol; }
};

inline cplx inner(const CPoint& z, const CPoint& w) { return inner(z.v, w.v); }
inline cplx inner(const CPoint& z, const CVec& w) { return inner(z.v, w); }

inline void require_interior(const CPoint& z, const char* who) {
    if (!z.in_open_ball()) throw std::domain_error(std::string(who) + ": point must lie in the open ball");
}
inline void require_unit(const CPoint& xi, const char* who) {
    if (!xi.on_sphere()) throw std::domain_error(std::string(who) + ": point must lie on the unit sphere");
}

} // namespace qpball
