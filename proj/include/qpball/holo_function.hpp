#pragma once

#include <limits>
#include <memory>
#include <variant>

#include "qpball/analytic_kernel.hpp"
#include "qpball/core.hpp"
#include "qpball/mobius.hpp"
#include "qpball/power_series.hpp"
#include "qpball/quadrature.hpp"
#include "qpball/rng.hpp"

namespace qpball {

class HoloFunction;

enum class StieltjesKind { tg, lg };

namespace detail {

struct SumNode;
struct ProductNode;
struct ScaledNode;
struct StieltjesNode;

using HoloNode = std::variant<PowerSeriesFunction, AnalyticKernel, SumNode, ProductNode, ScaledNode, StieltjesNode>;

struct SumNode {
    std::shared_ptr<const HoloNode> lhs, rhs;
};
struct ProductNode {
    std::shared_ptr<const HoloNode> lhs, rhs;
};
struct ScaledNode {
    cplx factor;
    std::shared_ptr<const HoloNode> inner;
};
/// Quadrature-backed T_g f or L_g f for non-polynomial operands.  Evaluation
/// integrates along the ray; the radial derivative comes from the exact
/// identities R(T_g f) = f Rg and R(L_g f) = g Rf, never from differentiating
/// the integral numerically.
struct StieltjesNode {
    StieltjesKind kind;
    std::shared_ptr<const HoloNode> g, f;
    double rel_tol;
};

} // namespace detail

/// Immutable holomorphic function on B: a polynomial, a closed-form kernel,
/// or a sum/product/scalar-multiple/Riemann-Stieltjes composition thereof.
/// Every variant evaluates exactly and differentiates exactly (radially).
class HoloFunction {
public:
    static constexpr int kMaxDepth = 8;

    HoloFunction(PowerSeriesFunction p) // NOLINT: implicit by design
        : node_(std::make_shared<detail::HoloNode>(std::move(p))) {}
    HoloFunction(AnalyticKernel k) // NOLINT
        : node_(std::make_shared<detail::HoloNode>(std::move(k))) {}

    static HoloFunction sum(const HoloFunction& a, const HoloFunction& b) {
        check_same_dim(a, b, "HoloFunction::sum");
        check_depth(std::max(a.depth(), b.depth()) + 1);
        return HoloFunction(std::make_shared<detail::HoloNode>(detail::SumNode{a.node_, b.node_}));
    }
    static HoloFunction product(const HoloFunction& a, const HoloFunction& b) {
        check_same_dim(a, b, "HoloFunction::product");
        check_depth(std::max(a.depth(), b.depth()) + 1);
        return HoloFunction(std::make_shared<detail::HoloNode>(detail::ProductNode{a.node_, b.node_}));
    }
    static HoloFunction scaled(cplx s, const HoloFunction& f) {
        check_depth(f.depth() + 1);
        return HoloFunction(std::make_shared<detail::HoloNode>(detail::ScaledNode{s, f.node_}));
    }
    static HoloFunction stieltjes(StieltjesKind kind, const HoloFunction& g, const HoloFunction& f,
                                  double rel_tol = 1e-9) {
        check_same_dim(g, f, "HoloFunction::stieltjes");
        check_depth(std::max(g.depth(), f.depth()) + 1);
        return HoloFunction(std::make_shared<detail::HoloNode>(detail::StieltjesNode{kind, g.node_, f.node_, rel_tol}));
    }

    int dim() const { return dim_of(*node_); }
    int depth() const { return depth_of(*node_); }

    bool is_polynomial() const { return std::holds_alternative<PowerSeriesFunction>(*node_); }
    const PowerSeriesFunction& as_polynomial() const { return std::get<PowerSeriesFunction>(*node_); }

    cplx eval(const CPoint& z) const { return eval_node(*node_, z); }

    /// R f(z) = <grad f(z), conj z> = sum_j z_j df/dz_j, exact per variant.
    cplx radial_derivative(const CPoint& z) const { return radial_node(*node_, z); }

    /// Exact holomorphic gradient; unsupported on Stieltjes transforms
    /// (their norm estimators only ever need the radial derivative).
    CVec gradient(const CPoint& z) const { return gradient_node(*node_, z); }

private:
    explicit HoloFunction(std::shared_ptr<const detail::HoloNode> n) : node_(std::move(n)) {}

    static void check_same_dim(const HoloFunction& a, const HoloFunction& b, const char* who) {
        if (a.dim() != b.dim()) throw std::invalid_argument(std::string(who) + ": dimension mismatch");
    }
    static void check_depth(int d) {
        if (d > kMaxDepth)
            throw std::invalid_argument("HoloFunction: composition depth cap (" + std::to_string(kMaxDepth) +
                                        ") exceeded");
    }

    static int dim_of(const detail::HoloNode& n) {
        return std::visit(
            [](const auto& v) -> int {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, PowerSeriesFunction> || std::is_same_v<T, AnalyticKernel>)
                    return v.dim();
                else if constexpr (std::is_same_v<T, detail::ScaledNode>)
                    return dim_of(*v.inner);
                else if constexpr (std::is_same_v<T, detail::StieltjesNode>)
                    return dim_of(*v.g);
                else
                    return dim_of(*v.lhs);
            },
            n);
    }
    static int depth_of(const detail::HoloNode& n) {
        return std::visit(
            [](const auto& v) -> int {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, PowerSeriesFunction> || std::is_same_v<T, AnalyticKernel>)
                    return 1;
                else if constexpr (std::is_same_v<T, detail::ScaledNode>)
                    return depth_of(*v.inner) + 1;
                else if constexpr (std::is_same_v<T, detail::StieltjesNode>)
                    return std::max(depth_of(*v.g), depth_of(*v.f)) + 1;
                else
                    return std::max(depth_of(*v.lhs), depth_of(*v.rhs)) + 1;
            },
            n);
    }

    static cplx eval_node(const detail::HoloNode& n, const CPoint& z) {
        return std::visit(
            [&](const auto& v) -> cplx {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, PowerSeriesFunction> || std::is_same_v<T, AnalyticKernel>)
                    return v.eval(z);
                else if constexpr (std::is_same_v<T, detail::SumNode>)
                    return eval_node(*v.lhs, z) + eval_node(*v.rhs, z);
                else if constexpr (std::is_same_v<T, detail::ProductNode>)
                    return eval_node(*v.lhs, z) * eval_node(*v.rhs, z);
                else if constexpr (std::is_same_v<T, detail::ScaledNode>)
                    return v.factor * eval_node(*v.inner, z);
                else
                    return eval_stieltjes(v, z);
            },
            n);
    }

    static cplx eval_stieltjes(const detail::StieltjesNode& s, const CPoint& z) {
        if (z.abs() == 0.0) return 0.0; // T_g f(0) = L_g f(0) = 0
        auto along_ray = [&](double t) -> cplx {
            CVec v(z.dim());
            for (int j = 0; j < z.dim(); ++j) v[j] = t * z.v[j];
            const CPoint tz(v);
            if (s.kind == StieltjesKind::tg)
                return eval_node(*s.f, tz) * radial_node(*s.g, tz) / t;
            return eval_node(*s.g, tz) * radial_node(*s.f, tz) / t;
        };
        auto q = integrate_gk(along_ray, 0.0, 1.0, s.rel_tol, 1e-14);
        return q.value;
    }

    static cplx radial_node(const detail::HoloNode& n, const CPoint& z) {
        return std::visit(
            [&](const auto& v) -> cplx {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, PowerSeriesFunction>)
                    return v.radial().eval(z);
                else if constexpr (std::is_same_v<T, AnalyticKernel>)
                    return v.radial_derivative(z);
                else if constexpr (std::is_same_v<T, detail::SumNode>)
                    return radial_node(*v.lhs, z) + radial_node(*v.rhs, z);
                else if constexpr (std::is_same_v<T, detail::ProductNode>)
                    return radial_node(*v.lhs, z) * eval_node(*v.rhs, z) +
                           eval_node(*v.lhs, z) * radial_node(*v.rhs, z);
                else if constexpr (std::is_same_v<T, detail::ScaledNode>)
                    return v.factor * radial_node(*v.inner, z);
                else {
                    // R(T_g f) = f Rg,   R(L_g f) = g Rf
                    if (v.kind == StieltjesKind::tg) return eval_node(*v.f, z) * radial_node(*v.g, z);
                    return eval_node(*v.g, z) * radial_node(*v.f, z);
                }
            },
            n);
    }

    static CVec gradient_node(const detail::HoloNode& n, const CPoint& z) {
        return std::visit(
            [&](const auto& v) -> CVec {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, PowerSeriesFunction> || std::is_same_v<T, AnalyticKernel>)
                    return v.gradient(z);
                else if constexpr (std::is_same_v<T, detail::SumNode>)
                    return gradient_node(*v.lhs, z) + gradient_node(*v.rhs, z);
                else if constexpr (std::is_same_v<T, detail::ProductNode>) {
                    CVec gl = gradient_node(*v.lhs, z);
                    CVec gr = gradient_node(*v.rhs, z);
                    const cplx fl = eval_node(*v.lhs, z), fr = eval_node(*v.rhs, z);
                    return fr * gl + fl * gr;
                } else if constexpr (std::is_same_v<T, detail::ScaledNode>) {
                    return v.factor * gradient_node(*v.inner, z);
                } else {
                    throw std::logic_error("HoloFunction::gradient: not available on Stieltjes transforms");
                }
            },
            n);
    }

    std::shared_ptr<const detail::HoloNode> node_;
};

/// Invariant gradient grad(f o phi_z)(0) = Dphi_z(0)^T grad f(z) (holomorphic
/// chain rule with the exact Jacobian of the Mobius map at the origin).
inline CVec invariant_gradient(const HoloFunction& f, const CPoint& z) {
    require_interior(z, "invariant_gradient");
    const MobiusJacobian0 J = mobius_jacobian0(z);
    return J.apply_transpose(f.gradient(z));
}

/// Finite-difference reference for the invariant gradient (validation only):
/// central differences of f o phi_z along the real axes at 0.
inline CVec invariant_gradient_fd(const HoloFunction& f, const CPoint& z, double eps = 1e-5) {
    require_interior(z, "invariant_gradient_fd");
    const int n = z.dim();
    CVec g(n);
    for (int j = 0; j < n; ++j) {
        CVec hp(n), hm(n);
        hp[j] = eps;
        hm[j] = -eps;
        const cplx fp = f.eval(mobius(z, CPoint(hp)));
        const cplx fm = f.eval(mobius(z, CPoint(hm)));
        g[j] = (fp - fm) / (2.0 * eps);
    }
    return g;
}

/// Sampled lower bound for sup_B |f|: the maximum of |f| over a deterministic
/// boundary-biased stream (one stratum lies on S itself).  Monotone
/// non-decreasing in `samples` by construction.  Values above `cap` report
/// +infinity - the symbol is treated as effectively unbounded.
inline double hinf_norm_estimate(const HoloFunction& f, long samples, double cap = 1e6,
                                 uint64_t seed = 0x48494e46ULL) {
    const int n = f.dim();
    Rng rng(seed, 5);
    double best = 0.0;
    for (long i = 0; i < samples; ++i) {
        double r;
        switch (i % 4) {
            case 0: r = 1.0; break;
            case 1: r = 0.99 + 0.01 * rng.uniform(); break;
            case 2: r = 0.9 + 0.1 * rng.uniform(); break;
            default: r = rng.radius_dv(n); break;
        }
        CVec dir = rng.sphere_direction(n);
        CVec v(n);
        for (int j = 0; j < n; ++j) v[j] = r * dir[j];
        double val;
        try {
            val = std::abs(f.eval(CPoint(v)));
        } catch (const pole_error&) {
            return std::numeric_limits<double>::infinity();
        }
        if (val > cap) return std::numeric_limits<double>::infinity();
        best = std::max(best, val);
    }
    return best;
}

/// Two-point invariant growth bound for bounded f:
///   |f(z1) - f(z2)| <= 2 ||f||_Hinf |phi_{z1}(z2)|.
inline bool schwarz_pick_check(const HoloFunction& f, const CPoint& z1, const CPoint& z2, double hinf) {
    const double lhs = std::abs(f.eval(z1) - f.eval(z2));
    const double rhs = 2.0 * hinf * pseudo_hyperbolic_dist(z1, z2);
    return lhs <= rhs + 1e-12;
}

} // namespace qpball
