#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qpball/carleson_box.hpp"
#include "qpball/core.hpp"
#include "qpball/estimate.hpp"
#include "qpball/rng.hpp"

namespace qpball {

enum class TargetMeasure { dv, dlambda, dsigma, box_dv, pseudoball_dv };

/// A block of i.i.d. draws sharing one proposal scheme.  `draws` counts all
/// proposals including rejected ones (which contribute zero), so that the
/// variance of the weighted sum over the group is estimated correctly.
struct SampleGroup {
    size_t offset = 0;
    size_t count = 0;
    long long draws = 0;
};

/// Weighted point cloud targeting one of the standard measures.  The weights
/// sum to the measure of the sampled region up to Monte-Carlo error, and the
/// whole cloud is a deterministic function of (seed, parameters).
struct SampleCloud {
    std::vector<CPoint> points;
    std::vector<double> weights;
    std::vector<SampleGroup> groups;
    TargetMeasure target = TargetMeasure::dv;
    uint64_t seed = 0;
    int n = 0;

    size_t size() const { return points.size(); }
};

/// Convergence policy for Monte-Carlo reports.
struct EstimatePolicy {
    double rel_stderr_threshold = 0.05;
    double abs_value_floor = 1e-12;
    double max_excluded_fraction = 1e-3;
};

/// Weighted Monte-Carlo integral of fn over the cloud, with a per-group
/// variance estimate and pairwise summation for reproducibility.  Non-finite
/// integrand values are excluded and counted; too many of them, or a stderr
/// above the policy threshold, clears the `converged` flag.
template <typename F>
EstimateReport integrate(F&& fn, const SampleCloud& cloud, const EstimatePolicy& policy = {}) {
    EstimateReport rep;
    std::vector<double> c, c2;
    double var = 0.0;
    for (const auto& g : cloud.groups) {
        c.clear();
        c2.clear();
        c.reserve(g.count);
        c2.reserve(g.count);
        for (size_t i = g.offset; i < g.offset + g.count; ++i) {
            const double f = fn(cloud.points[i]);
            if (!std::isfinite(f)) {
                ++rep.excluded;
                continue;
            }
            const double ci = cloud.weights[i] * f;
            c.push_back(ci);
            c2.push_back(ci * ci);
        }
        const double s = pairwise_sum(c);
        const double q = pairwise_sum(c2);
        const double p = static_cast<double>(g.draws);
        rep.value += s;
        if (g.draws > 1) var += std::max(0.0, (p * q - s * s) / (p - 1.0));
        rep.samples += static_cast<long>(g.count);
    }
    rep.stderr_ = std::sqrt(var);
    const bool small = std::abs(rep.value) <= policy.abs_value_floor;
    const bool tight = rep.stderr_ <= policy.rel_stderr_threshold * std::abs(rep.value);
    const bool clean = rep.excluded <= policy.max_excluded_fraction * static_cast<double>(std::max<long>(rep.samples, 1));
    rep.converged = (small || tight) && clean;
    return rep;
}

/// Quasi-uniform cloud over the ball for dv or dlambda.  Radial sampling is
/// stratified: the boundary shell 1 - r < 0.1 carries twice the sample
/// density (all Q_p integrands concentrate there), with compensating weights.
/// For dlambda the (1-|z|^2)^(-n-1) weight is folded into the point weights;
/// integrands must supply the compensating powers that make the target finite.
inline SampleCloud sample_ball(int n, long count, uint64_t seed, TargetMeasure measure = TargetMeasure::dv) {
    if (n < 2 || n > kMaxDim) throw std::domain_error("sample_ball: n must be in [2, " + std::to_string(kMaxDim) + "]");
    if (count < 1) throw std::domain_error("sample_ball: count must be >= 1");
    if (measure != TargetMeasure::dv && measure != TargetMeasure::dlambda)
        throw std::domain_error("sample_ball: measure must be dv or dlambda");

    const double shell_min = 0.9;
    const double L = std::pow(shell_min, 2.0 * n); // dv mass of r < 0.9
    const double p_b = 1.0 - L;
    const double beta = 2.0 * p_b / (1.0 + p_b); // doubled relative density in the shell
    long n_b = std::lround(beta * static_cast<double>(count));
    n_b = std::min(std::max<long>(n_b, 1), count - 1);
    const long n_in = count - n_b;

    SampleCloud cloud;
    cloud.target = measure;
    cloud.seed = seed;
    cloud.n = n;
    cloud.points.reserve(static_cast<size_t>(count));
    cloud.weights.reserve(static_cast<size_t>(count));

    Rng rng(seed, 1);
    auto emit = [&](double rlo2n, double rhi2n, long k, double mass) {
        const size_t offset = cloud.points.size();
        for (long i = 0; i < k; ++i) {
            const double r = std::pow(rlo2n + rng.uniform() * (rhi2n - rlo2n), 1.0 / (2.0 * n));
            CVec dir = rng.sphere_direction(n);
            CVec v(n);
            for (int j = 0; j < n; ++j) v[j] = r * dir[j];
            CPoint z(v);
            double w = mass / static_cast<double>(k);
            if (measure == TargetMeasure::dlambda) w *= std::pow(1.0 - z.abs_sq(), -(n + 1.0));
            cloud.points.push_back(z);
            cloud.weights.push_back(w);
        }
        cloud.groups.push_back({offset, static_cast<size_t>(k), k});
    };
    emit(0.0, L, n_in, 1.0 - p_b);
    emit(L, 1.0, n_b, p_b);
    return cloud;
}

/// Uniform cloud on the sphere S for dsigma.
inline SampleCloud sample_sphere(int n, long count, uint64_t seed) {
    if (n < 2 || n > kMaxDim) throw std::domain_error("sample_sphere: n must be in [2, " + std::to_string(kMaxDim) + "]");
    if (count < 1) throw std::domain_error("sample_sphere: count must be >= 1");
    SampleCloud cloud;
    cloud.target = TargetMeasure::dsigma;
    cloud.seed = seed;
    cloud.n = n;
    Rng rng(seed, 2);
    for (long i = 0; i < count; ++i) {
        cloud.points.push_back(CPoint(rng.sphere_direction(n)));
        cloud.weights.push_back(1.0 / static_cast<double>(count));
    }
    cloud.groups.push_back({0, static_cast<size_t>(count), count});
    return cloud;
}

/// dv-restricted cloud over a Carleson box.  Q_delta(xi) is a cylinder over
/// the lens {|1-lambda| < delta} of the slice coordinate lambda = <z, xi>:
/// lambda is drawn uniformly from the delta-disc around 1 (rejecting
/// |lambda| >= 1), the slice density (n/pi)(1-|lambda|^2)^(n-1) enters the
/// weight, and the orthogonal part is uniform in its ball of radius
/// sqrt(1-|lambda|^2).  Exact for every delta; no thin-box degeneration.
inline SampleCloud sample_box(const CarlesonBox& box, long count, uint64_t seed) {
    if (count < 1) throw std::domain_error("sample_box: count must be >= 1");
    const int n = box.center.dim();
    const double delta = box.delta;
    detail::SliceFrame frame(box.center);
    Rng rng(seed, 3);

    SampleCloud cloud;
    cloud.target = TargetMeasure::box_dv;
    cloud.seed = seed;
    cloud.n = n;
    cloud.points.reserve(static_cast<size_t>(count));
    cloud.weights.reserve(static_cast<size_t>(count));

    long long draws = 0;
    long accepted = 0;
    const long long max_draws = 64LL * count + (1LL << 16);
    while (accepted < count && draws < max_draws) {
        ++draws;
        const cplx lambda = 1.0 + delta * rng.unit_disc();
        const double l2 = std::norm(lambda);
        if (l2 >= 1.0) continue;
        const double t = std::sqrt(1.0 - l2);
        CVec v(n);
        for (int j = 0; j < n; ++j) v[j] = lambda * frame.basis[0][j];
        if (n > 1) {
            CVec dir = rng.sphere_direction(n - 1);
            const double rr = std::pow(rng.uniform(), 1.0 / (2.0 * (n - 1)));
            for (int k = 1; k < n; ++k)
                for (int j = 0; j < n; ++j) v[j] += t * rr * dir[k - 1] * frame.basis[static_cast<size_t>(k)][j];
        }
        // weight: uniform proposal on the delta-disc has density 1/(pi delta^2),
        // target marginal is (n/pi)(1-|lambda|^2)^(n-1)
        const double w = n * delta * delta * std::pow(1.0 - l2, n - 1.0);
        cloud.points.push_back(CPoint(v));
        cloud.weights.push_back(w);
        ++accepted;
    }
    if (accepted == 0 || static_cast<double>(accepted) / static_cast<double>(draws) < 1e-4)
        throw std::runtime_error("sample_box: resolution failure, acceptance below 1e-4");
    for (auto& w : cloud.weights) w /= static_cast<double>(draws);
    cloud.groups.push_back({0, static_cast<size_t>(accepted), draws});
    return cloud;
}

/// dv-restricted cloud over a pseudo-hyperbolic ball E(a, r) = phi_a(rB),
/// by pushing uniform samples of rB through phi_a with the real Jacobian
/// ((1-|a|^2)/|1-<w,a>|^2)^(n+1).
inline SampleCloud sample_pseudoball(const PseudoHyperbolicBall& ball, long count, uint64_t seed) {
    if (count < 1) throw std::domain_error("sample_pseudoball: count must be >= 1");
    const int n = ball.center.dim();
    const double r = ball.radius;
    const double a2 = ball.center.abs_sq();
    Rng rng(seed, 4);

    SampleCloud cloud;
    cloud.target = TargetMeasure::pseudoball_dv;
    cloud.seed = seed;
    cloud.n = n;
    for (long i = 0; i < count; ++i) {
        const double rad = r * rng.radius_dv(n);
        CVec dir = rng.sphere_direction(n);
        CVec wv(n);
        for (int j = 0; j < n; ++j) wv[j] = rad * dir[j];
        CPoint w(wv);
        const double jac = std::pow((1.0 - a2) / std::norm(1.0 - inner(w, ball.center)), n + 1.0);
        cloud.points.push_back(mobius(ball.center, w));
        cloud.weights.push_back(std::pow(r, 2.0 * n) * jac / static_cast<double>(count));
    }
    cloud.groups.push_back({0, static_cast<size_t>(count), count});
    return cloud;
}

/// v(Q_delta(xi)) by quadrature of the slice marginal over the lens; the
/// deterministic oracle against which the box sampler is checked.
inline double box_volume(int n, double delta) {
    if (n < 2 || n > kMaxDim) throw std::domain_error("box_volume: n must be in [2, " + std::to_string(kMaxDim) + "]");
    if (!(delta > 0.0)) throw std::domain_error("box_volume: delta must be positive");
    const double top = std::min(delta, 2.0);
    auto outer = [n](double rho) {
        const double th0 = std::acos(std::min(1.0, rho / 2.0));
        auto inner_fn = [n, rho](double th) {
            return std::pow(rho * (2.0 * std::cos(th) - rho), n - 1.0);
        };
        auto in = integrate_gk(inner_fn, -th0, th0, 1e-12, 1e-300, 30);
        return rho * in.value;
    };
    auto q = integrate_gk(outer, 0.0, top, 1e-12, 1e-300, 40);
    return static_cast<double>(n) / M_PI * q.value;
}

} // namespace qpball
