#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>

#include "qpball/core.hpp"

namespace qpball {

/// Exponent multi-index alpha of a monomial z^alpha in C^n.
struct MultiIndex {
    std::array<uint16_t, kMaxDim> a{};
    int n = 0;

    int total() const {
        int t = 0;
        for (int i = 0; i < n; ++i) t += a[static_cast<size_t>(i)];
        return t;
    }
    bool operator<(const MultiIndex& o) const {
        if (n != o.n) return n < o.n;
        return a < o.a;
    }
    bool operator==(const MultiIndex& o) const { return n == o.n && a == o.a; }
};

/// Holomorphic polynomial as a finite multi-index coefficient table.
///
/// Coefficients are stored as numerator / common integer denominator.  The
/// ray primitive (the Riemann-Stieltjes building block) divides term alpha by
/// |alpha|; keeping that divisor in an exact integer denominator makes the
/// operator identities hold at the coefficient level with residual exactly 0,
/// which a plain divide-then-multiply round-trip in binary floating point
/// does not ((c/3)*3 != c for some c).
class PowerSeriesFunction {
public:
    explicit PowerSeriesFunction(int n) : n_(n) {
        if (n < 1 || n > kMaxDim)
            throw std::domain_error("PowerSeriesFunction: n must be in [1, " + std::to_string(kMaxDim) + "]");
    }

    static PowerSeriesFunction constant(int n, cplx c) {
        PowerSeriesFunction p(n);
        p.set(MultiIndex{{}, n}, c);
        return p;
    }
    static PowerSeriesFunction coordinate(int n, int j) {
        PowerSeriesFunction p(n);
        MultiIndex mi{{}, n};
        mi.a[static_cast<size_t>(j)] = 1;
        p.set(mi, 1.0);
        return p;
    }

    int dim() const { return n_; }
    size_t term_count() const { return terms_.size(); }
    int max_degree() const {
        int d = 0;
        for (const auto& [mi, c] : terms_) d = std::max(d, mi.total());
        return d;
    }
    double denominator() const { return den_; }
    const std::map<MultiIndex, cplx>& terms() const { return terms_; }

    /// Sets the coefficient *value* (numerator becomes value * denominator).
    void set(const MultiIndex& mi, cplx value) {
        if (mi.n != n_) throw std::invalid_argument("PowerSeriesFunction::set: index dimension mismatch");
        if (value == cplx(0)) {
            terms_.erase(mi);
            return;
        }
        terms_[mi] = value * den_;
    }
    cplx coeff(const MultiIndex& mi) const {
        auto it = terms_.find(mi);
        return it == terms_.end() ? cplx(0) : it->second / den_;
    }

    cplx eval(const CPoint& z) const { return eval(z.v); }
    cplx eval(const CVec& z) const {
        cplx s = 0;
        for (const auto& [mi, c] : terms_) {
            cplx t = c;
            for (int j = 0; j < n_; ++j)
                for (int k = 0; k < mi.a[static_cast<size_t>(j)]; ++k) t *= z[j];
            s += t;
        }
        return s / den_;
    }

    PowerSeriesFunction& operator+=(const PowerSeriesFunction& o) { return axpy(o, 1.0); }
    PowerSeriesFunction& operator-=(const PowerSeriesFunction& o) { return axpy(o, -1.0); }
    friend PowerSeriesFunction operator+(PowerSeriesFunction a, const PowerSeriesFunction& b) { return a += b; }
    friend PowerSeriesFunction operator-(PowerSeriesFunction a, const PowerSeriesFunction& b) { return a -= b; }

    PowerSeriesFunction& scale(cplx s) {
        for (auto& [mi, c] : terms_) c *= s;
        prune();
        return *this;
    }
    friend PowerSeriesFunction operator*(cplx s, PowerSeriesFunction p) { return p.scale(s); }

    friend PowerSeriesFunction operator*(const PowerSeriesFunction& a, const PowerSeriesFunction& b) {
        a.check_dim(b);
        PowerSeriesFunction r(a.n_);
        r.den_ = reduce_den(a.den_ * b.den_);
        const double fix = r.den_ / (a.den_ * b.den_);
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                MultiIndex mi{{}, a.n_};
                for (int j = 0; j < a.n_; ++j)
                    mi.a[static_cast<size_t>(j)] =
                        static_cast<uint16_t>(ma.a[static_cast<size_t>(j)] + mb.a[static_cast<size_t>(j)]);
                r.insert_num(mi, ca * cb * fix);
            }
        }
        return r;
    }

    /// Radial derivative R(z^alpha) = |alpha| z^alpha: numerators scale by the
    /// integer |alpha|, exactly.
    PowerSeriesFunction radial() const {
        PowerSeriesFunction r(n_);
        r.den_ = den_;
        for (const auto& [mi, c] : terms_) {
            const int k = mi.total();
            if (k > 0) r.insert_num(mi, c * static_cast<double>(k));
        }
        return r;
    }

    /// d/dz_j.
    PowerSeriesFunction partial(int j) const {
        PowerSeriesFunction r(n_);
        r.den_ = den_;
        for (const auto& [mi, c] : terms_) {
            const int aj = mi.a[static_cast<size_t>(j)];
            if (aj == 0) continue;
            MultiIndex m2 = mi;
            m2.a[static_cast<size_t>(j)] = static_cast<uint16_t>(aj - 1);
            r.insert_num(m2, c * static_cast<double>(aj));
        }
        return r;
    }

    CVec gradient(const CPoint& z) const {
        CVec g(n_);
        for (int j = 0; j < n_; ++j) g[j] = partial(j).eval(z);
        return g;
    }

    /// int_0^1 h(tz) dt/t = sum_{alpha != 0} c_alpha z^alpha / |alpha|,
    /// carried out with an exact common integer denominator.
    PowerSeriesFunction ray_primitive() const {
        MultiIndex zero{{}, n_};
        if (terms_.count(zero))
            throw std::invalid_argument("ray_primitive: requires h(0) = 0, the ray integral diverges otherwise");
        double L = 1.0;
        for (const auto& [mi, c] : terms_) L = lcm_den(L, static_cast<double>(mi.total()));
        PowerSeriesFunction r(n_);
        r.den_ = reduce_den(den_ * L);
        const double fix = r.den_ / den_;
        for (const auto& [mi, c] : terms_) r.insert_num(mi, c * (fix / static_cast<double>(mi.total())));
        return r;
    }

    /// max over alpha of the exact cross-multiplied coefficient residual
    /// |a_alpha * den_b - b_alpha * den_a| / (den_a * den_b); identically 0
    /// when the two series agree as rationals.
    friend double max_coeff_residual(const PowerSeriesFunction& a, const PowerSeriesFunction& b) {
        a.check_dim(b);
        double worst = 0.0;
        auto scan = [&](const std::map<MultiIndex, cplx>& terms) {
            for (const auto& [mi, unused] : terms) {
                auto ia = a.terms_.find(mi);
                auto ib = b.terms_.find(mi);
                const cplx na = ia == a.terms_.end() ? cplx(0) : ia->second;
                const cplx nb = ib == b.terms_.end() ? cplx(0) : ib->second;
                worst = std::max(worst, std::abs(na * b.den_ - nb * a.den_) / (a.den_ * b.den_));
            }
        };
        scan(a.terms_);
        scan(b.terms_);
        return worst;
    }

private:
    void check_dim(const PowerSeriesFunction& o) const {
        if (o.n_ != n_) throw std::invalid_argument("PowerSeriesFunction: dimension mismatch");
    }
    PowerSeriesFunction& axpy(const PowerSeriesFunction& o, double sign) {
        check_dim(o);
        double L = lcm_den(den_, o.den_);
        if (L >= 9.0e15) { // give up on exactness rather than overflow
            rescale_values(1.0);
            for (const auto& [mi, c] : o.terms_) insert_num(mi, sign * c / o.den_);
            return *this;
        }
        rescale(L);
        const double f = L / o.den_;
        for (const auto& [mi, c] : o.terms_) insert_num(mi, sign * c * f);
        return *this;
    }
    void rescale_values(double new_den) {
        for (auto& [mi, c] : terms_) c = c / den_ * new_den;
        den_ = new_den;
    }
    void insert_num(const MultiIndex& mi, cplx num) {
        if (num == cplx(0)) return;
        auto [it, fresh] = terms_.emplace(mi, num);
        if (!fresh) {
            it->second += num;
            if (it->second == cplx(0)) terms_.erase(it);
        }
    }
    void prune() {
        for (auto it = terms_.begin(); it != terms_.end();)
            it = (it->second == cplx(0)) ? terms_.erase(it) : std::next(it);
    }
    void rescale(double new_den) {
        if (new_den == den_) return;
        const double f = new_den / den_;
        for (auto& [mi, c] : terms_) c *= f;
        den_ = new_den;
    }
    static double lcm_den(double a, double b) {
        const long long la = static_cast<long long>(a), lb = static_cast<long long>(b);
        return static_cast<double>(la / std::gcd(la, lb) * lb);
    }
    /// Denominators stay exact integers below 2^53; beyond that fall back to 1
    /// (plain floating coefficients) rather than overflow.
    static double reduce_den(double d) { return d < 9.0e15 ? d : 1.0; }

    int n_;
    std::map<MultiIndex, cplx> terms_;
    double den_ = 1.0; // positive integer
};

} // namespace qpball
