#pragma once

#include <cstdint>
#include <cmath>

#include "qpball/core.hpp"

namespace qpball {

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic substream derivation: the same (seed, stream) pair always
/// yields the same generator state, independent of call order or threading.
inline uint64_t derive_seed(uint64_t seed, uint64_t stream) {
    uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
    splitmix64(s);
    return splitmix64(s);
}

/// xoshiro256++ with fully specified double/Gaussian generation, so that
/// sequences are identical across platforms and standard-library versions.
class Rng {
public:
    explicit Rng(uint64_t seed, uint64_t stream = 0) {
        uint64_t sm = derive_seed(seed, stream);
        for (auto& w : s_) w = splitmix64(sm);
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Standard normal (Box-Muller, spare cached).
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double th = 2.0 * M_PI * u2;
        spare_ = r * std::sin(th);
        has_spare_ = true;
        return r * std::cos(th);
    }

    cplx gaussian_cplx() { return {gaussian(), gaussian()}; }

    /// Uniform point of the unit disc of C (rejection from the square).
    cplx unit_disc() {
        for (;;) {
            const double x = uniform(-1.0, 1.0), y = uniform(-1.0, 1.0);
            if (x * x + y * y < 1.0) return {x, y};
        }
    }

    /// Uniform direction on the unit sphere S of C^n.
    CVec sphere_direction(int n) {
        for (;;) {
            CVec v(n);
            for (int i = 0; i < n; ++i) v[i] = gaussian_cplx();
            const double r = v.norm();
            if (r > 1e-12) {
                for (int i = 0; i < n; ++i) v[i] /= r;
                return v;
            }
        }
    }

    /// Radius with the dv-induced density 2n r^(2n-1) on [0, 1].
    double radius_dv(int n) { return std::pow(uniform(), 1.0 / (2.0 * n)); }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t s_[4]{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace qpball
