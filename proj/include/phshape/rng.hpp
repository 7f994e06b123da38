#pragma once

#include <cstdint>
#include <cmath>

#include "phshape/geom.hpp"

namespace phshape {

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// xoshiro256** seeded via splitmix64. Self-contained so that streams are
// reproducible across compilers and standard libraries (std:: distributions
// are implementation-defined).
class Rng {
public:
    explicit Rng(uint64_t seed = 0) {
        uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n).
    uint64_t next_below(uint64_t n) {
        // Lemire-style rejection to avoid modulo bias.
        uint64_t x = next_u64();
        __uint128_t m = (__uint128_t)x * (__uint128_t)n;
        uint64_t l = (uint64_t)m;
        if (l < n) {
            uint64_t t = (0 - n) % n;
            while (l < t) {
                x = next_u64();
                m = (__uint128_t)x * (__uint128_t)n;
                l = (uint64_t)m;
            }
        }
        return (uint64_t)(m >> 64);
    }

    // Marsaglia polar method; deterministic given the stream.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * next_double() - 1.0;
            v = 2.0 * next_double() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    // Isotropic unit vector via normalized Gaussians (dim 2 or 3).
    Vec3 next_unit_vector(int dim) {
        while (true) {
            Vec3 g{next_gaussian(), next_gaussian(), dim == 3 ? next_gaussian() : 0.0};
            const double n = g.norm();
            if (n > 1e-12) return g / n;
        }
    }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t s_[4] = {1, 2, 3, 4};
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Stable derivation of per-sample / per-purpose seeds from a master seed.
inline uint64_t derive_seed(uint64_t master, uint64_t stream) {
    uint64_t st = master ^ (0xD1B54A32D192ED03ULL * (stream + 1));
    return splitmix64(st);
}

} // namespace phshape
