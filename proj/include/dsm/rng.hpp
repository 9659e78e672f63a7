#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace dsm {

/// Deterministic, platform-independent PRNG (splitmix64). The standard
/// distributions are implementation-defined, so uniform/normal draws are
/// hand-rolled here to keep seeded runs byte-reproducible everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal via Box-Muller (two uniforms per draw, no cache).
    double normal() {
        const double u1 = 1.0 - uniform01(); // (0, 1]
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    std::vector<double> gaussian_vector(std::size_t n) {
        std::vector<double> v(n);
        for (auto& x : v) x = normal();
        return v;
    }

    /// Uniform direction on the unit sphere.
    std::vector<double> unit_vector(std::size_t n) {
        for (;;) {
            std::vector<double> v = gaussian_vector(n);
            double s = 0.0;
            for (double x : v) s += x * x;
            if (s > 1e-30) {
                const double inv = 1.0 / std::sqrt(s);
                for (auto& x : v) x *= inv;
                return v;
            }
        }
    }

    /// Uniform sample from the ball B(center, radius).
    std::vector<double> in_ball(const std::vector<double>& center, double radius) {
        const std::size_t n = center.size();
        std::vector<double> d = unit_vector(n);
        const double r = radius * std::pow(uniform01(), 1.0 / static_cast<double>(n));
        for (std::size_t i = 0; i < n; ++i) d[i] = center[i] + r * d[i];
        return d;
    }

    /// Derive an independent stream for sub-task `index` (parallel sweeps).
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
        Rng r(seed ^ (0x632be59bd9b4e019ull * (index + 1)));
        return r.next_u64();
    }

private:
    std::uint64_t state_;
};

} // namespace dsm
