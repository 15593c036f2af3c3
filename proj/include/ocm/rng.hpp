#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ocm {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seeded generator with the handful of primitives the samplers need.
/// All draws are built from raw 64-bit words of std::mt19937_64 with
/// explicit formulas, so identical seeds give bitwise identical streams
/// on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Independent stream for replicate `index` of a run seeded with
    /// `master`. Streams are derived by hashing, never by splitting the
    /// master stream, so replicate r is the same regardless of how many
    /// replicates run or in which order.
    static Rng for_replicate(std::uint64_t master, std::uint64_t index) {
        return Rng(splitmix64(master ^ splitmix64(index + 0x51AB61C2D0F5B241ULL)));
    }

    /// Uniform on the open interval (0, 1).
    double uniform() {
        return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller (cosine branch only; one normal
    /// consumes two uniforms).
    double normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    /// Exponential(1).
    double exponential() { return -std::log(uniform()); }

    /// Gamma(3, 1) as a sum of three exponentials.
    double gamma3() { return -std::log(uniform() * uniform() * uniform()); }

private:
    std::mt19937_64 gen_;
};

}  // namespace ocm
