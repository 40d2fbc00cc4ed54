#pragma once

#include <cmath>
#include <cstdint>

namespace stctopo {

/// Splittable 64-bit generator (splitmix64). Every draw in the library
/// goes through this class so results are identical across platforms
/// and independent of the C++ standard library's distributions.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal deviate (Box-Muller, one deviate per call).
    double gaussian() {
        const double u1 = 1.0 - uniform01(); // (0, 1]
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

private:
    std::uint64_t state_;
};

/// Per-trial stream seed: trial streams are decorrelated by the
/// splitmix64 mixing, so parallel execution order never matters.
inline std::uint64_t derive_stream(std::uint64_t master, std::uint64_t index) {
    return master ^ index;
}

} // namespace stctopo
