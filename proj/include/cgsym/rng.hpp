#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace cgsym {

/// Deterministic, portable random source: mt19937_64 with uniforms taken
/// from the top 53 bits, so the exact stream is reproducible everywhere.
/// Normals use Box-Muller (cosine branch) on two consecutive uniforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform on [0, 1).
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    /// Uniform magnitude in [lo, hi], then a fair sign. Magnitude is drawn
    /// first, sign second.
    double signed_band(double lo, double hi) {
        double mag = uniform(lo, hi);
        return unit() < 0.5 ? -mag : mag;
    }

    double normal() {
        double u1 = 1.0 - unit();  // (0, 1]
        double u2 = unit();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    /// Uniform-ish index in [0, n).
    int below(int n) { return static_cast<int>(eng_() % static_cast<std::uint64_t>(n)); }

private:
    std::mt19937_64 eng_;
};

}  // namespace cgsym
