#pragma once

#include "hopflax/types.hpp"

#include <cmath>
#include <cstdint>
#include <random>

namespace hopflax {

/// Deterministic sampler on top of std::mt19937_64. The raw engine output is
/// fully specified by the standard; the uniform/normal transforms below are
/// hand-rolled so that a seed reproduces the same stream on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal via Box-Muller.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - uniform01();  // (0, 1]
        double u2 = uniform01();
        double radius = std::sqrt(-2.0 * std::log(u1));
        double angle = 2.0 * M_PI * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    /// Uniform draw from center + [-halfwidth, halfwidth]^d.
    Vector uniform_box(const Vector& center, double halfwidth) {
        Vector out(center.size());
        for (Eigen::Index i = 0; i < center.size(); ++i)
            out[i] = center[i] + uniform(-halfwidth, halfwidth);
        return out;
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Stateless seed mixer for deriving independent sub-streams.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace hopflax
