#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace svclust {

/// Deterministic random source.
///
/// Wraps std::mt19937_64 but derives doubles and bounded integers with fixed
/// arithmetic instead of the standard distributions, whose output is
/// implementation-defined. Identical seeds therefore produce identical
/// streams on every platform, which the reproducibility contract requires.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform double in [0, 1).
    double u01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

    /// Uniform integer in [0, n). n must be > 0.
    std::uint64_t below(std::uint64_t n) { return eng_() % n; }

    /// Standard normal deviate (Box-Muller, deterministic).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = u01();
        double u2 = u01();
        while (u1 <= 1e-300) u1 = u01();
        const double two_pi = 6.283185307179586476925286766559;
        double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(two_pi * u2);
        have_spare_ = true;
        return r * std::cos(two_pi * u2);
    }

    std::uint64_t raw() { return eng_(); }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace svclust
