#pragma once

#include <cmath>
#include <cstdint>

namespace twoproj {

/**
 * splitmix64 (Steele, Lea, Flood 2014), the fixed pseudo-random core for
 * every randomized construction in this library. The integer stream is a
 * pure function of the seed and identical on every platform; seeds printed
 * in reports therefore replay exactly.
 */
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1), 53 significant bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound]; bound+1 need not divide 2^64 but the
    /// modulo bias is irrelevant at fuzzing scale.
    std::uint64_t next_below(std::uint64_t bound_inclusive) {
        return next_u64() % (bound_inclusive + 1);
    }

    /// i-th element of the stream started at `seed`, without stepping a
    /// local object; used to derive independent per-trial seeds.
    static std::uint64_t element(std::uint64_t seed, std::uint64_t i) {
        std::uint64_t z = seed + (i + 1) * 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

/**
 * Standard-normal variates: Box-Muller over splitmix64.
 *
 * u1 is drawn in (0, 1] so the log is finite. The transform
 * z0 = sqrt(-2 ln u1) cos(2 pi u2), z1 = ... sin(...) is generated in pairs
 * and the second component cached. Reproducibility is exact up to the
 * platform's libm rounding of log/cos/sin (bit-identical within one
 * platform, which is what seeded replay requires).
 */
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = static_cast<double>((rng_.next_u64() >> 11) + 1) * 0x1.0p-53;
        const double u2 = rng_.next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * 3.141592653589793238462643383279502884 * u2;
        spare_ = r * std::sin(angle);
        have_spare_ = true;
        return r * std::cos(angle);
    }

private:
    SplitMix64 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace twoproj
