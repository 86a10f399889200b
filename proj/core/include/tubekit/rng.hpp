#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace tubekit {

/// Deterministic 64-bit generator (xoshiro256** seeded via splitmix64).
///
/// The algorithm is fixed here rather than delegated to <random> so that a
/// seed always produces the same stream regardless of standard library, and
/// so fixtures dumped to JSON can be regenerated anywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& s : state_) {
            // splitmix64 step
            x += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            s = z ^ (z >> 31);
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). n must be > 0; modulo bias is irrelevant
    /// at the range sizes used here.
    std::uint64_t uniform_index(std::uint64_t n) { return next_u64() % n; }

    long uniform_long(long lo, long hi) {  // inclusive bounds
        return lo + static_cast<long>(uniform_index(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    /// Standard normal via Box-Muller.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u = uniform();
        double v = uniform();
        if (u <= 0.0) u = 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u));
        const double theta = 2.0 * std::numbers::pi * v;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    /// Derive an independent stream, e.g. one per scene index.
    Rng fork(std::uint64_t salt) { return Rng(next_u64() ^ (salt * 0x9e3779b97f4a7c15ULL)); }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> state_{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace tubekit
