#pragma once

#include <cmath>
#include <cstdint>

namespace sfgame {

/// Deterministic xoshiro256++ stream. Each simulation purpose (shadowing,
/// direction draws, fault draws, id assignment) owns its own stream so that
/// paired runs consume identical sequences regardless of what the other
/// streams are used for.
class Rng {
public:
    Rng() : Rng(1, 0) {}

    Rng(std::uint64_t seed, std::uint64_t stream_tag) {
        std::uint64_t x = seed ^ (0x9E3779B97F4A7C15ull * (stream_tag + 1));
        for (auto& w : state_) w = splitmix64(x);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform on the open interval (0, 1); never returns 0 or 1.
    double uniform_open() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Normal draw via Box-Muller; consumes exactly two uniforms.
    double normal(double mean, double sigma) {
        const double u1 = uniform_open();
        const double u2 = uniform_open();
        const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
        return mean + sigma * z;
    }

    /// Uniform integer in [0, n); n > 0. Unbiased via rejection.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    /// Number of successes out of n independent trials with probability p.
    int binomial(int n, double p) {
        int hits = 0;
        for (int i = 0; i < n; ++i)
            if (uniform() < p) ++hits;
        return hits;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_[4];
};

/// Stream tags; one per random purpose.
namespace stream {
inline constexpr std::uint64_t kAssignment = 1;  // attacker/fault ids, fault modes, thetas
inline constexpr std::uint64_t kShadowing = 2;   // per-round per-CM shadow fading
inline constexpr std::uint64_t kDirection = 3;   // per-round per-CM direction draws
inline constexpr std::uint64_t kFault = 4;       // per-round fault outcomes
}  // namespace stream

}  // namespace sfgame
