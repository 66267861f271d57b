#pragma once

#include <cstdint>
#include <random>

namespace acstune {

// SplitMix64 finalizer; used to derive child seeds from a master seed.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Tags for Rng::derive so independent components never share a stream.
namespace rng_role {
inline constexpr std::uint64_t swarm_init = 1;
inline constexpr std::uint64_t pso_eval = 2;
inline constexpr std::uint64_t velocity = 3;
inline constexpr std::uint64_t trial = 4;
inline constexpr std::uint64_t bench_cell = 5;
}  // namespace rng_role

/**
 * Seedable random stream with a stateless fan-out: derive(role, a, b) hashes
 * (construction seed, role, a, b) into a child seed, so every component gets
 * a private stream that depends only on the master seed and its coordinates,
 * never on scheduling order. All mappings avoid std::uniform_*_distribution
 * so sequences are identical across standard libraries.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // uniform in [0,1)
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // uniform in [lo,hi)
    double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

    // uniform in [0,bound); bound > 0 (Lemire multiply-shift)
    std::uint32_t uniform_int(std::uint32_t bound) {
        return static_cast<std::uint32_t>(
            (static_cast<unsigned __int128>(engine_()) * bound) >> 64);
    }

    std::uint64_t seed() const { return seed_; }

    Rng derive(std::uint64_t role, std::uint64_t a = 0, std::uint64_t b = 0) const {
        std::uint64_t h = mix64(seed_ ^ mix64(role));
        h = mix64(h ^ mix64(a));
        h = mix64(h ^ mix64(b));
        return Rng(h);
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace acstune
