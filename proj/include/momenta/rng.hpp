#ifndef MOMENTA_RNG_HPP
#define MOMENTA_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace momenta::rng {

// splitmix64, used to derive per-stream seeds from (seed, tag).
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Deterministic generator. std::*_distribution is implementation-defined,
// so the variate transforms live here: identical seeds give identical
// streams on any conforming platform.
class Engine {
public:
    explicit Engine(std::uint64_t seed) : gen_(mix(seed, 0)) {}
    Engine(std::uint64_t seed, std::string_view stream) : gen_(mix(seed, fnv1a(stream))) {}

    std::uint64_t bits() { return gen_(); }

    // [0, 1) with 53-bit resolution
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Box-Muller, cosine branch only; two uniforms per variate, no cached
    // spare, so the draw count per variate is fixed.
    double normal() {
        double u1 = uniform01();
        double u2 = uniform01();
        while (u1 == 0.0) u1 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    double normal(double mean, double sd) { return mean + sd * normal(); }

    // Exp(1)
    double exponential() { return -std::log1p(-uniform01()); }

    // unbiased integer in [0, n) via 128-bit multiply (Lemire)
    std::uint64_t below(std::uint64_t n) {
        while (true) {
            std::uint64_t x = gen_();
            __uint128_t m = static_cast<__uint128_t>(x) * n;
            auto lo = static_cast<std::uint64_t>(m);
            if (lo >= n || lo >= static_cast<std::uint64_t>(-n) % n) {
                return static_cast<std::uint64_t>(m >> 64);
            }
        }
    }

private:
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t tag) {
        std::uint64_t s = seed ^ (tag * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);
        return splitmix64(s);
    }

    std::mt19937_64 gen_;
};

}  // namespace momenta::rng

#endif
