#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace gwofs {

// Deterministic random stream. Wraps std::mt19937_64 but maps raw draws to
// uniforms itself, because the std::uniform_* distributions are not required
// to produce identical sequences across standard libraries. Every stream is
// derived from a (seed, key...) tuple so results do not depend on call order
// elsewhere in the program or on thread scheduling.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(mix(seed)) {}

    // Substream derivation: hash the seed with up to three key values.
    static Rng derive(std::uint64_t seed, std::uint64_t k1, std::uint64_t k2 = 0,
                      std::uint64_t k3 = 0) {
        std::uint64_t h = mix(seed ^ 0x9e3779b97f4a7c15ull);
        h = mix(h ^ k1);
        h = mix(h ^ k2);
        h = mix(h ^ k3);
        return Rng(h);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform integer in [0, n). Modulo bias is negligible for n << 2^64.
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

    // Standard normal via Box-Muller (deterministic, unlike std::normal_distribution).
    double gauss() {
        double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
        double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
    }

    std::uint64_t raw() { return engine_(); }

private:
    static constexpr double pi = 3.14159265358979323846;

    // splitmix64 finalizer
    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    std::mt19937_64 engine_;
};

// Fixed substream tags so library components never collide on derived streams.
namespace stream {
inline constexpr std::uint64_t init = 1;       // population initialization
inline constexpr std::uint64_t woa = 2;        // per-agent whale update, keys (iter, slot)
inline constexpr std::uint64_t ga = 3;         // per-iteration genetic step
inline constexpr std::uint64_t split = 4;      // stratified splits, key = class id
inline constexpr std::uint64_t synth = 5;      // synthetic data generation
inline constexpr std::uint64_t subsample = 6;  // file subsampling
inline constexpr std::uint64_t holdout = 7;    // final test holdout carve
inline constexpr std::uint64_t proto = 8;      // fitness evaluation split
}  // namespace stream

}  // namespace gwofs
