#ifndef POLYCONF_RNG_HPP
#define POLYCONF_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace polyconf {

// Deterministic random source. All distribution transforms are implemented
// here rather than via <random> distributions, so that a given seed produces
// bit-identical streams on every platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : origin_seed_(seed), engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller (pairs cached; no rejection).
    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        double u1 = 1.0 - uniform(); // (0, 1], keeps log finite
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * kPi * u2;
        cached_ = r * std::sin(a);
        has_cached_ = true;
        return r * std::cos(a);
    }

    // Unbiased integer in [0, n), modulo rejection.
    std::uint64_t bounded(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold)
                return r % n;
        }
    }

    // Fisher-Yates.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[static_cast<std::size_t>(bounded(i))]);
    }

    // Independent child stream addressed by tag. Derivation depends only on
    // the origin seed, never on how much of this stream was consumed, so
    // per-unit substreams are stable under any generation order.
    Rng fork(std::uint64_t tag) const {
        return Rng(splitmix64(origin_seed_ ^ splitmix64(tag ^ 0x9e3779b97f4a7c15ULL)));
    }

    std::uint64_t origin_seed() const { return origin_seed_; }

    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

private:
    static constexpr double kPi = 3.14159265358979323846;

    std::uint64_t origin_seed_;
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

} // namespace polyconf

#endif
