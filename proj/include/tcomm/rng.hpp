#pragma once

#include <cstdint>
#include <random>

namespace tcomm {

/// SplitMix64 finalizer; used to derive sub-seeds and fixed pseudo-random
/// start vectors.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// mt19937_64 with bit-reproducible draws. The standard distributions are
/// implementation-defined, so bounded integers use rejection sampling and
/// reals take the top 53 bits.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Independent stream for a named sub-task.
    Rng derive(std::uint64_t stream) { return Rng(splitmix64(engine_() ^ splitmix64(stream))); }

private:
    std::mt19937_64 engine_;
};

}  // namespace tcomm
