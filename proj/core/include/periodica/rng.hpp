#pragma once

#include <cstdint>

namespace periodica {

/// Counter-based generator: draw i is a pure function of (seed, i), so streams
/// can be sampled in any order and reproduced from the recorded name + seed.
/// The mixer is the splitmix64 finalizer over seed + (i+1)*golden-gamma.
class CounterRng {
public:
    static constexpr const char* kName = "splitmix64-counter";

    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t bits(std::uint64_t i) const {
        std::uint64_t z = seed_ + (i + 1) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform on (0, 1]; never 0, so it is log-safe.
    double uniform(std::uint64_t i) const {
        return static_cast<double>((bits(i) >> 11) + 1) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller (cosine branch); draw i consumes the
    /// uniform counters 2i and 2i+1.
    double gaussian(std::uint64_t i) const;

    std::uint64_t seed() const noexcept { return seed_; }

private:
    std::uint64_t seed_;
};

}  // namespace periodica
