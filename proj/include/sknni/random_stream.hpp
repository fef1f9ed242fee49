#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace sknni {

// Deterministic random stream: a fixed mt19937_64 engine (bit-exact output
// is guaranteed by the standard) plus explicit distribution transforms,
// because the standard library's distribution objects may differ between
// implementations. Same seed, same platform-independent sequence.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    // Standard normal via Box-Muller (the pair's second value is discarded
    // to keep the draw count per sample fixed at two).
    double normal(double mean, double stddev);

    // Normal conditioned on [lo, hi] by rejection; the bounds used here are
    // within a few standard deviations, so acceptance stays high.
    double truncated_normal(double mean, double stddev, double lo, double hi);

    // Index draw from explicit probabilities (assumed to sum to 1).
    std::size_t categorical(std::span<const double> probabilities);

    // Uniform index in [0, n).
    std::size_t index(std::size_t n) {
        const auto i = static_cast<std::size_t>(uniform01() * static_cast<double>(n));
        return i < n ? i : n - 1;
    }

private:
    std::mt19937_64 engine_;
};

// splitmix64 finalizer; used to derive independent substream seeds from a
// base seed and a small tag.
std::uint64_t splitmix64(std::uint64_t x);

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag) {
    return splitmix64(base ^ (0x9E3779B97F4A7C15ULL * (tag + 1)));
}

}  // namespace sknni
