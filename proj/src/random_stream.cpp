#include "sknni/random_stream.hpp"

#include <cmath>

#include "sknni/errors.hpp"
#include "sknni/geodesy.hpp"

namespace sknni {

double RandomStream::normal(double mean, double stddev) {
    // u1 in (0, 1] so the log is finite.
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * radius * std::cos(2.0 * kPi * u2);
}

double RandomStream::truncated_normal(double mean, double stddev, double lo,
                                      double hi) {
    if (!(lo < hi)) {
        throw ValidationError("truncated_normal requires lo < hi");
    }
    for (;;) {
        const double x = normal(mean, stddev);
        if (x >= lo && x <= hi) {
            return x;
        }
    }
}

std::size_t RandomStream::categorical(std::span<const double> probabilities) {
    if (probabilities.empty()) {
        throw ValidationError("categorical draw needs at least one probability");
    }
    const double u = uniform01();
    double cumulative = 0.0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        cumulative += probabilities[i];
        if (u < cumulative) {
            return i;
        }
    }
    // Rounding can leave the cumulative sum a hair under 1.
    return probabilities.size() - 1;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace sknni
