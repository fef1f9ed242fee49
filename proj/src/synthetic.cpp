#include "sknni/synthetic.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "sknni/errors.hpp"
#include "sknni/random_stream.hpp"

namespace sknni {

double positive_mod(double x, double m) {
    const double r = std::fmod(x, m);
    return r < 0.0 ? r + m : r;
}

double synthetic_field_value(double lat_deg, double lng_deg, double time_hours,
                             double noise) {
    const double principal = 42.0 * std::sin(kPi * (lat_deg + 90.0) / 180.0);
    const double secondary =
        7.0 * std::cos(1.5 * kPi * (lng_deg + 180.0) / 180.0 +
                       (kPi / 12.0) * time_hours);
    return principal + secondary + noise - 25.0;
}

std::vector<Observation> generate_synthetic(const SyntheticSpec& spec) {
    if (spec.n_stations < 1) {
        std::ostringstream msg;
        msg << "n_stations must be at least 1, got " << spec.n_stations;
        throw ValidationError(msg.str());
    }

    static constexpr std::array<double, 6> kLngOffsets{-125.0, -75.0, 0.0,
                                                       75.0,   100.0, 135.0};
    static constexpr std::array<double, 6> kLngOffsetProbs{0.15, 0.15, 0.15,
                                                           0.20, 0.20, 0.15};

    RandomStream rng(spec.seed);
    std::vector<Observation> observations;
    observations.reserve(static_cast<std::size_t>(spec.n_stations));
    for (int i = 0; i < spec.n_stations; ++i) {
        const double lat = rng.truncated_normal(0.0, 30.0, -90.0, 90.0);
        const double lng_base = rng.truncated_normal(0.0, 60.0, -180.0, 180.0);
        const double lng_offset = kLngOffsets[rng.categorical(kLngOffsetProbs)];
        const double lng = positive_mod(lng_base + lng_offset + 180.0, 360.0) - 180.0;
        const double noise = rng.uniform(0.0, 8.0);
        const double value = synthetic_field_value(lat, lng, spec.time_hours, noise);
        observations.push_back(Observation{GeoCoord{lat, lng}, value});
    }
    return observations;
}

}  // namespace sknni
