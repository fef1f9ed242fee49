#pragma once

#include <cstdint>
#include <vector>

#include "sknni/geodesy.hpp"

namespace sknni {

// Parameters of the synthetic observation generator.
struct SyntheticSpec {
    int n_stations = 4000;
    double time_hours = 0.0;  // phase input to the field's longitude wave
    std::uint64_t seed = 1;
};

// x mod m folded into [0, m).
double positive_mod(double x, double m);

// The deterministic part of the synthetic field plus an additive noise term:
// a latitude-driven principal wave, a time-phased longitude wave, and a
// constant offset. With noise in [0, 8] the value range is [-32, 32].
double synthetic_field_value(double lat_deg, double lng_deg, double time_hours,
                             double noise);

// Draws n_stations synthetic observations: latitudes cluster around the
// equator (truncated normal), longitudes mix a truncated normal with a
// categorical offset over six hotspots (wrapped into [-180, 180)), and
// values come from the synthetic field with U(0, 8) noise. Deterministic
// for a fixed spec.
std::vector<Observation> generate_synthetic(const SyntheticSpec& spec);

}  // namespace sknni
