#pragma once

#include <numbers>

namespace sknni {

// Mean Earth radius in kilometres; the default sphere for all operations.
inline constexpr double kEarthRadiusKm = 6371.01;

inline constexpr double kPi = std::numbers::pi;

inline constexpr double deg_to_rad(double degrees) {
    return degrees * (kPi / 180.0);
}

// A point on the sphere in degrees: lat in [-90, 90), lng in [-180, 180)
// once normalized. User-facing structs stay in degrees; radians are an
// internal representation.
struct GeoCoord {
    double lat = 0.0;
    double lng = 0.0;
};

// A located scalar sample (station reading, interpolation result, ...).
struct Observation {
    GeoCoord coord;
    double value = 0.0;
};

struct CartesianPoint {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

// Positive, finite sphere radius. Wrapping it in a type keeps radii from
// being swapped with other doubles in call sites and centralizes validation.
class SphereRadius {
public:
    SphereRadius() = default;
    explicit SphereRadius(double value);  // throws ValidationError if not finite and > 0
    double value() const { return value_; }

private:
    double value_ = kEarthRadiusKm;
};

// How (lat, lng) maps to R^3 for spatial indexing.
//
// Standard is the textbook spherical parameterization treating latitude as
// elevation from the equatorial plane; it is injective over the coordinate
// domain and is the default everywhere.
//
// PaperFaithful feeds the signed latitude into a colatitude-style formula,
// which folds pairs of distinct coordinates onto the same 3-D point
// ((lat, lng) and (-lat, lng±180) coincide). It is kept selectable for
// reproduction studies against prior published results.
enum class EmbeddingMode {
    Standard,
    PaperFaithful,
};

// Validates and canonicalizes a coordinate pair (degrees in, degrees out):
// rejects non-finite or out-of-range input, folds lng = 180 to -180 and
// lat = 90 to the largest double below 90, so the result lies in
// [-90, 90) x [-180, 180). Throws ValidationError naming the bad field.
GeoCoord normalize_coord(double lat_deg, double lng_deg);

// Maps a (degree-space) coordinate onto the sphere of radius rho.
CartesianPoint to_cartesian(const GeoCoord& coord, SphereRadius rho,
                            EmbeddingMode mode = EmbeddingMode::Standard);

// Great-circle distance via the haversine formula with the intermediate
// clamped into [0, 1], so antipodal rounding can never produce NaN. Inputs
// in radians; result in rho's units, within [0, pi * rho].
double orthodromic_distance_rad(double lat_a_rad, double lng_a_rad,
                                double lat_b_rad, double lng_b_rad,
                                double rho);

// Degree-space convenience wrapper over orthodromic_distance_rad.
double orthodromic_distance(const GeoCoord& a, const GeoCoord& b,
                            SphereRadius rho);

}  // namespace sknni
