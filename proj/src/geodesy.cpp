#include "sknni/geodesy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sknni/errors.hpp"

namespace sknni {

SphereRadius::SphereRadius(double value) : value_(value) {
    if (!std::isfinite(value) || value <= 0.0) {
        std::ostringstream msg;
        msg << "radius must be a positive finite number, got " << value;
        throw ValidationError(msg.str());
    }
}

namespace {

void check_coord_field(const char* field, double value, double lo, double hi) {
    if (!std::isfinite(value)) {
        std::ostringstream msg;
        msg << field << " must be finite, got " << value;
        throw ValidationError(msg.str());
    }
    if (value < lo || value > hi) {
        std::ostringstream msg;
        msg << field << " out of range [" << lo << ", " << hi << "]: " << value;
        throw ValidationError(msg.str());
    }
}

}  // namespace

GeoCoord normalize_coord(double lat_deg, double lng_deg) {
    check_coord_field("lat", lat_deg, -90.0, 90.0);
    check_coord_field("lng", lng_deg, -180.0, 180.0);
    // Fold the closed upper edges onto the half-open canonical domain.
    if (lat_deg == 90.0) {
        lat_deg = std::nextafter(90.0, 0.0);
    }
    if (lng_deg == 180.0) {
        lng_deg = -180.0;
    }
    return GeoCoord{lat_deg, lng_deg};
}

CartesianPoint to_cartesian(const GeoCoord& coord, SphereRadius rho,
                            EmbeddingMode mode) {
    const double phi = deg_to_rad(coord.lat);
    const double theta = deg_to_rad(coord.lng);
    const double r = rho.value();
    if (mode == EmbeddingMode::PaperFaithful) {
        return CartesianPoint{r * std::cos(theta) * std::sin(phi),
                              r * std::sin(theta) * std::sin(phi),
                              r * std::cos(phi)};
    }
    return CartesianPoint{r * std::cos(phi) * std::cos(theta),
                          r * std::cos(phi) * std::sin(theta),
                          r * std::sin(phi)};
}

double orthodromic_distance_rad(double lat_a_rad, double lng_a_rad,
                                double lat_b_rad, double lng_b_rad,
                                double rho) {
    const double sin_half_lat = std::sin((lat_b_rad - lat_a_rad) / 2.0);
    const double sin_half_lng = std::sin((lng_b_rad - lng_a_rad) / 2.0);
    double a = sin_half_lat * sin_half_lat +
               std::cos(lat_a_rad) * std::cos(lat_b_rad) * sin_half_lng * sin_half_lng;
    // Rounding can push a marginally outside [0, 1] for near-antipodal or
    // near-coincident pairs; sqrt(1 - a) must stay real.
    a = std::clamp(a, 0.0, 1.0);
    return 2.0 * rho * std::atan2(std::sqrt(a), std::sqrt(1.0 - a));
}

double orthodromic_distance(const GeoCoord& a, const GeoCoord& b,
                            SphereRadius rho) {
    return orthodromic_distance_rad(deg_to_rad(a.lat), deg_to_rad(a.lng),
                                    deg_to_rad(b.lat), deg_to_rad(b.lng),
                                    rho.value());
}

}  // namespace sknni
