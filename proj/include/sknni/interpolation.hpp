#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sknni/geodesy.hpp"
#include "sknni/spatial_index.hpp"

namespace sknni {

inline constexpr int kDefaultNeighbors = 20;

// Gathered per-query neighborhoods, row-major M x k, everything already in
// radians. Interpolation functions consume this and nothing else, so they
// stay independent of how neighbors were found.
struct NeighborhoodView {
    std::size_t rows = 0;  // M queries
    std::size_t cols = 0;  // k neighbors per query
    std::vector<double> query_lat;       // M, radians
    std::vector<double> query_lng;       // M, radians
    std::vector<double> neighbor_lat;    // M*k, radians, row-major
    std::vector<double> neighbor_lng;    // M*k
    std::vector<double> neighbor_value;  // M*k

    std::size_t at(std::size_t i, std::size_t j) const { return i * cols + j; }
};

// An interpolation function maps neighborhoods to one estimate per query.
// Within each row, neighbors arrive in nondecreasing embedded-distance
// order (index-tie-broken), which nearest-value relies on.
using InterpFunction = std::function<std::vector<double>(
    const NeighborhoodView&, SphereRadius, int k)>;

// Receives human-readable warnings (currently: k clamped to the observation
// count). Pass your own to capture or silence them; the default writes to
// stderr.
using WarningSink = std::function<void(const std::string&)>;

// The interpolation pipeline: validates and normalizes observations, embeds
// them, builds the spatial index once, and then serves any number of
// interpolate() calls. Immutable after construction.
class Interpolator {
public:
    explicit Interpolator(std::vector<Observation> observations,
                          SphereRadius rho = SphereRadius{},
                          EmbeddingMode mode = EmbeddingMode::Standard);

    std::size_t size() const { return observations_.size(); }
    SphereRadius radius() const { return rho_; }
    EmbeddingMode mode() const { return mode_; }

    // Finds each query's k nearest observations and returns the gathered
    // neighborhoods. k is clamped to size() with a warning; queries are
    // validated and normalized. Exposed so callers evaluating several
    // interpolation functions can reuse one neighbor search.
    NeighborhoodView neighborhoods(std::span<const GeoCoord> queries, int k,
                                   const WarningSink& warn = {}) const;

    // Full pipeline: neighborhoods + the given interpolation function.
    // Output row i carries query i's coordinates exactly as passed in.
    std::vector<Observation> interpolate(std::span<const GeoCoord> queries, int k,
                                         const InterpFunction& fn,
                                         const WarningSink& warn = {}) const;

    // Defaults to the distance-and-dispersion weighted function (NDDNISD).
    std::vector<Observation> interpolate(std::span<const GeoCoord> queries,
                                         int k = kDefaultNeighbors) const;

private:
    std::vector<Observation> observations_;  // normalized, degrees
    std::vector<double> obs_lat_rad_;
    std::vector<double> obs_lng_rad_;
    SphereRadius rho_;
    EmbeddingMode mode_;
    SpatialIndex index_;
};

}  // namespace sknni
