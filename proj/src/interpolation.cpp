#include "sknni/interpolation.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include "sknni/errors.hpp"
#include "sknni/interp_functions.hpp"

namespace sknni {

namespace {

std::vector<CartesianPoint> embed_all(std::span<const GeoCoord> coords,
                                      SphereRadius rho, EmbeddingMode mode) {
    std::vector<CartesianPoint> points;
    points.reserve(coords.size());
    for (const GeoCoord& c : coords) {
        points.push_back(to_cartesian(c, rho, mode));
    }
    return points;
}

std::vector<GeoCoord> normalized_coords(std::span<const Observation> observations) {
    std::vector<GeoCoord> coords;
    coords.reserve(observations.size());
    for (const Observation& obs : observations) {
        coords.push_back(normalize_coord(obs.coord.lat, obs.coord.lng));
    }
    return coords;
}

}  // namespace

Interpolator::Interpolator(std::vector<Observation> observations,
                           SphereRadius rho, EmbeddingMode mode)
    : observations_(std::move(observations)),
      rho_(rho),
      mode_(mode),
      index_([&] {
          if (observations_.empty()) {
              throw ValidationError("observations are empty: nothing to interpolate from");
          }
          std::vector<GeoCoord> coords = normalized_coords(observations_);
          for (std::size_t i = 0; i < coords.size(); ++i) {
              if (!std::isfinite(observations_[i].value)) {
                  std::ostringstream msg;
                  msg << "observation value must be finite, got "
                      << observations_[i].value;
                  throw ValidationError(msg.str());
              }
              observations_[i].coord = coords[i];
              obs_lat_rad_.push_back(deg_to_rad(coords[i].lat));
              obs_lng_rad_.push_back(deg_to_rad(coords[i].lng));
          }
          return SpatialIndex(embed_all(coords, rho_, mode_));
      }()) {}

NeighborhoodView Interpolator::neighborhoods(std::span<const GeoCoord> queries,
                                             int k, const WarningSink& warn) const {
    if (queries.empty()) {
        throw ValidationError("no queries to interpolate");
    }
    if (k < 1) {
        std::ostringstream msg;
        msg << "k must be at least 1, got " << k;
        throw ValidationError(msg.str());
    }
    int k_eff = k;
    if (static_cast<std::size_t>(k) > size()) {
        k_eff = static_cast<int>(size());
        std::ostringstream msg;
        msg << "k = " << k << " exceeds the number of observations (" << size()
            << "); clamping k to " << k_eff;
        if (warn) {
            warn(msg.str());
        } else {
            std::cerr << "warning: " << msg.str() << "\n";
        }
    }

    std::vector<GeoCoord> canonical;
    canonical.reserve(queries.size());
    for (const GeoCoord& q : queries) {
        canonical.push_back(normalize_coord(q.lat, q.lng));
    }
    const std::vector<CartesianPoint> embedded = embed_all(canonical, rho_, mode_);
    const NeighborMatrix neighbors = query_knn(index_, embedded, k_eff);

    NeighborhoodView view;
    view.rows = queries.size();
    view.cols = static_cast<std::size_t>(k_eff);
    view.query_lat.reserve(view.rows);
    view.query_lng.reserve(view.rows);
    view.neighbor_lat.resize(view.rows * view.cols);
    view.neighbor_lng.resize(view.rows * view.cols);
    view.neighbor_value.resize(view.rows * view.cols);
    for (std::size_t i = 0; i < view.rows; ++i) {
        view.query_lat.push_back(deg_to_rad(canonical[i].lat));
        view.query_lng.push_back(deg_to_rad(canonical[i].lng));
        for (std::size_t j = 0; j < view.cols; ++j) {
            const std::uint32_t obs_index = neighbors(i, j);
            const std::size_t flat = view.at(i, j);
            view.neighbor_lat[flat] = obs_lat_rad_[obs_index];
            view.neighbor_lng[flat] = obs_lng_rad_[obs_index];
            view.neighbor_value[flat] = observations_[obs_index].value;
        }
    }
    return view;
}

std::vector<Observation> Interpolator::interpolate(std::span<const GeoCoord> queries,
                                                   int k, const InterpFunction& fn,
                                                   const WarningSink& warn) const {
    const NeighborhoodView view = neighborhoods(queries, k, warn);
    const std::vector<double> estimates = fn(view, rho_, static_cast<int>(view.cols));

    std::vector<Observation> results;
    results.reserve(queries.size());
    for (std::size_t i = 0; i < queries.size(); ++i) {
        results.push_back(Observation{queries[i], estimates[i]});
    }
    return results;
}

std::vector<Observation> Interpolator::interpolate(std::span<const GeoCoord> queries,
                                                   int k) const {
    return interpolate(queries, k, InterpFunction(nddnisd));
}

}  // namespace sknni
