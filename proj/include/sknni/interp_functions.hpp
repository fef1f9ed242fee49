#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "sknni/interpolation.hpp"

namespace sknni {

// Additive stabilizer for inverse-squared-distance weights. Lives in squared
// length units and is derived from the sphere radius, so weights -- and
// therefore estimates -- are invariant under a change of length units.
struct StabilityEpsilon {
    double value = 0.0;

    static StabilityEpsilon for_radius(SphereRadius rho) {
        const double scaled = 1e-6 * rho.value();
        return StabilityEpsilon{scaled * scaled};
    }
};

// Great-circle (orthodromic) distance from each query to each of its
// neighbors; flat row-major M x k, in rho's units.
std::vector<double> proximal_distances(const NeighborhoodView& view,
                                       SphereRadius rho);

// Normalized inverse-squared-distance weights: per row,
// w[j] = (1 / (delta[j]^2 + eps)) / sum_j' (1 / (delta[j']^2 + eps)).
// Rows sum to 1; a coincident neighbor (delta = 0) takes nearly all weight.
std::vector<double> nisd_weights(std::span<const double> delta, std::size_t cols,
                                 StabilityEpsilon eps);

// One row of the dispersion reweighting: scales base weights by each
// neighbor's distance eta from the neighborhood centroid and renormalizes.
// Falls back to the base weights when the normalizer is degenerate
// (sum w*eta <= degenerate_threshold, e.g. all neighbors coincide).
std::vector<double> ndd_weights_from_eta(std::span<const double> base_weights,
                                         std::span<const double> eta,
                                         double degenerate_threshold);

// Full dispersion reweighting for every row of a neighborhood view. The
// centroid is the plain arithmetic mean of the neighbor latitudes and
// longitudes in radians (no wraparound handling -- kept deliberately simple
// and cheap; neighborhoods are local so the mean is a serviceable center).
std::vector<double> ndd_reweight(const NeighborhoodView& view,
                                 std::span<const double> base_weights,
                                 SphereRadius rho);

// The four interpolation functions. Each consumes the first k neighbors of
// every row (1 <= k <= view.cols) and returns one estimate per query.
//
// nddnisd: inverse-squared-distance weights, dispersion-reweighted --
// neighbors far from the local centroid (directionally isolated) gain
// weight, clustered ones share it.
std::vector<double> nddnisd(const NeighborhoodView& view, SphereRadius rho, int k);
// Value of the nearest neighbor (rows arrive distance-sorted).
std::vector<double> nearest_value(const NeighborhoodView& view, SphereRadius rho, int k);
// Unweighted neighborhood mean.
std::vector<double> mean_value(const NeighborhoodView& view, SphereRadius rho, int k);
// Neighborhood median (even k averages the middle pair).
std::vector<double> median_value(const NeighborhoodView& view, SphereRadius rho, int k);

// Name-based lookup used by the CLI and experiment configs. Names:
// "nddnisd", "nearest", "mean", "median". Returns nullptr for unknown names.
const InterpFunction* find_interp_function(std::string_view name);
std::vector<std::string_view> interp_function_names();

}  // namespace sknni
