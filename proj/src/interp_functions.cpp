#include "sknni/interp_functions.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "sknni/errors.hpp"

namespace sknni {

namespace {

void check_row_shape(const NeighborhoodView& view, int k) {
    if (view.rows == 0 || view.cols == 0) {
        throw ValidationError("neighborhood view is empty");
    }
    if (k < 1 || static_cast<std::size_t>(k) > view.cols) {
        std::ostringstream msg;
        msg << "k must be in [1, " << view.cols << "] for this neighborhood view, got "
            << k;
        throw ValidationError(msg.str());
    }
}

double degenerate_threshold_for(SphereRadius rho) {
    return 1e-12 * rho.value();
}

}  // namespace

std::vector<double> proximal_distances(const NeighborhoodView& view,
                                       SphereRadius rho) {
    std::vector<double> delta(view.rows * view.cols);
    for (std::size_t i = 0; i < view.rows; ++i) {
        for (std::size_t j = 0; j < view.cols; ++j) {
            const std::size_t flat = view.at(i, j);
            delta[flat] = orthodromic_distance_rad(
                view.query_lat[i], view.query_lng[i], view.neighbor_lat[flat],
                view.neighbor_lng[flat], rho.value());
        }
    }
    return delta;
}

std::vector<double> nisd_weights(std::span<const double> delta, std::size_t cols,
                                 StabilityEpsilon eps) {
    if (cols == 0 || delta.size() % cols != 0) {
        throw ValidationError("distance matrix shape does not match the column count");
    }
    std::vector<double> weights(delta.size());
    const std::size_t rows = delta.size() / cols;
    for (std::size_t i = 0; i < rows; ++i) {
        double total = 0.0;
        for (std::size_t j = 0; j < cols; ++j) {
            const double d = delta[i * cols + j];
            const double inv = 1.0 / (d * d + eps.value);
            weights[i * cols + j] = inv;
            total += inv;
        }
        for (std::size_t j = 0; j < cols; ++j) {
            weights[i * cols + j] /= total;
        }
    }
    return weights;
}

std::vector<double> ndd_weights_from_eta(std::span<const double> base_weights,
                                         std::span<const double> eta,
                                         double degenerate_threshold) {
    if (base_weights.size() != eta.size() || base_weights.empty()) {
        throw ValidationError("weight and centroid-distance rows must have equal nonzero size");
    }
    std::vector<double> scaled(base_weights.size());
    double total = 0.0;
    for (std::size_t j = 0; j < base_weights.size(); ++j) {
        scaled[j] = base_weights[j] * eta[j];
        total += scaled[j];
    }
    if (total <= degenerate_threshold) {
        // All neighbors (or all weighted mass) sit at the centroid; the
        // dispersion signal is void, so keep the base weights.
        return std::vector<double>(base_weights.begin(), base_weights.end());
    }
    for (double& w : scaled) {
        w /= total;
    }
    return scaled;
}

std::vector<double> ndd_reweight(const NeighborhoodView& view,
                                 std::span<const double> base_weights,
                                 SphereRadius rho) {
    if (base_weights.size() != view.rows * view.cols) {
        throw ValidationError("base weight matrix does not match the neighborhood shape");
    }
    const double threshold = degenerate_threshold_for(rho);
    std::vector<double> result(base_weights.size());
    std::vector<double> eta(view.cols);
    for (std::size_t i = 0; i < view.rows; ++i) {
        double lat_sum = 0.0;
        double lng_sum = 0.0;
        for (std::size_t j = 0; j < view.cols; ++j) {
            lat_sum += view.neighbor_lat[view.at(i, j)];
            lng_sum += view.neighbor_lng[view.at(i, j)];
        }
        const double centroid_lat = lat_sum / static_cast<double>(view.cols);
        const double centroid_lng = lng_sum / static_cast<double>(view.cols);
        for (std::size_t j = 0; j < view.cols; ++j) {
            const std::size_t flat = view.at(i, j);
            eta[j] = orthodromic_distance_rad(centroid_lat, centroid_lng,
                                              view.neighbor_lat[flat],
                                              view.neighbor_lng[flat], rho.value());
        }
        const std::vector<double> row = ndd_weights_from_eta(
            base_weights.subspan(i * view.cols, view.cols), eta, threshold);
        std::copy(row.begin(), row.end(), result.begin() + i * view.cols);
    }
    return result;
}

namespace {

// Copies the first k columns of each row so the interpolation math runs on
// exactly the requested neighborhood size. The prefix of a distance-sorted
// row is itself the exact k-nearest set, which lets callers reuse one wide
// neighbor search across several k values.
NeighborhoodView prefix_view(const NeighborhoodView& view, std::size_t k) {
    NeighborhoodView out;
    out.rows = view.rows;
    out.cols = k;
    out.query_lat = view.query_lat;
    out.query_lng = view.query_lng;
    out.neighbor_lat.resize(view.rows * k);
    out.neighbor_lng.resize(view.rows * k);
    out.neighbor_value.resize(view.rows * k);
    for (std::size_t i = 0; i < view.rows; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            out.neighbor_lat[out.at(i, j)] = view.neighbor_lat[view.at(i, j)];
            out.neighbor_lng[out.at(i, j)] = view.neighbor_lng[view.at(i, j)];
            out.neighbor_value[out.at(i, j)] = view.neighbor_value[view.at(i, j)];
        }
    }
    return out;
}

}  // namespace

std::vector<double> nddnisd(const NeighborhoodView& view, SphereRadius rho, int k) {
    check_row_shape(view, k);
    NeighborhoodView narrowed;
    const NeighborhoodView* local = &view;
    if (static_cast<std::size_t>(k) != view.cols) {
        narrowed = prefix_view(view, static_cast<std::size_t>(k));
        local = &narrowed;
    }
    const std::vector<double> delta = proximal_distances(*local, rho);
    const std::vector<double> base =
        nisd_weights(delta, local->cols, StabilityEpsilon::for_radius(rho));
    const std::vector<double> weights = ndd_reweight(*local, base, rho);

    std::vector<double> estimates(local->rows);
    for (std::size_t i = 0; i < local->rows; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < local->cols; ++j) {
            acc += weights[local->at(i, j)] * local->neighbor_value[local->at(i, j)];
        }
        estimates[i] = acc;
    }
    return estimates;
}

std::vector<double> nearest_value(const NeighborhoodView& view, SphereRadius rho,
                                  int k) {
    (void)rho;
    check_row_shape(view, k);
    std::vector<double> estimates(view.rows);
    for (std::size_t i = 0; i < view.rows; ++i) {
        estimates[i] = view.neighbor_value[view.at(i, 0)];
    }
    return estimates;
}

std::vector<double> mean_value(const NeighborhoodView& view, SphereRadius rho,
                               int k) {
    (void)rho;
    check_row_shape(view, k);
    const std::size_t kk = static_cast<std::size_t>(k);
    std::vector<double> estimates(view.rows);
    for (std::size_t i = 0; i < view.rows; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < kk; ++j) {
            acc += view.neighbor_value[view.at(i, j)];
        }
        estimates[i] = acc / static_cast<double>(kk);
    }
    return estimates;
}

std::vector<double> median_value(const NeighborhoodView& view, SphereRadius rho,
                                 int k) {
    (void)rho;
    check_row_shape(view, k);
    const std::size_t kk = static_cast<std::size_t>(k);
    std::vector<double> row(kk);
    std::vector<double> estimates(view.rows);
    for (std::size_t i = 0; i < view.rows; ++i) {
        for (std::size_t j = 0; j < kk; ++j) {
            row[j] = view.neighbor_value[view.at(i, j)];
        }
        std::sort(row.begin(), row.end());
        if (kk % 2 == 1) {
            estimates[i] = row[kk / 2];
        } else {
            estimates[i] = (row[kk / 2 - 1] + row[kk / 2]) / 2.0;
        }
    }
    return estimates;
}

const InterpFunction* find_interp_function(std::string_view name) {
    static const std::array<std::pair<std::string_view, InterpFunction>, 4> registry{{
        {"nddnisd", InterpFunction(nddnisd)},
        {"nearest", InterpFunction(nearest_value)},
        {"mean", InterpFunction(mean_value)},
        {"median", InterpFunction(median_value)},
    }};
    for (const auto& [key, fn] : registry) {
        if (key == name) {
            return &fn;
        }
    }
    return nullptr;
}

std::vector<std::string_view> interp_function_names() {
    return {"nddnisd", "nearest", "mean", "median"};
}

}  // namespace sknni
