#include "sknni/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "sknni/csv_io.hpp"
#include "sknni/errors.hpp"
#include "sknni/interp_functions.hpp"
#include "sknni/interpolation.hpp"
#include "sknni/synthetic.hpp"

namespace sknni {

namespace {

void check_bounds(const AmerpeBounds& bounds) {
    if (!std::isfinite(bounds.v_min) || !std::isfinite(bounds.v_max) ||
        !(bounds.v_min < bounds.v_max)) {
        std::ostringstream msg;
        msg << "bounds must satisfy v_min < v_max with both finite, got ["
            << bounds.v_min << ", " << bounds.v_max << "]";
        throw ValidationError(msg.str());
    }
}

}  // namespace

double amerpe(double true_value, double predicted_value,
              const AmerpeBounds& bounds) {
    check_bounds(bounds);
    return 100.0 * std::abs(true_value - predicted_value) /
           (bounds.v_max - bounds.v_min);
}

double expected_min_error(double lo, double hi) {
    if (!(lo < hi)) {
        std::ostringstream msg;
        msg << "expected_min_error requires lo < hi, got [" << lo << ", " << hi << "]";
        throw ValidationError(msg.str());
    }
    return (hi - lo) / 4.0;
}

double amerpe_floor_synthetic() {
    // U(0, 8) noise against the synthetic field's [-32, 32] range.
    return 100.0 * expected_min_error(0.0, 8.0) / 64.0;
}

std::vector<int> default_k_values() {
    std::vector<int> ks(25);
    std::iota(ks.begin(), ks.end(), 1);
    return ks;
}

BootstrapCi bootstrap_mean_ci(std::span<const double> values, int resamples,
                              double level, std::uint64_t seed) {
    if (values.empty()) {
        throw ValidationError("bootstrap needs at least one value");
    }
    if (resamples < 1) {
        throw ValidationError("bootstrap resample count must be at least 1");
    }
    if (!(level > 0.0 && level < 1.0)) {
        throw ValidationError("confidence level must lie strictly between 0 and 1");
    }

    RandomStream rng(seed);
    const std::size_t n = values.size();
    std::vector<double> means;
    means.reserve(static_cast<std::size_t>(resamples));
    for (int b = 0; b < resamples; ++b) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            total += values[rng.index(n)];
        }
        means.push_back(total / static_cast<double>(n));
    }
    std::sort(means.begin(), means.end());

    auto percentile = [&](double p) {
        const double pos = p * static_cast<double>(means.size() - 1);
        const std::size_t i0 = static_cast<std::size_t>(pos);
        if (i0 + 1 >= means.size()) {
            return means.back();
        }
        const double frac = pos - static_cast<double>(i0);
        return means[i0] + frac * (means[i0 + 1] - means[i0]);
    };
    return BootstrapCi{percentile((1.0 - level) / 2.0),
                       percentile((1.0 + level) / 2.0)};
}

std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>
split_fit_holdout(std::size_t n, std::size_t n_fit, RandomStream& rng) {
    if (n_fit < 1 || n_fit >= n) {
        std::ostringstream msg;
        msg << "n_fit must leave a nonempty holdout: need 1 <= n_fit < " << n
            << ", got " << n_fit;
        throw ValidationError(msg.str());
    }
    std::vector<std::uint32_t> indices(n);
    std::iota(indices.begin(), indices.end(), 0u);
    // Partial Fisher-Yates: after i steps the first i entries are a uniform
    // without-replacement sample.
    for (std::size_t i = 0; i < n_fit; ++i) {
        const std::size_t j = i + rng.index(n - i);
        std::swap(indices[i], indices[j]);
    }
    std::vector<std::uint32_t> fit(indices.begin(),
                                   indices.begin() + static_cast<std::ptrdiff_t>(n_fit));
    std::vector<std::uint32_t> holdout(
        indices.begin() + static_cast<std::ptrdiff_t>(n_fit), indices.end());
    return {std::move(fit), std::move(holdout)};
}

void validate_config(const ExperimentConfig& config) {
    if (config.n_fit < 1) {
        throw ValidationError("n_fit must be at least 1");
    }
    if (config.runs < 1) {
        throw ValidationError("runs must be at least 1");
    }
    if (config.k_values.empty()) {
        throw ValidationError("k_values must be nonempty");
    }
    for (int k : config.k_values) {
        if (k < 1) {
            std::ostringstream msg;
            msg << "k_values entries must be at least 1, got " << k;
            throw ValidationError(msg.str());
        }
        if (k > config.n_fit) {
            std::ostringstream msg;
            msg << "k_values entry " << k << " exceeds n_fit (" << config.n_fit << ")";
            throw ValidationError(msg.str());
        }
    }
    if (config.functions.empty()) {
        throw ValidationError("functions must be nonempty");
    }
    for (const std::string& name : config.functions) {
        if (find_interp_function(name) == nullptr) {
            std::ostringstream msg;
            msg << "unknown interpolation function '" << name << "' (known:";
            for (std::string_view known : interp_function_names()) {
                msg << " " << known;
            }
            msg << ")";
            throw ValidationError(msg.str());
        }
    }
    check_bounds(config.bounds);
    if (config.bootstrap_samples < 1) {
        throw ValidationError("bootstrap_samples must be at least 1");
    }
    if (!(config.ci_level > 0.0 && config.ci_level < 1.0)) {
        throw ValidationError("ci_level must lie strictly between 0 and 1");
    }
    if (const auto* synthetic = std::get_if<SyntheticSource>(&config.source)) {
        if (synthetic->n_stations < 1) {
            throw ValidationError("source.n_stations must be at least 1");
        }
        if (config.n_fit >= synthetic->n_stations) {
            std::ostringstream msg;
            msg << "n_fit (" << config.n_fit
                << ") must be smaller than source.n_stations ("
                << synthetic->n_stations << "): it would leave the holdout empty";
            throw ValidationError(msg.str());
        }
    } else if (const auto* csv = std::get_if<CsvSource>(&config.source)) {
        if (csv->files.empty()) {
            throw ValidationError("source.files must list at least one observation CSV");
        }
    }
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    validate_config(config);

    std::vector<const InterpFunction*> functions;
    functions.reserve(config.functions.size());
    for (const std::string& name : config.functions) {
        functions.push_back(find_interp_function(name));
    }
    const std::size_t n_functions = functions.size();
    const std::size_t n_ks = config.k_values.size();
    const int k_max =
        *std::max_element(config.k_values.begin(), config.k_values.end());

    std::vector<std::vector<double>> pooled(n_functions * n_ks);
    ExperimentResult result;
    result.functions = config.functions;

    for (int run = 0; run < config.runs; ++run) {
        const std::uint64_t run_seed =
            config.base_seed ^ static_cast<std::uint64_t>(run);

        std::vector<Observation> observations;
        if (const auto* synthetic = std::get_if<SyntheticSource>(&config.source)) {
            SyntheticSpec spec;
            spec.n_stations = synthetic->n_stations;
            spec.time_hours = synthetic->fixed_time ? *synthetic->fixed_time
                                                    : static_cast<double>(run);
            spec.seed = run_seed;
            observations = generate_synthetic(spec);
        } else {
            const auto& files = std::get<CsvSource>(config.source).files;
            observations = read_observations_csv(
                files[static_cast<std::size_t>(run) % files.size()]);
        }

        if (static_cast<std::size_t>(config.n_fit) >= observations.size()) {
            std::ostringstream msg;
            msg << "run " << run << ": n_fit (" << config.n_fit
                << ") leaves the holdout empty: the observation set has only "
                << observations.size() << " records";
            throw ValidationError(msg.str());
        }

        RandomStream sampler(derive_seed(run_seed, 1));
        const auto [fit_indices, holdout_indices] =
            split_fit_holdout(observations.size(),
                              static_cast<std::size_t>(config.n_fit), sampler);

        std::vector<Observation> fit;
        fit.reserve(fit_indices.size());
        for (std::uint32_t index : fit_indices) {
            fit.push_back(observations[index]);
        }
        std::vector<GeoCoord> holdout_coords;
        std::vector<double> holdout_values;
        holdout_coords.reserve(holdout_indices.size());
        holdout_values.reserve(holdout_indices.size());
        for (std::uint32_t index : holdout_indices) {
            holdout_coords.push_back(observations[index].coord);
            holdout_values.push_back(observations[index].value);
        }

        const Interpolator interpolator(std::move(fit), config.radius,
                                        config.embedding);
        // One wide neighbor search per run; every k <= k_max reads its exact
        // neighbor set from the row prefixes.
        const NeighborhoodView view =
            interpolator.neighborhoods(holdout_coords, k_max);

        for (std::size_t ki = 0; ki < n_ks; ++ki) {
            const int k = config.k_values[ki];
            for (std::size_t fi = 0; fi < n_functions; ++fi) {
                const std::vector<double> estimates =
                    (*functions[fi])(view, config.radius, k);
                std::vector<double>& pool = pooled[fi * n_ks + ki];
                for (std::size_t p = 0; p < estimates.size(); ++p) {
                    const double error =
                        amerpe(holdout_values[p], estimates[p], config.bounds);
                    pool.push_back(error);
                    if (config.collect_raw) {
                        result.raw.push_back(RawRecord{
                            static_cast<std::uint32_t>(run),
                            static_cast<std::uint32_t>(fi), k,
                            holdout_coords[p].lat, holdout_coords[p].lng,
                            holdout_values[p], estimates[p], error});
                    }
                }
            }
        }
    }

    result.cells.reserve(pooled.size());
    for (std::size_t fi = 0; fi < n_functions; ++fi) {
        for (std::size_t ki = 0; ki < n_ks; ++ki) {
            const std::vector<double>& pool = pooled[fi * n_ks + ki];
            const double total = std::accumulate(pool.begin(), pool.end(), 0.0);
            const double mean = total / static_cast<double>(pool.size());
            const int k = config.k_values[ki];
            const BootstrapCi ci = bootstrap_mean_ci(
                pool, config.bootstrap_samples, config.ci_level,
                derive_seed(config.base_seed,
                            1000 * (static_cast<std::uint64_t>(fi) + 1) +
                                static_cast<std::uint64_t>(k)));
            result.cells.push_back(AmerpeCell{config.functions[fi], k, mean,
                                              ci.low, ci.high, pool.size()});
        }
    }
    return result;
}

}  // namespace sknni
