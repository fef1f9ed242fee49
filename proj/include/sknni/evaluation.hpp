#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sknni/geodesy.hpp"
#include "sknni/random_stream.hpp"

namespace sknni {

// Value bounds used to express absolute errors as a percentage of the
// attainable range. v_min must be strictly below v_max.
struct AmerpeBounds {
    double v_min = -32.0;
    double v_max = 32.0;
};

// Absolute mean-extrema-relative prediction error for one pair, in percent:
// 100 * |true - predicted| / (v_max - v_min). Not clamped; predictions
// outside the bounds can exceed 100.
double amerpe(double true_value, double predicted_value,
              const AmerpeBounds& bounds);

// Expected absolute deviation of U(lo, hi) noise from its mean, (hi - lo)/4:
// the best mean absolute error any predictor can reach when such noise is
// irreducible. Requires lo < hi.
double expected_min_error(double lo, double hi);

// The error floor for the synthetic field expressed on the AMERPE scale:
// noise U(0, 8) against the [-32, 32] value range gives 100 * 2 / 64 = 3.125.
double amerpe_floor_synthetic();

// Observation source for an experiment: freshly generated synthetic sets
// (one per run; time follows the run index unless fixed), or a pool of
// observation CSV files cycled run by run.
struct SyntheticSource {
    int n_stations = 4000;
    std::optional<double> fixed_time;  // empty: time_hours = run index
};
struct CsvSource {
    std::vector<std::string> files;
};
using DataSource = std::variant<SyntheticSource, CsvSource>;

std::vector<int> default_k_values();  // 1 through 25

// Full description of a holdout evaluation experiment. Each run draws its
// observation set, samples n_fit stations for fitting, interpolates at the
// remaining (holdout) stations, and scores each (function, k) combination
// with AMERPE; errors pool across runs per combination.
struct ExperimentConfig {
    DataSource source = SyntheticSource{};
    int n_fit = 1000;
    int runs = 100;
    std::vector<int> k_values = default_k_values();
    std::vector<std::string> functions{"nddnisd", "nearest", "mean", "median"};
    AmerpeBounds bounds{};
    int bootstrap_samples = 100;
    double ci_level = 0.95;
    std::uint64_t base_seed = 1;
    SphereRadius radius{};
    EmbeddingMode embedding = EmbeddingMode::Standard;
    bool collect_raw = false;  // set by callers wanting per-pair records
};

// Pooled result for one (function, k) combination.
struct AmerpeCell {
    std::string function;
    int k = 0;
    double mean_amerpe = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::size_t n_pairs = 0;
};

// One scored holdout pair, kept only when collect_raw is set.
struct RawRecord {
    std::uint32_t run = 0;
    std::uint32_t function_index = 0;  // into ExperimentResult::functions
    std::int32_t k = 0;
    double lat = 0.0;
    double lng = 0.0;
    double true_value = 0.0;
    double predicted = 0.0;
    double amerpe = 0.0;
};

struct ExperimentResult {
    std::vector<std::string> functions;  // as configured
    std::vector<AmerpeCell> cells;       // function-major, then k, in config order
    std::vector<RawRecord> raw;
};

// Percentile bootstrap confidence interval for the mean of `values`
// (`resamples` resampled means, linear-interpolation percentiles).
struct BootstrapCi {
    double low = 0.0;
    double high = 0.0;
};
BootstrapCi bootstrap_mean_ci(std::span<const double> values, int resamples,
                              double level, std::uint64_t seed);

// Splits [0, n) into a uniformly random fit sample of size n_fit (drawn
// without replacement) and the holdout remainder. The two index lists are
// disjoint and together cover [0, n). Requires 1 <= n_fit < n.
std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>
split_fit_holdout(std::size_t n, std::size_t n_fit, RandomStream& rng);

// Throws ValidationError naming the offending field.
void validate_config(const ExperimentConfig& config);

ExperimentResult run_experiment(const ExperimentConfig& config);

// JSON <-> config (see README for the schema). Unknown fields are rejected
// so typos fail loudly. collect_raw is not part of the document; callers
// set it.
ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

}  // namespace sknni
