// Command-line front end: batch interpolation, synthetic data generation,
// query-grid generation, and the holdout evaluation harness.
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sknni/csv_io.hpp"
#include "sknni/errors.hpp"
#include "sknni/evaluation.hpp"
#include "sknni/geodesy.hpp"
#include "sknni/interp_functions.hpp"
#include "sknni/interpolation.hpp"
#include "sknni/synthetic.hpp"

namespace {

using namespace sknni;

EmbeddingMode parse_embedding(const std::string& name) {
    if (name == "standard") {
        return EmbeddingMode::Standard;
    }
    if (name == "paper") {
        return EmbeddingMode::PaperFaithful;
    }
    throw ValidationError("--embedding must be 'standard' or 'paper', got '" + name +
                          "'");
}

struct InterpolateOptions {
    std::string observations;
    std::string queries;
    std::string output;
    int k = kDefaultNeighbors;
    std::string fn = "nddnisd";
    double radius = kEarthRadiusKm;
    std::string embedding = "standard";
};

void run_interpolate(const InterpolateOptions& options) {
    const InterpFunction* fn = find_interp_function(options.fn);
    if (fn == nullptr) {
        std::ostringstream msg;
        msg << "unknown interpolation function '" << options.fn << "' (known:";
        for (std::string_view name : interp_function_names()) {
            msg << " " << name;
        }
        msg << ")";
        throw ValidationError(msg.str());
    }
    std::vector<Observation> observations = read_observations_csv(options.observations);
    const std::vector<GeoCoord> queries = read_queries_csv(options.queries);
    const Interpolator interpolator(std::move(observations), SphereRadius(options.radius),
                                    parse_embedding(options.embedding));
    const std::vector<Observation> results =
        interpolator.interpolate(queries, options.k, *fn);
    write_interpolation_csv(options.output, results);
}

struct SynthOptions {
    int n = 0;
    int runs = 1;
    std::uint64_t seed = 1;
    std::string time = "auto";
    std::string output;
};

void run_synth(const SynthOptions& options) {
    if (options.runs < 1) {
        std::ostringstream msg;
        msg << "--runs must be at least 1, got " << options.runs;
        throw ValidationError(msg.str());
    }
    bool auto_time = options.time == "auto";
    double fixed_time = 0.0;
    if (!auto_time) {
        const auto [ptr, ec] = std::from_chars(
            options.time.data(), options.time.data() + options.time.size(), fixed_time);
        if (ec != std::errc{} || ptr != options.time.data() + options.time.size() ||
            !std::isfinite(fixed_time)) {
            throw ValidationError("--time must be a finite number or 'auto', got '" +
                                  options.time + "'");
        }
    }
    std::filesystem::create_directories(options.output);
    for (int run = 0; run < options.runs; ++run) {
        SyntheticSpec spec;
        spec.n_stations = options.n;
        spec.time_hours = auto_time ? static_cast<double>(run) : fixed_time;
        spec.seed = options.seed ^ static_cast<std::uint64_t>(run);
        const std::vector<Observation> observations = generate_synthetic(spec);
        const std::filesystem::path file =
            std::filesystem::path(options.output) / ("run_" + std::to_string(run) + ".csv");
        write_observations_csv(file, observations);
    }
}

struct GridOptions {
    double lat_step = 0.0;
    double lng_step = 0.0;
    std::string output;
};

void run_grid(const GridOptions& options) {
    if (!std::isfinite(options.lat_step) || options.lat_step <= 0.0) {
        std::ostringstream msg;
        msg << "--lat-step must be a positive number, got " << options.lat_step;
        throw ValidationError(msg.str());
    }
    if (!std::isfinite(options.lng_step) || options.lng_step <= 0.0) {
        std::ostringstream msg;
        msg << "--lng-step must be a positive number, got " << options.lng_step;
        throw ValidationError(msg.str());
    }
    std::vector<GeoCoord> grid;
    // Latitude rows are centered inside their step-wide bands; longitudes
    // start on -180 (the canonical seam). Multiplying instead of repeatedly
    // adding keeps long grids free of accumulated drift.
    for (std::size_t i = 0;; ++i) {
        const double lat =
            -90.0 + options.lat_step / 2.0 + static_cast<double>(i) * options.lat_step;
        if (lat >= 90.0) {
            break;
        }
        for (std::size_t j = 0;; ++j) {
            const double lng = -180.0 + static_cast<double>(j) * options.lng_step;
            if (lng >= 180.0) {
                break;
            }
            grid.push_back(GeoCoord{lat, lng});
        }
    }
    write_queries_csv(options.output, grid);
}

struct EvaluateOptions {
    std::string config;
    std::string output;
    std::string raw;
};

void run_evaluate(const EvaluateOptions& options) {
    ExperimentConfig config = load_experiment_config(options.config);
    config.collect_raw = !options.raw.empty();
    const ExperimentResult result = run_experiment(config);

    {
        std::ofstream output(options.output);
        if (!output) {
            throw ValidationError("cannot write file: " + options.output);
        }
        output << "function,k,mean_amerpe,ci_low,ci_high,n_pairs\n";
        for (const AmerpeCell& cell : result.cells) {
            output << cell.function << ',' << cell.k << ','
                   << format_double(cell.mean_amerpe) << ',' << format_double(cell.ci_low)
                   << ',' << format_double(cell.ci_high) << ',' << cell.n_pairs << '\n';
        }
    }
    if (!options.raw.empty()) {
        std::ofstream output(options.raw);
        if (!output) {
            throw ValidationError("cannot write file: " + options.raw);
        }
        output << "run,function,k,lat,lng,true_value,predicted,amerpe\n";
        for (const RawRecord& record : result.raw) {
            output << record.run << ',' << result.functions[record.function_index] << ','
                   << record.k << ',' << format_double(record.lat) << ','
                   << format_double(record.lng) << ',' << format_double(record.true_value)
                   << ',' << format_double(record.predicted) << ','
                   << format_double(record.amerpe) << '\n';
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse spherical k-nearest-neighbor interpolation toolkit"};
    app.require_subcommand(1);

    InterpolateOptions interpolate_options;
    CLI::App* interpolate = app.add_subcommand(
        "interpolate", "Interpolate observation values at query coordinates");
    interpolate->add_option("--observations", interpolate_options.observations,
                            "Observation CSV (lat,lng,value)")->required();
    interpolate->add_option("--queries", interpolate_options.queries,
                            "Query CSV (lat,lng)")->required();
    interpolate->add_option("--output", interpolate_options.output,
                            "Result CSV path")->required();
    interpolate->add_option("--k", interpolate_options.k,
                            "Neighbors per query (clamped to the observation count)");
    interpolate->add_option("--fn", interpolate_options.fn,
                            "Interpolation function: nddnisd, nearest, mean, median");
    interpolate->add_option("--radius", interpolate_options.radius,
                            "Sphere radius (default: mean Earth radius in km)");
    interpolate->add_option("--embedding", interpolate_options.embedding,
                            "Spatial embedding: standard or paper");
    interpolate->callback([&] { run_interpolate(interpolate_options); });

    SynthOptions synth_options;
    CLI::App* synth =
        app.add_subcommand("synth", "Generate synthetic observation sets");
    synth->add_option("--n", synth_options.n, "Stations per run")->required();
    synth->add_option("--runs", synth_options.runs, "Number of sets to generate");
    synth->add_option("--seed", synth_options.seed, "Base seed (run r uses seed XOR r)");
    synth->add_option("--time", synth_options.time,
                      "Field time in hours, or 'auto' for the run index");
    synth->add_option("--output", synth_options.output,
                      "Directory for run_<r>.csv files")->required();
    synth->callback([&] { run_synth(synth_options); });

    GridOptions grid_options;
    CLI::App* grid =
        app.add_subcommand("grid", "Generate a regular global query grid");
    grid->add_option("--lat-step", grid_options.lat_step,
                     "Latitude step in degrees")->required();
    grid->add_option("--lng-step", grid_options.lng_step,
                     "Longitude step in degrees")->required();
    grid->add_option("--output", grid_options.output, "Query CSV path")->required();
    grid->callback([&] { run_grid(grid_options); });

    EvaluateOptions evaluate_options;
    CLI::App* evaluate = app.add_subcommand(
        "evaluate", "Run a holdout evaluation experiment from a JSON config");
    evaluate->add_option("--config", evaluate_options.config,
                         "Experiment config JSON")->required();
    evaluate->add_option("--output", evaluate_options.output,
                         "Pooled results CSV path")->required();
    evaluate->add_option("--raw", evaluate_options.raw,
                         "Optional per-pair records CSV path");
    evaluate->callback([&] { run_evaluate(evaluate_options); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
