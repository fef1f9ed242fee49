#include <fstream>
#include <sstream>
#include <string>
#include <unordered_set>

#include "json.hpp"
#include "sknni/errors.hpp"
#include "sknni/evaluation.hpp"

namespace sknni {

namespace {

using nlohmann::json;

[[noreturn]] void field_error(const std::string& field, const std::string& reason) {
    throw ValidationError("config field '" + field + "' " + reason);
}

void check_keys(const json& object, const std::string& scope,
                const std::unordered_set<std::string>& allowed) {
    for (const auto& item : object.items()) {
        if (!allowed.contains(item.key())) {
            const std::string name =
                scope.empty() ? item.key() : scope + "." + item.key();
            throw ValidationError("unknown config field '" + name + "'");
        }
    }
}

int get_int(const json& value, const std::string& field) {
    if (!value.is_number_integer()) {
        field_error(field, "must be an integer");
    }
    return value.get<int>();
}

double get_number(const json& value, const std::string& field) {
    if (!value.is_number()) {
        field_error(field, "must be a number");
    }
    return value.get<double>();
}

std::uint64_t get_seed(const json& value, const std::string& field) {
    if (value.is_number_unsigned()) {
        return value.get<std::uint64_t>();
    }
    if (value.is_number_integer() && value.get<std::int64_t>() >= 0) {
        return static_cast<std::uint64_t>(value.get<std::int64_t>());
    }
    field_error(field, "must be a nonnegative integer");
}

std::string get_string(const json& value, const std::string& field) {
    if (!value.is_string()) {
        field_error(field, "must be a string");
    }
    return value.get<std::string>();
}

DataSource parse_source(const json& value) {
    if (!value.is_object()) {
        field_error("source", "must be an object with a 'type'");
    }
    if (!value.contains("type")) {
        field_error("source.type", "is required");
    }
    const std::string type = get_string(value.at("type"), "source.type");
    if (type == "synthetic") {
        check_keys(value, "source", {"type", "n_stations", "time"});
        SyntheticSource source;
        if (value.contains("n_stations")) {
            source.n_stations = get_int(value.at("n_stations"), "source.n_stations");
        }
        if (value.contains("time")) {
            const json& time = value.at("time");
            if (time.is_number()) {
                source.fixed_time = time.get<double>();
            } else if (time.is_string() && time.get<std::string>() == "auto") {
                source.fixed_time.reset();
            } else {
                field_error("source.time", "must be a number or \"auto\"");
            }
        }
        return source;
    }
    if (type == "csv") {
        check_keys(value, "source", {"type", "files"});
        if (!value.contains("files") || !value.at("files").is_array() ||
            value.at("files").empty()) {
            field_error("source.files", "must be a nonempty array of file paths");
        }
        CsvSource source;
        for (const json& entry : value.at("files")) {
            source.files.push_back(get_string(entry, "source.files"));
        }
        return source;
    }
    field_error("source.type", "must be 'synthetic' or 'csv'");
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& error) {
        throw ValidationError(std::string("config is not valid JSON: ") + error.what());
    }
    if (!doc.is_object()) {
        throw ValidationError("config must be a JSON object");
    }
    check_keys(doc, "",
               {"source", "n_fit", "runs", "k_values", "functions", "bounds",
                "bootstrap_samples", "ci_level", "base_seed", "radius", "embedding"});

    ExperimentConfig config;
    bool bounds_given = false;

    if (doc.contains("source")) {
        config.source = parse_source(doc.at("source"));
    }
    if (doc.contains("n_fit")) {
        config.n_fit = get_int(doc.at("n_fit"), "n_fit");
    }
    if (doc.contains("runs")) {
        config.runs = get_int(doc.at("runs"), "runs");
    }
    if (doc.contains("k_values")) {
        if (!doc.at("k_values").is_array() || doc.at("k_values").empty()) {
            field_error("k_values", "must be a nonempty array of integers");
        }
        config.k_values.clear();
        for (const json& entry : doc.at("k_values")) {
            config.k_values.push_back(get_int(entry, "k_values"));
        }
    }
    if (doc.contains("functions")) {
        if (!doc.at("functions").is_array() || doc.at("functions").empty()) {
            field_error("functions", "must be a nonempty array of names");
        }
        config.functions.clear();
        for (const json& entry : doc.at("functions")) {
            config.functions.push_back(get_string(entry, "functions"));
        }
    }
    if (doc.contains("bounds")) {
        const json& bounds = doc.at("bounds");
        if (!bounds.is_object() || !bounds.contains("min") || !bounds.contains("max")) {
            field_error("bounds", "must be an object with 'min' and 'max'");
        }
        check_keys(bounds, "bounds", {"min", "max"});
        config.bounds.v_min = get_number(bounds.at("min"), "bounds.min");
        config.bounds.v_max = get_number(bounds.at("max"), "bounds.max");
        bounds_given = true;
    }
    if (doc.contains("bootstrap_samples")) {
        config.bootstrap_samples =
            get_int(doc.at("bootstrap_samples"), "bootstrap_samples");
    }
    if (doc.contains("ci_level")) {
        config.ci_level = get_number(doc.at("ci_level"), "ci_level");
    }
    if (doc.contains("base_seed")) {
        config.base_seed = get_seed(doc.at("base_seed"), "base_seed");
    }
    if (doc.contains("radius")) {
        const double radius = get_number(doc.at("radius"), "radius");
        try {
            config.radius = SphereRadius(radius);
        } catch (const ValidationError& error) {
            field_error("radius", error.what());
        }
    }
    if (doc.contains("embedding")) {
        const std::string mode = get_string(doc.at("embedding"), "embedding");
        if (mode == "standard") {
            config.embedding = EmbeddingMode::Standard;
        } else if (mode == "paper") {
            config.embedding = EmbeddingMode::PaperFaithful;
        } else {
            field_error("embedding", "must be 'standard' or 'paper'");
        }
    }

    if (std::holds_alternative<CsvSource>(config.source) && !bounds_given) {
        field_error("bounds",
                    "is required for csv sources (value extrema are not implied)");
    }
    return config;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
    std::ifstream input(path);
    if (!input) {
        throw ValidationError("cannot open config file: " + path.string());
    }
    std::ostringstream text;
    text << input.rdbuf();
    return parse_experiment_config(text.str());
}

}  // namespace sknni
