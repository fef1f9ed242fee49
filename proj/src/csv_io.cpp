#include "sknni/csv_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

#include "sknni/errors.hpp"

namespace sknni {

std::string format_double(double value) {
    std::array<char, 64> buffer{};
    const auto [end, ec] =
        std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    return std::string(buffer.data(), end);
}

namespace {

[[noreturn]] void line_error(const std::filesystem::path& path, std::size_t line,
                             const std::string& reason) {
    std::ostringstream msg;
    msg << path.string() << ":" << line << ": " << reason;
    throw ValidationError(msg.str());
}

double parse_field(const std::filesystem::path& path, std::size_t line,
                   std::string_view token, const char* field) {
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        std::ostringstream reason;
        reason << "cannot parse " << field << " value '" << token << "'";
        line_error(path, line, reason.str());
    }
    return value;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

// Opens the file, checks the exact header, and hands each nonempty record
// line (CR stripped) with its 1-based line number to `consume`.
template <typename Consumer>
void read_csv(const std::filesystem::path& path, std::string_view header,
              Consumer&& consume) {
    std::ifstream input(path);
    if (!input) {
        throw ValidationError("cannot open file: " + path.string());
    }
    std::string line;
    if (!std::getline(input, line)) {
        line_error(path, 1, std::string("expected header '") + std::string(header) +
                                "' in an empty file");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != header) {
        line_error(path, 1, "expected header '" + std::string(header) + "', got '" +
                                line + "'");
    }
    std::size_t line_number = 1;
    while (std::getline(input, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        consume(line_number, std::string_view(line));
    }
}

void check_field_count(const std::filesystem::path& path, std::size_t line,
                       std::size_t got, std::size_t want) {
    if (got != want) {
        std::ostringstream reason;
        reason << "expected " << want << " comma-separated fields, got " << got;
        line_error(path, line, reason.str());
    }
}

}  // namespace

std::vector<Observation> read_observations_csv(const std::filesystem::path& path) {
    std::vector<Observation> observations;
    read_csv(path, "lat,lng,value", [&](std::size_t line_number, std::string_view line) {
        const auto fields = split_fields(line);
        check_field_count(path, line_number, fields.size(), 3);
        const double lat = parse_field(path, line_number, fields[0], "lat");
        const double lng = parse_field(path, line_number, fields[1], "lng");
        const double value = parse_field(path, line_number, fields[2], "value");
        try {
            normalize_coord(lat, lng);  // domain check only; keep values as written
        } catch (const ValidationError& error) {
            line_error(path, line_number, error.what());
        }
        if (!std::isfinite(value)) {
            line_error(path, line_number, "value must be finite");
        }
        observations.push_back(Observation{GeoCoord{lat, lng}, value});
    });
    return observations;
}

std::vector<GeoCoord> read_queries_csv(const std::filesystem::path& path) {
    std::vector<GeoCoord> queries;
    read_csv(path, "lat,lng", [&](std::size_t line_number, std::string_view line) {
        const auto fields = split_fields(line);
        check_field_count(path, line_number, fields.size(), 2);
        const double lat = parse_field(path, line_number, fields[0], "lat");
        const double lng = parse_field(path, line_number, fields[1], "lng");
        try {
            normalize_coord(lat, lng);
        } catch (const ValidationError& error) {
            line_error(path, line_number, error.what());
        }
        queries.push_back(GeoCoord{lat, lng});
    });
    return queries;
}

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream output(path);
    if (!output) {
        throw ValidationError("cannot write file: " + path.string());
    }
    return output;
}

}  // namespace

void write_observations_csv(const std::filesystem::path& path,
                            std::span<const Observation> observations) {
    std::ofstream output = open_for_write(path);
    output << "lat,lng,value\n";
    for (const Observation& obs : observations) {
        output << format_double(obs.coord.lat) << ',' << format_double(obs.coord.lng)
               << ',' << format_double(obs.value) << '\n';
    }
}

void write_queries_csv(const std::filesystem::path& path,
                       std::span<const GeoCoord> queries) {
    std::ofstream output = open_for_write(path);
    output << "lat,lng\n";
    for (const GeoCoord& coord : queries) {
        output << format_double(coord.lat) << ',' << format_double(coord.lng) << '\n';
    }
}

void write_interpolation_csv(const std::filesystem::path& path,
                             std::span<const Observation> results) {
    std::ofstream output = open_for_write(path);
    output << "lat,lng,value\n";
    std::array<char, 80> buffer{};
    for (const Observation& obs : results) {
        std::snprintf(buffer.data(), buffer.size(), "%.6f,%.6f,%.6f", obs.coord.lat,
                      obs.coord.lng, obs.value);
        output << buffer.data() << '\n';
    }
}

}  // namespace sknni
