#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "sknni/geodesy.hpp"

namespace sknni {

// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double value);

// Observation files: header "lat,lng,value", one record per line, period
// decimal separator, no quoting. Readers validate coordinates and finiteness
// and report errors as "<path>:<line>: <reason>".
std::vector<Observation> read_observations_csv(const std::filesystem::path& path);
// Query files: header "lat,lng".
std::vector<GeoCoord> read_queries_csv(const std::filesystem::path& path);

// Data-bearing writes use round-trip formatting: reading back yields
// bit-identical values.
void write_observations_csv(const std::filesystem::path& path,
                            std::span<const Observation> observations);
void write_queries_csv(const std::filesystem::path& path,
                       std::span<const GeoCoord> queries);

// Interpolation results are display output and use 6 fixed decimals.
void write_interpolation_csv(const std::filesystem::path& path,
                             std::span<const Observation> results);

}  // namespace sknni
