#pragma once

#include <stdexcept>
#include <string>

namespace sknni {

// Raised for invalid user input: out-of-domain coordinates, malformed files,
// bad parameter values, inconsistent configs. The CLI maps this to exit
// code 2; any other exception is treated as an internal error (exit 1).
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& message)
        : std::invalid_argument(message) {}
};

}  // namespace sknni
