#pragma once

#include <stdexcept>
#include <string>

namespace skg {

// Malformed or inconsistent input data (files, configs, indexes).
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Non-finite values, divergence, shape mismatches in numeric code.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace skg
