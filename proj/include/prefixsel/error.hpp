#pragma once

#include <stdexcept>
#include <string>

namespace prefixsel {

// Raised for malformed or degenerate input data (CLI exit code 2).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace prefixsel
