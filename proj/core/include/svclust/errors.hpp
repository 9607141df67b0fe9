#pragma once

#include <stdexcept>
#include <string>

namespace svclust {

/// Raised for invalid configuration, malformed input files, or bad arguments.
/// CLI maps this to exit code 2.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised for failures at run time (solver non-convergence, corrupt model
/// files, unwritable outputs). CLI maps this to exit code 1.
class runtime_error : public std::runtime_error {
public:
    explicit runtime_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace svclust
