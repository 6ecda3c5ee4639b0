#pragma once

#include <stdexcept>
#include <string>

namespace pla {

// Invalid argument to a library operation (length mismatch, bad range, ...).
class parameter_error : public std::runtime_error {
public:
    explicit parameter_error(const std::string& what) : std::runtime_error(what) {}
};

// Operation requires an enumerable instance (e.g. key space small enough for
// exhaustive search) and the given one is not.
class capability_error : public std::runtime_error {
public:
    explicit capability_error(const std::string& what) : std::runtime_error(what) {}
};

// Threshold calibration could not reach the requested false-alarm target.
class calibration_error : public std::runtime_error {
public:
    explicit calibration_error(const std::string& what) : std::runtime_error(what) {}
};

// Quadrature / root finding failed to converge or bracket.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed experiment configuration.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pla
