#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cpe {

/// Evaluation requested outside the parameter domain [0,1]^d.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Least-squares fit could not be solved; axis() names the offending dimension.
class FitError : public std::runtime_error {
public:
    FitError(std::size_t axis, const std::string& what)
        : std::runtime_error("axis " + std::to_string(axis) + ": " + what), axis_(axis) {}

    std::size_t axis() const noexcept { return axis_; }

private:
    std::size_t axis_;
};

/// Malformed model, grid, or critical-point file.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnsupportedDimension : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Hessian too close to singular to assign a Morse index.
class ClassificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cpe
