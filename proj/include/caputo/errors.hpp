#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace caputo {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    DomainError(std::string parameter, const std::string& what)
        : std::domain_error(parameter + ": " + what), parameter_(std::move(parameter)) {}

    const std::string& parameter() const noexcept { return parameter_; }

private:
    std::string parameter_;
};

/// Input sequence failed validation at a specific index.
class ValidationError : public std::invalid_argument {
public:
    ValidationError(std::size_t index, const std::string& what)
        : std::invalid_argument("index " + std::to_string(index) + ": " + what), index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// Iterative evaluation did not reach the requested tolerance.
class PrecisionError : public std::runtime_error {
public:
    PrecisionError(const std::string& what, double last_magnitude)
        : std::runtime_error(what), last_magnitude_(last_magnitude) {}

    double last_magnitude() const noexcept { return last_magnitude_; }

private:
    double last_magnitude_;
};

/// Implicit step not solvable: the leading kernel does not dominate kappa.
class StepSizeError : public std::runtime_error {
public:
    StepSizeError(std::size_t level, const std::string& what)
        : std::runtime_error("level " + std::to_string(level) + ": " + what +
                             " (refine the mesh near this level)"),
          level_(level) {}

    std::size_t level() const noexcept { return level_; }

private:
    std::size_t level_;
};

/// Leading DC coefficient a_0 is zero or negative; the DCC recurrence is undefined.
class KernelDegeneracyError : public std::runtime_error {
public:
    KernelDegeneracyError(std::size_t level, const std::string& what)
        : std::runtime_error("level " + std::to_string(level) + ": " + what), level_(level) {}

    std::size_t level() const noexcept { return level_; }

private:
    std::size_t level_;
};

class LinearAlgebraError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class RangeError : public std::range_error {
public:
    using std::range_error::range_error;
};

}  // namespace caputo
