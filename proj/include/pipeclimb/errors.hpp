#pragma once

#include <stdexcept>
#include <string>

namespace pipeclimb {

/// Base class for all pipeclimb errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid value in a configuration, argument, or precondition.
class ParameterError : public Error {
public:
    explicit ParameterError(const std::string& what) : Error(what) {}
};

/// Query outside the valid domain (coordinate past the network end,
/// spring compression past its travel, ...).
class RangeError : public Error {
public:
    explicit RangeError(const std::string& what) : Error(what) {}
};

/// The constraint network admits no solution (e.g. all outputs locked
/// while the input turns).
class InfeasibleError : public Error {
public:
    explicit InfeasibleError(const std::string& what) : Error(what) {}
};

/// Iterative solve did not converge within its iteration cap.
class SolverError : public Error {
public:
    explicit SolverError(const std::string& what) : Error(what) {}
};

} // namespace pipeclimb
