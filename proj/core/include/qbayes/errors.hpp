#pragma once

#include <stdexcept>
#include <string>

namespace qbayes {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Operand dimensions disagree, or a matrix is not square.
class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& msg) : Error(msg) {}
};

// A matrix fails a state invariant (Hermiticity, trace, positivity).
class InvalidStateError : public Error {
public:
    explicit InvalidStateError(const std::string& msg) : Error(msg) {}
};

class InvalidArgumentError : public Error {
public:
    explicit InvalidArgumentError(const std::string& msg) : Error(msg) {}
};

// A tensor product or expansion would exceed the configured dimension cap.
class CapacityError : public Error {
public:
    explicit CapacityError(const std::string& msg) : Error(msg) {}
};

// A measurement outcome has (numerically) zero probability, so the
// normalized post-measurement state or posterior is undefined.
class ImpossibleOutcomeError : public Error {
public:
    explicit ImpossibleOutcomeError(const std::string& msg) : Error(msg) {}
};

// A prior specification cannot be turned into a normalized ensemble.
class InvalidPriorError : public Error {
public:
    explicit InvalidPriorError(const std::string& msg) : Error(msg) {}
};

// The entropy maximizer found no interior solution (infeasible or
// boundary expectation-value targets).
class NoInteriorSolutionError : public Error {
public:
    explicit NoInteriorSolutionError(const std::string& msg) : Error(msg) {}
};

// Experiment configuration failed validation.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace qbayes
