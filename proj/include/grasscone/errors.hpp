/**
 * @file errors.hpp
 * @brief Exception hierarchy. The CLI maps each family to an exit code.
 */

#ifndef GRASSCONE_ERRORS_HPP
#define GRASSCONE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace grasscone {

/// Malformed or inconsistent input (CLI exit code 2).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

class DimensionMismatch : public ValidationError {
public:
    explicit DimensionMismatch(const std::string& what) : ValidationError("dimension mismatch: " + what) {}
};

/// Well-formed input that fails a mathematical hypothesis (CLI exit code 3).
class PreconditionError : public std::runtime_error {
public:
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * Semistability cannot be decided from (r, c1, c2) alone. Raised when no
 * summand data is present and the caller did not vouch for semistability.
 */
class SemistabilityUnknown : public PreconditionError {
public:
    explicit SemistabilityUnknown(const std::string& what) : PreconditionError(what) {}
};

}  // namespace grasscone

#endif  // GRASSCONE_ERRORS_HPP
