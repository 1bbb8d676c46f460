#pragma once

#include <stdexcept>
#include <string>

namespace otslab {

// Base of every failure the library reports deliberately. The CLI maps the
// subtree to exit codes: ParseError -> 2, ValidationError family -> 3,
// BudgetExceeded -> 4.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A config, argument, or object shape that violates a stated precondition.
struct ValidationError : Error {
    using Error::Error;
};

struct NegativeWeight : ValidationError {
    using ValidationError::ValidationError;
};

struct WeightsDoNotSumToOne : ValidationError {
    using ValidationError::ValidationError;
};

// Two objects built over different input spaces were combined.
struct SpaceMismatch : ValidationError {
    using ValidationError::ValidationError;
};

struct PreconditionViolated : ValidationError {
    using ValidationError::ValidationError;
};

// The off-training-set renormalizer is undefined: the trained inputs cover
// the whole support of the training distribution. Raised, never defaulted.
struct NoOffTrainingMass : ValidationError {
    using ValidationError::ValidationError;
};

// An enumeration would exceed the configured work cap.
struct BudgetExceeded : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(const std::string& message, int line_number)
        : Error(message + " (line " + std::to_string(line_number) + ")"),
          line(line_number) {}
    int line;
};

}  // namespace otslab
