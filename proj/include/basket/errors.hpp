#pragma once

#include <stdexcept>
#include <string>

namespace basket {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error {
    using Error::Error;
};

struct WeightSumError : Error {
    using Error::Error;
};

struct CorrelationMatrixError : Error {
    using Error::Error;
};

struct ConvergenceError : Error {
    using Error::Error;
};

struct AssumptionViolation : Error {
    using Error::Error;
};

struct SingularMatrixError : Error {
    using Error::Error;
};

struct NegativeCorrelationError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace basket
