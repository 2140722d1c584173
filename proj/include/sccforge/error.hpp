#pragma once

#include <stdexcept>
#include <string>

namespace sccforge {

// Base for every error thrown by the library. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// Work would exceed a configured size bound.
class ResourceError : public Error {
public:
    using Error::Error;
};

// Valid input the implementation cannot handle (e.g. a code with no board wiring).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

class FitError : public Error {
public:
    using Error::Error;
};

// Measured output that the equivalent-circuit model cannot explain.
class InconsistentMeasurement : public Error {
public:
    using Error::Error;
};

}  // namespace sccforge
