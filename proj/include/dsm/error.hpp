#pragma once

#include <stdexcept>
#include <string>

namespace dsm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a function (non-finite input, x <= 0 for Y_n, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Kernel evaluated at a singular configuration (coincident points).
class SingularityError : public Error {
public:
    using Error::Error;
};

/// Measurement data that cannot be normalized (all-zero samples).
class DegenerateDataError : public Error {
public:
    using Error::Error;
};

/// Dense solve failed or the system is numerically singular.
class SolverError : public Error {
public:
    SolverError(const std::string& what, double rcond) : Error(what), rcond_(rcond) {}
    double rcond() const noexcept { return rcond_; }

private:
    double rcond_;
};

/// Malformed configuration or command line.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace dsm
