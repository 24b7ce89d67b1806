#pragma once

#include <stdexcept>
#include <string>

namespace eigenshape {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad arguments, inadmissible parameters or malformed input files.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// The weight admits no positive principal eigenvalue (for instance a
/// Neumann problem whose weight has nonnegative mean).
class NoPositiveEigenvalue : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// A solver failed: factorization breakdown, no bracket, lost positivity.
class NumericFailure : public Error {
public:
    using Error::Error;
};

class AssemblyFailure : public Error {
public:
    AssemblyFailure(const std::string& what, int element)
        : Error(what + " (element " + std::to_string(element) + ")"), element_(element) {}

    int element() const noexcept { return element_; }

private:
    int element_;
};

} // namespace eigenshape
