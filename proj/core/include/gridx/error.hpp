#pragma once

#include <stdexcept>
#include <string>

namespace gridx {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data (files, configs, in-memory values).
class InputError : public Error {
public:
    using Error::Error;
};

/// The planning model cannot be assembled from the given inputs.
class ModelError : public Error {
public:
    using Error::Error;
};

/// Numerical failure inside an LP backend.
class SolverError : public Error {
public:
    using Error::Error;
};

} // namespace gridx
