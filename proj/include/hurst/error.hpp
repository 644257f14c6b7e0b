#pragma once

#include <stdexcept>
#include <string>

namespace hurst {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input or precondition failure: bad data, bad parameters, too-short series.
/// The CLI maps these to exit code 1; any other exception maps to 2.
class InputError : public Error {
public:
    using Error::Error;
};

} // namespace hurst
