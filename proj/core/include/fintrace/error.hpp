#pragma once

#include <stdexcept>
#include <string>

namespace fintrace {

// Base for every exception thrown by the library. Algorithmic failures
// (no threshold found, outline rejected) are reported as values instead.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// A file could not be read, decoded, or written.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace fintrace
