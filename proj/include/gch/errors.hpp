#pragma once

#include <stdexcept>
#include <string>

namespace gch {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Bad user input: malformed files, unknown ids, violated preconditions.
class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error(what) {}
};

/// A computation was refused because it exceeds a configured resource cap.
class ResourceError : public Error {
public:
    explicit ResourceError(const std::string& what) : Error(what) {}
};

} // namespace gch
