#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace paracoh {

// Base for every error raised by the library. CLI maps it to a nonzero exit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input file. `where` is a line number, row number or byte offset,
// depending on the format.
class ParseError : public Error {
public:
    ParseError(std::string file, std::string where, const std::string& what)
        : Error(file + ":" + where + ": " + what),
          file_(std::move(file)),
          where_(std::move(where)) {}

    const std::string& file() const { return file_; }
    const std::string& where() const { return where_; }

private:
    std::string file_;
    std::string where_;
};

// A required resource (file, directory, model) is missing or unusable.
class ResourceError : public Error {
public:
    using Error::Error;
};

// Caller violated an operation's precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

}  // namespace paracoh
