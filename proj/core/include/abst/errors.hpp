#pragma once

#include <stdexcept>
#include <string>

namespace abst {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidDistribution : Error {
    using Error::Error;
};

struct DimensionError : Error {
    using Error::Error;
};

// A codeword collided with another during trie insertion.
struct CorruptCode : Error {
    using Error::Error;
};

struct NotFound : Error {
    using Error::Error;
};

struct InvalidMatching : Error {
    using Error::Error;
};

struct InvalidRequest : Error {
    using Error::Error;
};

struct InvalidArgument : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace abst
