#pragma once

#include <stdexcept>
#include <string>

namespace maxdet {

// Thrown when an exact cross-check that should hold by construction fails,
// or when imported data does not satisfy its claimed properties.
class VerificationError : public std::runtime_error {
public:
    explicit VerificationError(const std::string& what_arg)
        : std::runtime_error(what_arg) {}
};

// Thrown on malformed matrix files and malformed generator expressions.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what_arg)
        : std::runtime_error(what_arg) {}
};

}  // namespace maxdet
