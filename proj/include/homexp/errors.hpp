#pragma once

#include <stdexcept>
#include <string>

namespace homexp {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed space expression; position is a byte offset into the input.
struct ParseError : Error {
    ParseError(const std::string& what, std::size_t pos)
        : Error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
    std::size_t position;
};

// Structurally invalid space, or a space/prime mismatch.
struct ValidationError : Error {
    using Error::Error;
};

// Arguments outside an operation's domain, e.g. nu(p, 0).
struct DomainError : Error {
    using Error::Error;
};

// Queries the tool deliberately does not answer (the torsion pairs at p = 3).
struct OutOfScopeError : Error {
    using Error::Error;
};

}  // namespace homexp
