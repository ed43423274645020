#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace quadrep {

// A modular square root was requested for a quadratic non-residue.
class NoRootError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// The input prime lies outside the residue classes the theorems cover.
class NotRepresentableError : public std::domain_error {
public:
    NotRepresentableError(const std::string& what, std::uint64_t p, unsigned modulus, unsigned residue)
        : std::domain_error(what), p(p), modulus(modulus), residue(residue) {}

    std::uint64_t p;
    unsigned modulus;
    unsigned residue;
};

// A state the underlying number theory proves impossible; always a bug.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Malformed certificate text; carries the 1-based offending line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(what), line(line) {}

    std::size_t line;
};

}  // namespace quadrep
