#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cfp {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Index out of range, dimension mismatch, parameter outside its domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A metric or order axiom fails on a finite space. The witness holds the
/// point indices of the violating pair or triple.
class AxiomError : public Error {
public:
    AxiomError(std::string axiom, std::vector<std::size_t> witness, const std::string& what)
        : Error(what), axiom_(std::move(axiom)), witness_(std::move(witness)) {}

    const std::string& axiom() const noexcept { return axiom_; }
    const std::vector<std::size_t>& witness() const noexcept { return witness_; }

private:
    std::string axiom_;
    std::vector<std::size_t> witness_;
};

/// An expression map produced a value outside its box.
class OutOfSpaceError : public Error {
public:
    using Error::Error;
};

/// Malformed expression or instance text. `where` is a field path or a
/// character offset, whichever locates the problem.
class ParseError : public Error {
public:
    ParseError(std::string where, const std::string& what)
        : Error(where.empty() ? what : where + ": " + what), where_(std::move(where)) {}

    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

/// Caller broke an operation's precondition (e.g. a chain query with a > b).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A sampled check found nothing to test (e.g. epsilon below the grid resolution).
class DegenerateSampleError : public Error {
public:
    using Error::Error;
};

} // namespace cfp
