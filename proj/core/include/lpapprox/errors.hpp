#ifndef LPAPPROX_ERRORS_HPP
#define LPAPPROX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lpapprox {

// Base for everything thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed value or broken structural invariant (bad shape, cyclic graph,
// overlapping cubes, out-of-range parameter). Maps to CLI exit code 2.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Argument outside the mathematical domain of a formula.
class DomainError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// NaN or non-finite value where a real number is required.
class NumericError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Unparseable serialized input; carries a short position hint in the message.
class ParseError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// A caller-supplied callable violated its stated contract
// (non-monotone oracle, non-monotone packing profile, ...).
class ContractError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Request exceeds a configured size cap. Maps to CLI exit code 3.
class CapacityError : public Error {
public:
    using Error::Error;
};

} // namespace lpapprox

#endif
