#pragma once

#include <stdexcept>
#include <string>

namespace ffmzv {

// Every contract failure surfaces as one of these; nothing else is thrown
// from library code on valid inputs.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad field parameters: non-prime characteristic, reducible modulus, ...
struct ConfigError : Error {
    using Error::Error;
};

struct DivisionByZero : Error {
    using Error::Error;
};

// A documented precondition was violated by the caller.
struct ContractViolation : Error {
    using Error::Error;
};

// Operation requires a non-basis tuple (or vice versa).
struct NotReducible : Error {
    using Error::Error;
};

// A feasibility guard tripped (enumeration too large, weight too big, ...).
struct ResourceLimit : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

}  // namespace ffmzv
