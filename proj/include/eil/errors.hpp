#pragma once

#include <stdexcept>
#include <string>

namespace eil {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct SingularMatrix : Error {
    using Error::Error;
};

struct EntryOutOfBox : Error {
    using Error::Error;
};

struct ParityMismatch : Error {
    using Error::Error;
};

struct NotNormalized : Error {
    using Error::Error;
};

struct UnsupportedOrder : Error {
    using Error::Error;
};

struct OrderTooLarge : Error {
    using Error::Error;
};

// A mathematical identity that is a theorem failed to check out.
// Signals an implementation bug, never bad input data.
struct IdentityViolated : Error {
    using Error::Error;
};

// The norm equality held but a step of the equality characterization failed.
struct ChainBroken : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct InvalidArgument : Error {
    using Error::Error;
};

} // namespace eil
