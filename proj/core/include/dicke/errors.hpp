#pragma once

#include <stdexcept>
#include <string>

namespace dicke {

/// Base class for all errors raised by the core library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input: bad sizes, parity violations, unnormalized states,
/// mode mismatches, out-of-range parameters.
class InvalidArgumentError : public Error {
public:
    using Error::Error;
};

/// The requested detector arrangement does not exist for the given
/// spacing/wavelength ratio.
class GeometryInfeasibleError : public Error {
public:
    using Error::Error;
};

/// A state with (numerically) zero norm was produced where a physical
/// outcome was required. For a heralding protocol this means the chosen
/// polarizer pattern interferes destructively at the given geometry.
class ZeroNormError : public Error {
public:
    using Error::Error;
};

/// A detection operator was applied to a register with no excitations left.
class ProtocolOverrunError : public Error {
public:
    using Error::Error;
};

}  // namespace dicke
