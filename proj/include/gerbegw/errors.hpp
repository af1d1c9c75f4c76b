#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace gerbegw {

/// Base of every error thrown by the library.  The CLI maps the concrete
/// subclasses onto process exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or mathematically invalid input (bad table, non-central
/// element, unstable moduli, ...).
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A configured resource cap (group order, enumeration size) was exceeded.
class CapExceeded : public Error {
public:
    using Error::Error;
};

/// An exact identity that must hold failed to hold.
class VerificationFailure : public Error {
public:
    using Error::Error;
};

/// Internal inconsistency; indicates a bug rather than bad input.
class Defect : public Error {
public:
    using Error::Error;
};

/// Resource caps shared by the group, counting and psi modules.
struct Limits {
    std::size_t max_group_order = 2000;
    std::uint64_t max_enumeration = 100'000'000;
    std::size_t max_memo_entries = 1'000'000;
};

inline const Limits& default_limits()
{
    static const Limits limits{};
    return limits;
}

} // namespace gerbegw
