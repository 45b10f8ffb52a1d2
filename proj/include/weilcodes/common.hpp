// Shared integer aliases and the library error hierarchy.

#ifndef WEILCODES_COMMON_HPP
#define WEILCODES_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace weilcodes {

using u16 = std::uint16_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Exact arbitrary-precision integer used for sum coefficients and moment checks.
using BigInt = boost::multiprecision::cpp_int;

/// Base class of everything thrown by this library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Rejected input: bad parameters, malformed data, incompatible operands.
class InvalidParameter : public Error {
   public:
    using Error::Error;
};

/// Construction would exceed the configured enumeration budget.
class SizeGuardExceeded : public InvalidParameter {
   public:
    using InvalidParameter::InvalidParameter;
};

/// The requested code family is empty for these parameters.
class DegenerateCode : public Error {
   public:
    using Error::Error;
};

/// An internal consistency check failed; indicates a bug, not bad input.
class InternalError : public Error {
   public:
    using Error::Error;
};

}  // namespace weilcodes

#endif  // WEILCODES_COMMON_HPP
