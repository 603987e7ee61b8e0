#pragma once

// Exact rational coefficients. Overflow of the underlying 64-bit integers
// throws instead of wrapping.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/rational.hpp>
#include <boost/safe_numerics/safe_integer.hpp>

namespace cohft {

using Integer = boost::safe_numerics::safe<std::int64_t>;
using Rational = boost::rational<Integer>;

/// Malformed input: wrong shapes, indices out of range, bad tokens.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A well-formed request outside the domain of an operation (unstable (g,n), ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Accepts "p", "-p", "p/q". Throws StructuralError on anything else.
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

inline bool is_zero(const Rational& value) { return value.numerator() == 0; }

}  // namespace cohft
