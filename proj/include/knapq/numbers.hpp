#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace knapq {

// Weights and capacities are arbitrary-precision integers; profits and
// limits are exact rationals. No floating point anywhere.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Parses "p/q" (q >= 1) or a plain integer "p". Throws ParseError.
Rat parse_rational(std::string_view text);

// Canonical "p/q" with q >= 1 and gcd(p, q) = 1.
std::string format_rational(const Rat& value);

// Decimal integer string, optional leading '-'. Throws ParseError.
Int parse_decimal(std::string_view text);

// Number of decimal digits of |value| (1 for zero).
int decimal_digits(const Int& value);

// Largest m with m*m <= value. Requires value >= 0.
Int isqrt_floor(const Int& value);

// Common integer grid for a rational vector: values[i] * denominator is an
// integer for every i. Used to run weight-indexed DPs on integer profits.
struct ScaledInts {
  Int denominator;
  std::vector<Int> values;
  bool fits_int64 = false;          // every value and every partial sum
  std::vector<std::int64_t> small;  // filled iff fits_int64
};
ScaledInts scale_to_integers(const std::vector<Rat>& values);

}  // namespace knapq
