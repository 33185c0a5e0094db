#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace qip {

/// Exact rational number (arbitrary precision, always canonical).
using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "p", "-p", "+p" or "p/q" (q > 0 after sign handling). Returns
/// nullopt on any malformed literal or a zero denominator.
std::optional<Rational> parse_rational(std::string_view text);

/// Canonical text: reduced, no denominator when integral.
std::string to_string(const Rational& value);

/// Least common multiple of the denominators of a range of rationals.
template <class Range>
BigInt common_denominator(const Range& values) {
  BigInt lcm = 1;
  for (const Rational& v : values) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
  }
  return lcm;
}

}  // namespace qip
