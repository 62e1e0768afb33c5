#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace gcm {

/// Exact scalar used by every analytic computation. Values produced by
/// arithmetic are always in lowest terms with a positive denominator; a
/// Rational(num, den) built by hand is not, and is reduced where the library
/// stores it.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational canonical(Rational q) {
  q.canonicalize();
  return q;
}

/// Raised on violated preconditions (bad orders, short moment sequences,
/// malformed variable orderings, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Parses "7/3", "-2", "0.125" or "1.5e-2" into an exact rational.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);

/// base^exponent, negative exponents allowed for nonzero base.
Rational power(const Rational& base, long exponent);

}  // namespace gcm
