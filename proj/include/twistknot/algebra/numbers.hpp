#pragma once

#include <gmpxx.h>

#include <string>

namespace tk {

// Arbitrary-precision integers and reduced rationals (denominator > 0).
using Integer = mpz_class;
using Rational = mpq_class;

std::string to_string(const Integer& value);
std::string to_string(const Rational& value);

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Falling factorial x (x - 1) ... (x - k + 1).
Rational falling_factorial(const Rational& x, int k);

Integer factorial(int n);
Integer binomial(int n, int k);

}  // namespace tk
