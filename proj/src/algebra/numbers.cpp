#include "twistknot/algebra/numbers.hpp"

#include <stdexcept>

namespace tk {

std::string to_string(const Integer& value) { return value.get_str(); }

std::string to_string(const Rational& value) { return value.get_str(); }

Rational falling_factorial(const Rational& x, int k) {
  Rational result = 1;
  for (int q = 0; q < k; ++q) result *= x - q;
  return result;
}

Integer factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial of negative number");
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

Integer binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

}  // namespace tk
