#pragma once

#include <array>
#include <string>

#include "twistknot/algebra/numbers.hpp"

namespace tk {

// Element of Q[x] / (1 + x + x^2 + x^3 + x^4), stored in the basis 1, x, x^2, x^3.
class Cyclo5 {
 public:
  Cyclo5() = default;
  explicit Cyclo5(std::array<Rational, 4> coords);

  static Cyclo5 one();
  // Image of x^k, any integer k.
  static Cyclo5 power_of_root(long k);

  const std::array<Rational, 4>& coords() const { return coords_; }
  bool is_one() const;

  Cyclo5& operator+=(const Cyclo5& other);
  Cyclo5& operator-=(const Cyclo5& other);
  friend Cyclo5 operator+(Cyclo5 a, const Cyclo5& b) { return a += b; }
  friend Cyclo5 operator-(Cyclo5 a, const Cyclo5& b) { return a -= b; }
  friend Cyclo5 operator*(const Cyclo5& a, const Cyclo5& b);
  friend Cyclo5 operator*(const Rational& s, Cyclo5 a);
  friend bool operator==(const Cyclo5& a, const Cyclo5& b) { return a.coords_ == b.coords_; }

  std::string to_string() const;

 private:
  std::array<Rational, 4> coords_{};
};

}  // namespace tk
