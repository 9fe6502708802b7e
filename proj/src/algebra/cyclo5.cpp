#include "twistknot/algebra/cyclo5.hpp"

#include <sstream>

namespace tk {

namespace {

// Reduce a length-5 coefficient vector of 1, x, .., x^4 using x^4 = -(1 + x + x^2 + x^3).
std::array<Rational, 4> reduce(const std::array<Rational, 5>& c) {
  return {c[0] - c[4], c[1] - c[4], c[2] - c[4], c[3] - c[4]};
}

}  // namespace

Cyclo5::Cyclo5(std::array<Rational, 4> coords) : coords_(std::move(coords)) {}

Cyclo5 Cyclo5::one() { return Cyclo5({1, 0, 0, 0}); }

Cyclo5 Cyclo5::power_of_root(long k) {
  long r = ((k % 5) + 5) % 5;
  std::array<Rational, 5> c{};
  c[static_cast<std::size_t>(r)] = 1;
  return Cyclo5(reduce(c));
}

bool Cyclo5::is_one() const { return *this == one(); }

Cyclo5& Cyclo5::operator+=(const Cyclo5& other) {
  for (std::size_t i = 0; i < 4; ++i) coords_[i] += other.coords_[i];
  return *this;
}

Cyclo5& Cyclo5::operator-=(const Cyclo5& other) {
  for (std::size_t i = 0; i < 4; ++i) coords_[i] -= other.coords_[i];
  return *this;
}

Cyclo5 operator*(const Cyclo5& a, const Cyclo5& b) {
  // x^5 = 1 modulo Phi_5, so fold the product cyclically first.
  std::array<Rational, 5> c{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) c[(i + j) % 5] += a.coords_[i] * b.coords_[j];
  return Cyclo5(reduce(c));
}

Cyclo5 operator*(const Rational& s, Cyclo5 a) {
  for (auto& c : a.coords_) c *= s;
  return a;
}

std::string Cyclo5::to_string() const {
  std::ostringstream out;
  out << "(" << coords_[0] << ", " << coords_[1] << ", " << coords_[2] << ", " << coords_[3] << ")";
  return out.str();
}

}  // namespace tk
