#include "twistknot/algebra/half_laurent.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace tk {

HalfLaurent HalfLaurent::constant(const Integer& c) { return monomial(c, 0); }

HalfLaurent HalfLaurent::monomial(const Integer& c, int doubled_exponent) {
  HalfLaurent p;
  if (c != 0) {
    p.low_ = doubled_exponent;
    p.coeffs_.push_back(c);
  }
  return p;
}

HalfLaurent HalfLaurent::unknot_factor() { return monomial(-1, 1) + monomial(-1, -1); }

HalfLaurent HalfLaurent::skein_z() { return monomial(1, 1) + monomial(-1, -1); }

bool HalfLaurent::is_one() const { return low_ == 0 && coeffs_.size() == 1 && coeffs_[0] == 1; }

Integer HalfLaurent::coefficient(int doubled_exponent) const {
  if (is_zero() || doubled_exponent < low_ || doubled_exponent > max_exponent()) return 0;
  return coeffs_[static_cast<std::size_t>(doubled_exponent - low_)];
}

std::vector<std::pair<int, Integer>> HalfLaurent::terms() const {
  std::vector<std::pair<int, Integer>> out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) out.emplace_back(low_ + static_cast<int>(i), coeffs_[i]);
  return out;
}

bool HalfLaurent::is_knot_valued() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0 && (low_ + static_cast<int>(i)) % 2 != 0) return false;
  return true;
}

void HalfLaurent::trim() {
  auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](const Integer& c) { return c != 0; });
  if (first == coeffs_.end()) {
    coeffs_.clear();
    low_ = 0;
    return;
  }
  auto last = std::find_if(coeffs_.rbegin(), coeffs_.rend(), [](const Integer& c) { return c != 0; });
  coeffs_.erase(last.base(), coeffs_.end());
  low_ += static_cast<int>(first - coeffs_.begin());
  coeffs_.erase(coeffs_.begin(), first);
}

Integer& HalfLaurent::slot(int e) {
  if (coeffs_.empty()) {
    low_ = e;
    coeffs_.emplace_back(0);
  } else if (e < low_) {
    coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(low_ - e), Integer(0));
    low_ = e;
  } else if (e > max_exponent()) {
    coeffs_.resize(static_cast<std::size_t>(e - low_ + 1), Integer(0));
  }
  return coeffs_[static_cast<std::size_t>(e - low_)];
}

HalfLaurent& HalfLaurent::operator+=(const HalfLaurent& other) {
  if (other.is_zero()) return *this;
  slot(other.low_);
  slot(other.max_exponent());
  const auto offset = static_cast<std::size_t>(other.low_ - low_);
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[offset + i] += other.coeffs_[i];
  trim();
  return *this;
}

HalfLaurent& HalfLaurent::operator-=(const HalfLaurent& other) {
  if (other.is_zero()) return *this;
  slot(other.low_);
  slot(other.max_exponent());
  const auto offset = static_cast<std::size_t>(other.low_ - low_);
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[offset + i] -= other.coeffs_[i];
  trim();
  return *this;
}

HalfLaurent HalfLaurent::operator-() const {
  HalfLaurent r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

HalfLaurent operator*(const HalfLaurent& a, const HalfLaurent& b) {
  HalfLaurent r;
  if (a.is_zero() || b.is_zero()) return r;
  r.low_ = a.low_ + b.low_;
  r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    const mpz_srcptr ai = a.coeffs_[i].get_mpz_t();
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      if (b.coeffs_[j] == 0) continue;
      mpz_addmul(r.coeffs_[i + j].get_mpz_t(), ai, b.coeffs_[j].get_mpz_t());
    }
  }
  r.trim();
  return r;
}

HalfLaurent& HalfLaurent::operator*=(const HalfLaurent& other) { return *this = *this * other; }

HalfLaurent operator*(const Integer& s, const HalfLaurent& a) {
  if (s == 0) return {};
  HalfLaurent r = a;
  for (auto& c : r.coeffs_) c *= s;
  return r;
}

HalfLaurent HalfLaurent::shifted(int doubled_exponent) const {
  HalfLaurent r = *this;
  if (!r.is_zero()) r.low_ += doubled_exponent;
  return r;
}

HalfLaurent HalfLaurent::mirrored() const {
  HalfLaurent r;
  if (is_zero()) return r;
  r.low_ = -max_exponent();
  r.coeffs_.assign(coeffs_.rbegin(), coeffs_.rend());
  return r;
}

HalfLaurent HalfLaurent::pow(unsigned exponent) const {
  HalfLaurent result = constant(1);
  HalfLaurent base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

HalfLaurent HalfLaurent::geometric_mul(int doubled_step, int count) const {
  if (is_zero() || count <= 0) return {};
  if (doubled_step < 0) return mirrored().geometric_mul(-doubled_step, count).mirrored();
  if (doubled_step == 0) return Integer(count) * *this;
  // Running sum along each residue class mod step: r[i] = r[i-step] + p[i] - p[i-count*step].
  const auto step = static_cast<std::size_t>(doubled_step);
  const std::size_t span = step * static_cast<std::size_t>(count - 1);
  HalfLaurent r;
  r.low_ = low_;
  r.coeffs_.assign(coeffs_.size() + span, Integer(0));
  for (std::size_t i = 0; i < r.coeffs_.size(); ++i) {
    if (i < coeffs_.size()) r.coeffs_[i] = coeffs_[i];
    if (i >= step) r.coeffs_[i] += r.coeffs_[i - step];
    if (i >= span + step && i - span - step < coeffs_.size()) r.coeffs_[i] -= coeffs_[i - span - step];
  }
  r.trim();
  return r;
}

Integer HalfLaurent::at_one() const {
  Integer s = 0;
  for (const auto& c : coeffs_) s += c;
  return s;
}

std::vector<Rational> HalfLaurent::derivs_at_one(int kmax) const {
  // d^k/dt^k t^(e/2) at 1 = prod_{q<k} (e - 2q) / 2^k; accumulate integer numerators.
  std::vector<Integer> numer(static_cast<std::size_t>(kmax + 1), Integer(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    const long e = low_ + static_cast<long>(i);
    Integer term = coeffs_[i];
    for (int k = 0; k <= kmax; ++k) {
      numer[static_cast<std::size_t>(k)] += term;
      term *= e - 2L * k;
    }
  }
  std::vector<Rational> out;
  out.reserve(numer.size());
  for (int k = 0; k <= kmax; ++k) {
    Rational r(numer[static_cast<std::size_t>(k)], Integer(1) << static_cast<unsigned>(k));
    r.canonicalize();
    out.push_back(r);
  }
  return out;
}

Cyclo5 HalfLaurent::eval_root5() const {
  std::array<Rational, 4> acc{};
  Integer x4 = 0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    const int e = low_ + static_cast<int>(i);
    if (e % 2 != 0) throw std::domain_error("eval_root5: half-integral exponent in " + to_string());
    const int r = (((e / 2) % 5) + 5) % 5;
    if (r == 4)
      x4 += coeffs_[i];
    else
      acc[static_cast<std::size_t>(r)] += coeffs_[i];
  }
  for (auto& c : acc) c -= x4;
  return Cyclo5(acc);
}

namespace {

std::string power_text(int e) {
  if (e == 0) return "";
  if (e % 2 == 0) {
    const int k = e / 2;
    if (k == 1) return "t";
    if (k > 1) return "t^" + std::to_string(k);
    return "t^(" + std::to_string(k) + ")";
  }
  return "t^(" + std::to_string(e) + "/2)";
}

}  // namespace

std::string HalfLaurent::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int e = max_exponent(); e >= low_; --e) {
    const Integer& c = coeffs_[static_cast<std::size_t>(e - low_)];
    if (c == 0) continue;
    const bool negative = c < 0;
    if (first)
      out << (negative ? "-" : "");
    else
      out << (negative ? " - " : " + ");
    first = false;
    const Integer mag = abs(c);
    const std::string p = power_text(e);
    if (p.empty())
      out << mag;
    else if (mag == 1)
      out << p;
    else
      out << mag << p;
  }
  return out.str();
}

HalfLaurent HalfLaurent::parse(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw std::invalid_argument("empty polynomial text");
  if (s == "0") return {};
  std::size_t pos = 0;
  auto fail = [&](const char* what) {
    throw std::invalid_argument(std::string("HalfLaurent::parse: ") + what + " in \"" + std::string(text) + "\"");
  };
  auto read_int = [&]() {
    const std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start])))) fail("expected integer");
    return std::stol(s.substr(start, pos - start));
  };
  HalfLaurent result;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      fail("expected sign between terms");
    }
    Integer coeff = 1;
    bool have_digits = false;
    const std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos > start) {
      coeff = Integer(s.substr(start, pos - start));
      have_digits = true;
    }
    int doubled = 0;
    if (pos < s.size() && s[pos] == 't') {
      ++pos;
      doubled = 2;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        if (pos < s.size() && s[pos] == '(') {
          ++pos;
          const long num = read_int();
          long den = 1;
          if (pos < s.size() && s[pos] == '/') {
            ++pos;
            den = read_int();
          }
          if (pos >= s.size() || s[pos] != ')') fail("missing ')'");
          ++pos;
          if (den == 1)
            doubled = static_cast<int>(2 * num);
          else if (den == 2)
            doubled = static_cast<int>(num);
          else
            fail("exponent denominator must be 1 or 2");
        } else {
          doubled = static_cast<int>(2 * read_int());
        }
      }
    } else if (!have_digits) {
      fail("expected term");
    }
    result += monomial(sign * coeff, doubled);
  }
  return result;
}

}  // namespace tk
