#include "twistknot/algebra/multi_poly.hpp"

#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tk {

namespace {

int degree_of(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r{};
  for (int i = 0; i < kMaxVars; ++i) r[i] = static_cast<std::uint16_t>(a[i] + b[i]);
  return r;
}

}  // namespace

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
  const int da = degree_of(a);
  const int db = degree_of(b);
  if (da != db) return da < db;
  return a < b;
}

MultiPoly MultiPoly::constant(const Rational& c) {
  MultiPoly p;
  p.add_term(Monomial{}, c);
  return p;
}

MultiPoly MultiPoly::variable(int index) {
  if (index < 0 || index >= kMaxVars) throw std::out_of_range("variable index");
  Monomial m{};
  m[index] = 1;
  MultiPoly p;
  p.terms_.emplace(m, Rational(1));
  return p;
}

void MultiPoly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool MultiPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && degree_of(terms_.begin()->first) == 0); }

Rational MultiPoly::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

int MultiPoly::total_degree() const { return terms_.empty() ? -1 : degree_of(terms_.rbegin()->first); }

int MultiPoly::degree_in(int var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m[var]));
  return d;
}

unsigned MultiPoly::used_vars() const {
  unsigned mask = 0;
  for (const auto& [m, c] : terms_)
    for (int i = 0; i < kMaxVars; ++i)
      if (m[i] != 0) mask |= 1U << i;
  return mask;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
  return r;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& other) { return *this = *this * other; }

MultiPoly operator*(const Rational& s, const MultiPoly& a) {
  if (s == 0) return {};
  MultiPoly r = a;
  for (auto& [m, c] : r.terms_) c *= s;
  return r;
}

MultiPoly MultiPoly::pow(unsigned exponent) const {
  MultiPoly result = constant(1);
  MultiPoly base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

Rational MultiPoly::eval(const std::map<int, Rational>& point) const {
  std::vector<Rational> dense(kMaxVars);
  const unsigned used = used_vars();
  for (int i = 0; i < kMaxVars; ++i) {
    if (!(used & (1U << i))) continue;
    auto it = point.find(i);
    if (it == point.end()) throw std::out_of_range("MultiPoly::eval: no value for variable " + std::to_string(i));
    dense[i] = it->second;
  }
  return eval(dense);
}

Rational MultiPoly::eval(const std::vector<Rational>& point) const {
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational term = c;
    for (int i = 0; i < kMaxVars; ++i) {
      if (m[i] == 0) continue;
      if (static_cast<std::size_t>(i) >= point.size()) throw std::out_of_range("MultiPoly::eval: point too short");
      Rational p;
      mpz_pow_ui(p.get_num_mpz_t(), point[i].get_num_mpz_t(), m[i]);
      mpz_pow_ui(p.get_den_mpz_t(), point[i].get_den_mpz_t(), m[i]);
      term *= p;
    }
    total += term;
  }
  return total;
}

MultiPoly MultiPoly::substitute(int var, const MultiPoly& value) const {
  std::vector<MultiPoly> images;
  for (int i = 0; i < kMaxVars; ++i) images.push_back(i == var ? value : variable(i));
  return compose(images);
}

MultiPoly MultiPoly::compose(const std::vector<MultiPoly>& images) const {
  // Cache powers of each image; most substitutions reuse small powers.
  std::vector<std::vector<MultiPoly>> powers(kMaxVars);
  auto power = [&](int i, int k) -> const MultiPoly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(constant(1));
    const MultiPoly base = static_cast<std::size_t>(i) < images.size() ? images[i] : variable(i);
    while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * base);
    return cache[k];
  };
  MultiPoly result;
  for (const auto& [m, c] : terms_) {
    MultiPoly term = constant(c);
    for (int i = 0; i < kMaxVars; ++i)
      if (m[i] != 0) term *= power(i, m[i]);
    result += term;
  }
  return result;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(int var) const {
  std::vector<MultiPoly> out(static_cast<std::size_t>(std::max(0, degree_in(var) + 1)));
  for (const auto& [m, c] : terms_) {
    Monomial rest = m;
    rest[var] = 0;
    out[m[var]].add_term(rest, c);
  }
  return out;
}

std::string MultiPoly::to_string(const VarNames& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    const bool negative = c < 0;
    out << (first ? (negative ? "-" : "") : (negative ? " - " : " + "));
    first = false;
    const Rational mag = abs(c);
    std::string body;
    for (int i = 0; i < kMaxVars; ++i) {
      if (m[i] == 0) continue;
      if (!body.empty()) body += "*";
      body += static_cast<std::size_t>(i) < names.size() ? names[i] : "x" + std::to_string(i);
      if (m[i] > 1) body += "^" + std::to_string(m[i]);
    }
    if (body.empty())
      out << tk::to_string(mag);
    else if (mag == 1)
      out << body;
    else
      out << tk::to_string(mag) << "*" << body;
  }
  return out.str();
}

RatFunc::RatFunc(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
}

MultiPoly RatFunc::as_polynomial() const {
  if (!den_.is_constant()) throw std::domain_error("RatFunc::as_polynomial: non-constant denominator");
  return Rational(1) / den_.constant_term() * num_;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
  return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  RatFunc r{a.num_ * b.num_, a.den_ * b.den_};
  if (r.den_.is_constant()) return RatFunc(r.as_polynomial());
  return r;
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.num_.is_zero()) throw std::domain_error("RatFunc: division by zero");
  RatFunc r{a.num_ * b.den_, a.den_ * b.num_};
  if (r.den_.is_constant()) return RatFunc(r.as_polynomial());
  return r;
}

namespace {

MultiPoly clear_substitute(const MultiPoly& p, int var, const RatFunc& value, int degree) {
  const auto coeffs = p.coefficients_in(var);
  MultiPoly out;
  MultiPoly npow = MultiPoly::constant(1);
  for (int k = 0; k < static_cast<int>(coeffs.size()); ++k) {
    out += coeffs[k] * npow * value.den().pow(static_cast<unsigned>(degree - k));
    npow *= value.num();
  }
  return out;
}

}  // namespace

RatFunc RatFunc::substitute(int var, const RatFunc& value) const {
  const int deg = std::max({num_.degree_in(var), den_.degree_in(var), 0});
  MultiPoly n = clear_substitute(num_, var, value, deg);
  MultiPoly d = clear_substitute(den_, var, value, deg);
  if (d.is_zero()) throw std::domain_error("RatFunc::substitute: denominator vanishes");
  RatFunc r{std::move(n), std::move(d)};
  if (r.den_.is_constant()) return RatFunc(r.as_polynomial());
  return r;
}

std::string RatFunc::to_string(const VarNames& names) const {
  if (den_.is_constant()) return as_polynomial().to_string(names);
  return "(" + num_.to_string(names) + ")/(" + den_.to_string(names) + ")";
}

// ---- expression parser ----

namespace {

class ExprParser {
 public:
  ExprParser(std::string text, const VarNames& names) : s_(std::move(text)), names_(names) {}

  RatFunc parse() {
    RatFunc r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("parse_expression: " + what + " at offset " + std::to_string(pos_) + " in \"" + s_ + "\"");
  }
  bool atom_starts() {
    skip();
    if (pos_ >= s_.size()) return false;
    const auto c = static_cast<unsigned char>(s_[pos_]);
    return std::isalnum(c) || c == '(' || c == '_';
  }

  RatFunc expr() {
    RatFunc acc;
    bool first = true;
    while (true) {
      int sign = 1;
      if (peek('+') || peek('-')) {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        break;
      }
      RatFunc t = term();
      acc = first ? (sign < 0 ? -t : t) : (sign < 0 ? acc - t : acc + t);
      first = false;
    }
    return acc;
  }

  RatFunc term() {
    RatFunc acc = factor();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc = acc * factor();
      } else if (peek('/')) {
        ++pos_;
        acc = acc / factor();
      } else if (atom_starts()) {
        acc = acc * factor();
      } else {
        break;
      }
    }
    return acc;
  }

  RatFunc factor() {
    if (peek('-')) {
      ++pos_;
      return -factor();
    }
    if (peek('+')) {
      ++pos_;
      return factor();
    }
    RatFunc base = atom();
    if (peek('^')) {
      ++pos_;
      skip();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start))));
    }
    return base;
  }

  RatFunc atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const auto c = static_cast<unsigned char>(s_[pos_]);
    if (c == '(') {
      ++pos_;
      RatFunc r = expr();
      if (!peek(')')) fail("missing ')'");
      ++pos_;
      return r;
    }
    if (std::isdigit(c)) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return RatFunc(MultiPoly::constant(Rational(Integer(s_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(c) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string id = s_.substr(start, pos_ - start);
      if (int v = index_of(id); v >= 0) return RatFunc(MultiPoly::variable(v));
      MultiPoly prod = MultiPoly::constant(1);
      for (char ch : id) {
        const int v = index_of(std::string(1, ch));
        if (v < 0) fail("unknown identifier '" + id + "'");
        prod *= MultiPoly::variable(v);
      }
      return RatFunc(prod);
    }
    fail("unexpected '" + std::string(1, static_cast<char>(c)) + "'");
  }

  int index_of(const std::string& id) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == id) return static_cast<int>(i);
    return -1;
  }

  std::string s_;
  const VarNames& names_;
  std::size_t pos_ = 0;
};

std::string normalize_minus(const std::string& text) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    // U+2212 MINUS SIGN is E2 88 92 in UTF-8.
    if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x88 && static_cast<unsigned char>(text[i + 2]) == 0x92) {
      out.push_back('-');
      i += 2;
    } else {
      out.push_back(text[i]);
    }
  }
  return out;
}

}  // namespace

RatFunc parse_expression(const std::string& text, const VarNames& names) {
  return ExprParser(normalize_minus(text), names).parse();
}

MultiPoly parse_polynomial(const std::string& text, const VarNames& names) {
  RatFunc r = parse_expression(text, names);
  if (!r.is_polynomial()) throw std::invalid_argument("parse_polynomial: not a polynomial: " + text);
  return r.as_polynomial();
}

}  // namespace tk
