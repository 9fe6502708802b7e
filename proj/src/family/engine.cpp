#include "twistknot/family/engine.hpp"

#include <array>
#include <map>
#include <stdexcept>

namespace tk {

std::vector<int> parse_signs(const std::string& text) {
  std::vector<int> out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (c == '+') {
      out.push_back(1);
    } else if (c == '-') {
      out.push_back(-1);
    } else if (c == 0xE2 && i + 2 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0x88 &&
               static_cast<unsigned char>(text[i + 2]) == 0x92) {
      out.push_back(-1);
      i += 2;
    } else {
      throw std::invalid_argument("sign case must use '+' and '-': " + text);
    }
  }
  return out;
}

std::string signs_to_string(const std::vector<int>& signs) {
  std::string s;
  for (int v : signs) s.push_back(v > 0 ? '+' : '-');
  return s;
}

std::vector<std::vector<int>> all_sign_cases(int k) {
  std::vector<std::vector<int>> out;
  for (unsigned code = 0; code < (1U << k); ++code) {
    std::vector<int> s(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) s[i] = ((code >> (k - 1 - i)) & 1U) ? -1 : 1;
    out.push_back(std::move(s));
  }
  return out;
}

HalfLaurent prefactor(int sign, int x, long n) { return apply_prefactor(HalfLaurent::constant(1), sign, x, n); }

HalfLaurent apply_prefactor(const HalfLaurent& p, int sign, int x, long n) {
  if (n < 1) throw std::invalid_argument("prefactor needs n >= 1");
  if (x == 1) return p.shifted(static_cast<int>(4 * sign * n));
  // (s t^s)(t^(1/2) - t^(-1/2)) times the geometric sum in t^(2s).
  HalfLaurent q = p.shifted(2 * sign + 1) - p.shifted(2 * sign - 1);
  if (sign < 0) q = -q;
  return q.geometric_mul(4 * sign, static_cast<int>(n));
}

namespace {

// Expand prod_{q<k} (e - q) for an affine e in the single variable `var`.
MultiPoly falling_poly(const MultiPoly& e, int k) {
  MultiPoly r = MultiPoly::constant(1);
  for (int q = 0; q < k; ++q) r *= e - MultiPoly::constant(q);
  return r;
}

// sum_{j=0}^{n-1} j^p as polynomials in n (variable 0), p = 0..pmax.
std::vector<MultiPoly> power_sums(int pmax) {
  const MultiPoly n = MultiPoly::variable(0);
  std::vector<MultiPoly> s;
  for (int p = 0; p <= pmax; ++p) {
    MultiPoly acc = n.pow(static_cast<unsigned>(p + 1));
    for (int q = 0; q < p; ++q) acc -= Rational(binomial(p + 1, q)) * s[q];
    s.push_back(Rational(1, p + 1) * acc);
  }
  return s;
}

}  // namespace

MultiPoly prefactor_deriv_poly(int sign, int x, int k) {
  const MultiPoly n = MultiPoly::variable(0);
  if (x == 1) return falling_poly(Rational(2 * sign) * n, k);
  // Sum over j of s (t^(s(2j+1)+1/2) - t^(s(2j+1)-1/2)); j is variable 1 until summed.
  const MultiPoly j = MultiPoly::variable(1);
  const MultiPoly centre = Rational(sign) * (Rational(2) * j + MultiPoly::constant(1));
  const MultiPoly term = Rational(sign) * (falling_poly(centre + MultiPoly::constant(make_rational(1, 2)), k) -
                                           falling_poly(centre - MultiPoly::constant(make_rational(1, 2)), k));
  const auto sums = power_sums(k);
  MultiPoly out;
  const auto by_power = term.coefficients_in(1);
  for (std::size_t p = 0; p < by_power.size(); ++p) out += by_power[p] * sums[p];
  return out;
}

namespace {

// Derivative polynomials are reused on every instance; build them once.
const MultiPoly& cached_deriv_poly(int sign, int x, int k) {
  static const auto table = [] {
    std::vector<MultiPoly> t;
    for (int s : {1, -1})
      for (int xx = 0; xx < 2; ++xx)
        for (int kk = 0; kk <= 8; ++kk) t.push_back(prefactor_deriv_poly(s, xx, kk));
    return t;
  }();
  if (k < 0 || k > 8) throw std::out_of_range("derivative order above 8");
  return table[static_cast<std::size_t>(((sign > 0 ? 0 : 1) * 2 + x) * 9 + k)];
}

}  // namespace

HalfLaurent xn_jones(const std::vector<int>& signs) {
  // Zeros drop out; opposite signs cancel in pairs around the cycle, so only the net count matters.
  int net = 0;
  for (int s : signs) net += s;
  const int sign = net >= 0 ? 1 : -1;
  const int len = net >= 0 ? net : -net;
  HalfLaurent prev2 = HalfLaurent::unknot_factor();
  HalfLaurent prev = HalfLaurent::constant(1);
  if (len == 0) return prev2;
  const HalfLaurent step = HalfLaurent::t_power(3) - HalfLaurent::t_power(1);
  for (int i = 2; i <= len; ++i) {
    HalfLaurent cur = prev2.shifted(4) + step * prev;
    prev2 = std::move(prev);
    prev = std::move(cur);
  }
  return sign > 0 ? prev : prev.mirrored();
}

namespace {

long small_binomial(std::size_t n, std::size_t k) {
  static const auto table = [] {
    std::array<std::array<long, 21>, 21> t{};
    for (std::size_t i = 0; i <= 20; ++i) {
      t[i][0] = 1;
      for (std::size_t j = 1; j <= i; ++j) t[i][j] = t[i - 1][j - 1] + (j < i ? t[i - 1][j] : 0);
    }
    return t;
  }();
  if (n <= 20) return table[n][k];
  return binomial(static_cast<int>(n), static_cast<int>(k)).get_si();
}

}  // namespace

template <class T>
std::vector<T> leibniz(const std::vector<T>& f, const std::vector<T>& g) {
  const std::size_t len = std::min(f.size(), g.size());
  std::vector<T> out(len);
  for (std::size_t k = 0; k < len; ++k)
    for (std::size_t i = 0; i <= k; ++i) {
      const long c = small_binomial(k, i);
      if (c == 1) out[k] += f[i] * g[k - i];
      else out[k] += Rational(c) * (f[i] * g[k - i]);
    }
  return out;
}

template std::vector<Rational> leibniz(const std::vector<Rational>&, const std::vector<Rational>&);
template std::vector<MultiPoly> leibniz(const std::vector<MultiPoly>&, const std::vector<MultiPoly>&);

FamilySpec::FamilySpec(std::shared_ptr<const FamilyDefinition> def, std::vector<int> signs) : def_(std::move(def)) {
  if (static_cast<int>(signs.size()) != def_->bands())
    throw std::invalid_argument("family " + def_->name + " needs " + std::to_string(def_->bands()) + " signs");
  for (int i = 0; i < def_->bands(); ++i) {
    if (signs[i] != 1 && signs[i] != -1) throw std::invalid_argument("band signs must be +1 or -1");
    bands_.push_back({signs[i], def_->parities[i]});
  }
  const unsigned states = 1U << size();
  base_.reserve(states);
  for (unsigned mask = 0; mask < states; ++mask)
    base_.push_back(eval_base(*def_->rule_for(mask).expr, mask, signs, def_->parities));
  for (const auto& b : base_) base_jets_.push_back(b.derivs_at_one(kJetOrder));
}

std::vector<int> FamilySpec::signs() const {
  std::vector<int> s;
  for (const auto& b : bands_) s.push_back(b.sign);
  return s;
}

FamilySpec FamilySpec::mirrored() const {
  std::vector<int> s = signs();
  for (int& v : s) v = -v;
  return {def_, s};
}

void FamilySpec::check_twists(const TwistVector& n) const {
  if (static_cast<int>(n.size()) != size())
    throw std::invalid_argument("family " + name() + " needs " + std::to_string(size()) + " twist counts");
  for (long v : n)
    if (v < 1) throw std::invalid_argument("twist counts must be positive");
}

HalfLaurent FamilySpec::assemble_jones(const TwistVector& n) const {
  check_twists(n);
  // Contract the highest band first: table[rest] = c0 * table[rest] + c1 * table[rest | bit].
  std::vector<HalfLaurent> table = base_;
  for (int band = size() - 1; band >= 0; --band) {
    const unsigned half = 1U << band;
    for (unsigned rest = 0; rest < half; ++rest)
      table[rest] = apply_prefactor(table[rest], bands_[band].sign, 0, n[band]) +
                    apply_prefactor(table[rest | half], bands_[band].sign, 1, n[band]);
    table.resize(half);
  }
  return table[0];
}

HalfLaurent FamilySpec::assemble_jones_expanded(const TwistVector& n) const {
  check_twists(n);
  HalfLaurent total;
  for (unsigned mask = 0; mask < base_.size(); ++mask) {
    HalfLaurent term = HalfLaurent::constant(1);
    for (int i = 0; i < size(); ++i) term *= prefactor(bands_[i].sign, (mask >> i) & 1U, n[i]);
    total += term * base_[mask];
  }
  return total;
}

HalfLaurent FamilySpec::resolved_partial(const TwistVector& n, int band) const {
  check_twists(n);
  HalfLaurent total;
  for (unsigned mask = 0; mask < base_.size(); ++mask) {
    if ((mask >> band) & 1U) continue;
    HalfLaurent term = base_[mask];
    for (int i = 0; i < size(); ++i)
      if (i != band) term = apply_prefactor(term, bands_[i].sign, (mask >> i) & 1U, n[i]);
    total += term;
  }
  return total;
}

std::vector<Rational> FamilySpec::leibniz_derivs(const TwistVector& n, int kmax) const {
  check_twists(n);
  const auto len = static_cast<std::size_t>(kmax + 1);
  std::vector<std::vector<Rational>> table;
  if (kmax <= kJetOrder) {
    for (const auto& j : base_jets_) table.emplace_back(j.begin(), j.begin() + static_cast<long>(len));
  } else {
    for (const auto& b : base_) table.push_back(b.derivs_at_one(kmax));
  }
  for (int band = size() - 1; band >= 0; --band) {
    std::vector<Rational> c0(len), c1(len);
    const std::vector<Rational> at{Rational(n[band])};
    for (int k = 0; k <= kmax; ++k) {
      c0[k] = cached_deriv_poly(bands_[band].sign, 0, k).eval(at);
      c1[k] = cached_deriv_poly(bands_[band].sign, 1, k).eval(at);
    }
    const unsigned half = 1U << band;
    for (unsigned rest = 0; rest < half; ++rest) {
      auto a = leibniz(c0, table[rest]);
      auto b = leibniz(c1, table[rest | half]);
      for (std::size_t k = 0; k < len; ++k) a[k] += b[k];
      table[rest] = std::move(a);
    }
    table.resize(half);
  }
  return table[0];
}

std::vector<Rational> FamilySpec::jones_derivs(const TwistVector& n, int kmax) const {
  auto direct = assemble_jones(n).derivs_at_one(kmax);
  if (direct != leibniz_derivs(n, kmax))
    throw std::logic_error("jones_derivs: assembled polynomial and Leibniz route disagree for " + name() + " " + case_string());
  return direct;
}

std::vector<MultiPoly> FamilySpec::symbolic_derivs(int kmax) const {
  const auto len = static_cast<std::size_t>(kmax + 1);
  std::vector<std::vector<MultiPoly>> table;
  for (const auto& b : base_) {
    std::vector<MultiPoly> jet;
    for (const auto& v : b.derivs_at_one(kmax)) jet.push_back(MultiPoly::constant(v));
    table.push_back(std::move(jet));
  }
  for (int band = size() - 1; band >= 0; --band) {
    std::vector<MultiPoly> c0(len), c1(len);
    const std::vector<MultiPoly> rename{MultiPoly::variable(band)};
    for (int k = 0; k <= kmax; ++k) {
      c0[k] = cached_deriv_poly(bands_[band].sign, 0, k).compose(rename);
      c1[k] = cached_deriv_poly(bands_[band].sign, 1, k).compose(rename);
    }
    const unsigned half = 1U << band;
    for (unsigned rest = 0; rest < half; ++rest) {
      auto a = leibniz(c0, table[rest]);
      auto b = leibniz(c1, table[rest | half]);
      for (std::size_t k = 0; k < len; ++k) a[k] += b[k];
      table[rest] = std::move(a);
    }
    table.resize(half);
  }
  return table[0];
}

}  // namespace tk
