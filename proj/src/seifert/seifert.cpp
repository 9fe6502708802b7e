#include "twistknot/seifert/seifert.hpp"

#include <sstream>
#include <stdexcept>

namespace tk {

namespace {

// Laplace expansion along the first row; sizes here are at most 6.
template <class T>
T determinant(const std::vector<T>& m, int dim) {
  if (dim == 1) return m[0];
  T total{};
  for (int col = 0; col < dim; ++col) {
    const T& pivot = m[static_cast<std::size_t>(col)];
    if (pivot.is_zero()) continue;
    std::vector<T> minor;
    minor.reserve(static_cast<std::size_t>((dim - 1) * (dim - 1)));
    for (int r = 1; r < dim; ++r)
      for (int c = 0; c < dim; ++c)
        if (c != col) minor.push_back(m[static_cast<std::size_t>(r * dim + c)]);
    T term = pivot * determinant(minor, dim - 1);
    if (col % 2 == 0)
      total += term;
    else
      total -= term;
  }
  return total;
}

Integer as_integer(const Rational& r) {
  if (r.get_den() != 1) throw std::domain_error("Seifert entry is not an integer: " + r.get_str());
  return r.get_num();
}

}  // namespace

std::vector<Integer> SeifertTemplate::instantiate(const TwistVector& n) const {
  std::vector<Rational> point(n.begin(), n.end());
  std::vector<Integer> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(as_integer(e.eval(point)));
  return out;
}

SeifertTemplate make_template(const FamilyDefinition& def, const std::vector<int>& signs) {
  if (static_cast<int>(signs.size()) != def.bands()) throw std::invalid_argument("sign case length does not match family " + def.name);
  VarNames hnames;
  std::vector<MultiPoly> images;
  for (int i = 0; i < def.bands(); ++i) {
    hnames.push_back("h" + std::to_string(i + 1));
    images.push_back(Rational(signs[i]) * (Rational(2) * MultiPoly::variable(i) - MultiPoly::constant(def.parities[i])));
  }
  SeifertTemplate tpl;
  tpl.family = def.name;
  tpl.signs = signs;
  tpl.dim = static_cast<int>(def.seifert_rows.size());
  tpl.params = def.params;
  for (const auto& row : def.seifert_rows)
    for (const auto& cell : row) tpl.entries.push_back(parse_polynomial(cell, hnames).compose(images));
  return tpl;
}

SeifertTemplate template_7_6(const std::vector<int>& signs) { return make_template(*builtin_family("7_6"), signs); }
SeifertTemplate template_10_58(const std::vector<int>& signs) { return make_template(*builtin_family("10_58"), signs); }
SeifertTemplate template_8_12(const std::vector<int>& signs) { return make_template(*builtin_family("8_12"), signs); }

ParamLaurent ParamLaurent::monomial(const MultiPoly& c, int doubled_exponent) {
  ParamLaurent p;
  p.add(doubled_exponent, c);
  return p;
}

void ParamLaurent::add(int e, const MultiPoly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MultiPoly ParamLaurent::coefficient(int doubled_exponent) const {
  auto it = terms_.find(doubled_exponent);
  return it == terms_.end() ? MultiPoly() : it->second;
}

ParamLaurent& ParamLaurent::operator+=(const ParamLaurent& other) {
  for (const auto& [e, c] : other.terms_) add(e, c);
  return *this;
}

ParamLaurent& ParamLaurent::operator-=(const ParamLaurent& other) {
  for (const auto& [e, c] : other.terms_) add(e, -c);
  return *this;
}

ParamLaurent operator*(const ParamLaurent& a, const ParamLaurent& b) {
  ParamLaurent r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add(ea + eb, ca * cb);
  return r;
}

HalfLaurent ParamLaurent::eval(const std::vector<Rational>& point) const {
  HalfLaurent out;
  for (const auto& [e, c] : terms_) out += HalfLaurent::monomial(as_integer(c.eval(point)), e);
  return out;
}

Integer ConwaySeries::a(int power) const {
  if (power % 2 != 0 || power < 0) return 0;
  const auto i = static_cast<std::size_t>(power / 2);
  return i < coeffs.size() ? coeffs[i] : Integer(0);
}

bool ConwaySeries::is_trivial() const {
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != (i == 0 ? 1 : 0)) return false;
  return true;
}

std::string ConwaySeries::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    const Integer& c = coeffs[i];
    if (c == 0) continue;
    out << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    first = false;
    const Integer mag = abs(c);
    if (i == 0)
      out << mag;
    else
      out << (mag == 1 ? "" : mag.get_str()) << "z^" << 2 * i;
  }
  return first ? "0" : out.str();
}

HalfLaurent alexander_poly(const std::vector<Integer>& s, int dim) {
  std::vector<HalfLaurent> m;
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c)
      m.push_back(HalfLaurent::constant(s[r * dim + c]) - HalfLaurent::monomial(s[c * dim + r], 2));
  HalfLaurent delta = determinant(m, dim);
  const Integer at1 = delta.at_one();
  if (at1 != 1 && at1 != -1) throw std::logic_error("Alexander polynomial at 1 is " + at1.get_str());
  return delta;
}

HalfLaurent alexander_poly(const SeifertTemplate& tpl, const TwistVector& n) { return alexander_poly(tpl.instantiate(n), tpl.dim); }

ConwaySeries to_conway(const HalfLaurent& p) {
  ConwaySeries out;
  HalfLaurent rest = p;
  const HalfLaurent z2 = HalfLaurent::skein_z() * HalfLaurent::skein_z();
  while (!rest.is_zero()) {
    const int top = rest.max_exponent();
    if (top < 0 || top % 2 != 0) throw std::logic_error("Conway rewrite left remainder " + rest.to_string());
    const int m = top / 2;
    const Integer c = rest.coefficient(top);
    if (out.coeffs.size() <= static_cast<std::size_t>(m)) out.coeffs.resize(static_cast<std::size_t>(m + 1), Integer(0));
    out.coeffs[m] = c;
    rest -= c * z2.pow(static_cast<unsigned>(m));
  }
  return out;
}

ConwaySeries conway_poly(const std::vector<Integer>& s, int dim) {
  std::vector<HalfLaurent> m;
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c)
      m.push_back(HalfLaurent::monomial(s[r * dim + c], 1) - HalfLaurent::monomial(s[c * dim + r], -1));
  return to_conway(determinant(m, dim));
}

ConwaySeries conway_poly(const SeifertTemplate& tpl, const TwistVector& n) { return conway_poly(tpl.instantiate(n), tpl.dim); }

ParamLaurent alexander_symbolic(const SeifertTemplate& tpl) {
  std::vector<ParamLaurent> m;
  for (int r = 0; r < tpl.dim; ++r)
    for (int c = 0; c < tpl.dim; ++c)
      m.push_back(ParamLaurent::monomial(tpl.at(r, c), 0) - ParamLaurent::monomial(tpl.at(c, r), 2));
  return determinant(m, tpl.dim);
}

MultiPoly leading_coeff_symbolic(const SeifertTemplate& tpl) { return determinant(tpl.entries, tpl.dim); }

MultiPoly second_coeff_symbolic(const SeifertTemplate& tpl) { return alexander_symbolic(tpl).coefficient(2 * tpl.dim - 2); }

std::vector<MultiPoly> conway_symbolic(const SeifertTemplate& tpl) {
  std::vector<ParamLaurent> m;
  for (int r = 0; r < tpl.dim; ++r)
    for (int c = 0; c < tpl.dim; ++c)
      m.push_back(ParamLaurent::monomial(tpl.at(r, c), 1) - ParamLaurent::monomial(tpl.at(c, r), -1));
  ParamLaurent rest = determinant(m, tpl.dim);
  // Peel z^(2m) from the top; coefficients are polynomials, so expand z^(2m) once per degree.
  std::vector<MultiPoly> out(static_cast<std::size_t>(tpl.genus() + 1));
  for (int mdeg = tpl.genus(); mdeg >= 0; --mdeg) {
    const MultiPoly c = rest.coefficient(2 * mdeg);
    out[mdeg] = c;
    if (c.is_zero()) continue;
    HalfLaurent z2m = (HalfLaurent::skein_z() * HalfLaurent::skein_z()).pow(static_cast<unsigned>(mdeg));
    for (const auto& [e, k] : z2m.terms()) rest -= ParamLaurent::monomial(Rational(k) * c, e);
  }
  if (!rest.is_zero()) throw std::logic_error("symbolic Conway rewrite left a remainder");
  return out;
}

}  // namespace tk
