#include "twistknot/casework/exceptions.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "twistknot/data_dir.hpp"

namespace tk {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Top-level comma split, ignoring one pair of enclosing parentheses.
std::vector<std::string> split_tuple(std::string s) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  return out;
}

// (var, offset) when p = x_var + offset.
std::optional<std::pair<int, Rational>> unit_linear(const MultiPoly& p) {
  const unsigned used = p.used_vars();
  if (used == 0 || (used & (used - 1)) != 0 || p.total_degree() != 1) return std::nullopt;
  int var = 0;
  while (!((used >> var) & 1U)) ++var;
  const auto coeffs = p.coefficients_in(var);
  if (coeffs.size() != 2 || coeffs[1] != MultiPoly::constant(1)) return std::nullopt;
  return std::make_pair(var, coeffs[0].constant_term());
}

}  // namespace

std::optional<std::vector<long>> ExceptionPattern::match(const TwistVector& n) const {
  if (n.size() != twists.size()) return std::nullopt;
  std::map<int, Rational> point;
  for (std::size_t i = 0; i < twists.size(); ++i) {
    const auto lin = unit_linear(twists[i]);
    if (!lin) continue;
    const Rational v = Rational(n[i]) - lin->second;
    const auto [it, fresh] = point.emplace(lin->first, v);
    if (!fresh && it->second != v) return std::nullopt;
  }
  for (const auto& [var, v] : point)
    if (v.get_den() != 1 || v < 1) return std::nullopt;
  try {
    for (std::size_t i = 0; i < twists.size(); ++i)
      if (twists[i].eval(point) != Rational(n[i])) return std::nullopt;
  } catch (const std::out_of_range&) {
    return std::nullopt;
  }
  std::vector<long> values;
  for (const auto& [var, v] : point) values.push_back(v.get_num().get_si());
  return values;
}

std::vector<const ExceptionPattern*> ExceptionTable::rows_for(const std::string& sign_case) const {
  std::vector<const ExceptionPattern*> out;
  for (const auto& r : rows)
    if (r.sign_case == sign_case) out.push_back(&r);
  return out;
}

std::vector<std::string> ExceptionTable::cases() const {
  std::vector<std::string> out;
  for (const auto& r : rows)
    if (std::find(out.begin(), out.end(), r.sign_case) == out.end()) out.push_back(r.sign_case);
  return out;
}

ExceptionTable parse_exception_table(const std::string& text, const FamilyDefinition& def) {
  ExceptionTable table;
  table.family = def.name;
  table.vars = def.params;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("exception table line " + std::to_string(line) + ": " + what);
  };
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw.substr(0, raw.find('#')));
    if (s.empty()) continue;
    if (s.rfind("family", 0) == 0) {
      if (trim(s.substr(6)) != def.name) fail("table is for another family");
      continue;
    }
    std::vector<std::string> fields;
    std::istringstream parts(s);
    for (std::string f; std::getline(parts, f, '|');) fields.push_back(trim(f));
    if (fields.size() != 3) fail("expected 'case | printed tuple | twist counts'");

    ExceptionPattern p;
    p.row = static_cast<int>(table.rows.size()) + 1;
    const auto signs = parse_signs(fields[0]);
    if (static_cast<int>(signs.size()) != def.bands()) fail("sign case has the wrong length");
    p.sign_case = signs_to_string(signs);
    p.printed = fields[1];
    p.twist_text = fields[2];
    for (const auto& c : split_tuple(fields[1])) p.signed_values.push_back(parse_polynomial(c, def.params));
    for (const auto& c : split_tuple(fields[2])) p.twists.push_back(parse_polynomial(c, def.params));
    if (p.signed_values.size() != signs.size() || p.twists.size() != signs.size()) fail("tuple length does not match the sign case");

    unsigned determined = 0, used = 0;
    for (std::size_t i = 0; i < signs.size(); ++i) {
      if (Rational(signs[i]) * p.signed_values[i] != p.twists[i])
        fail("twist count " + std::to_string(i + 1) + " is not the band sign times the printed value");
      used |= p.twists[i].used_vars();
      if (auto lin = unit_linear(p.twists[i])) determined |= 1U << lin->first;
    }
    if ((used & ~determined) != 0) fail("a pattern variable is not fixed by any twist count");
    table.rows.push_back(std::move(p));
  }
  return table;
}

ExceptionTable load_exception_table(const std::string& path, const FamilyDefinition& def) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open exception table " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_exception_table(buf.str(), def);
}

std::shared_ptr<const ExceptionTable> builtin_exception_table(const std::string& family) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const ExceptionTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[family];
  if (!slot) {
    const auto def = builtin_family(family);
    const std::string path = data_dir() + "/registry/" + family + ".exceptions";
    if (std::filesystem::exists(path)) {
      slot = std::make_shared<const ExceptionTable>(load_exception_table(path, *def));
    } else {
      auto empty = std::make_shared<ExceptionTable>();
      empty->family = family;
      empty->vars = def->params;
      slot = empty;
    }
  }
  return slot;
}

}  // namespace tk
