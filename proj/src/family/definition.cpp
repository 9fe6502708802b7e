#include "twistknot/family/definition.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "twistknot/data_dir.hpp"
#include "twistknot/family/engine.hpp"

namespace tk {

namespace {

using ExprPtr = std::shared_ptr<const BaseExpr>;

BaseExpr leaf(BaseExpr::Kind kind, long value = 0) {
  BaseExpr e;
  e.kind = kind;
  e.value = value;
  return e;
}

class BaseParser {
 public:
  BaseParser(std::string text, int bands) : s_(std::move(text)), bands_(bands) {}

  ExprPtr parse() {
    ExprPtr e = product();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return e;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(const std::string& tok) {
    skip();
    if (s_.compare(pos_, tok.size(), tok) != 0) return false;
    pos_ += tok.size();
    return true;
  }
  void expect(const std::string& tok) {
    if (!accept(tok)) fail("expected '" + tok + "'");
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("base rule: " + what + " in \"" + s_ + "\"");
  }
  long number() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected number");
    return std::stol(s_.substr(start, pos_ - start));
  }
  int band_index() {
    const long b = number();
    if (b < 1 || b > bands_) fail("band index out of range");
    return static_cast<int>(b - 1);
  }
  static ExprPtr node(BaseExpr e) { return std::make_shared<const BaseExpr>(std::move(e)); }

  ExprPtr product() {
    BaseExpr prod = leaf(BaseExpr::Kind::Product);
    prod.args.push_back(factor());
    while (accept("*")) prod.args.push_back(factor());
    return prod.args.size() == 1 ? prod.args.front() : node(std::move(prod));
  }

  ExprPtr factor() {
    if (accept("unlink")) {
      expect("(");
      BaseExpr e = leaf(BaseExpr::Kind::Unlink);
      e.args.push_back(int_expr());
      expect(")");
      return node(std::move(e));
    }
    if (accept("X")) {
      expect("(");
      BaseExpr e = leaf(BaseExpr::Kind::Torus);
      if (!accept(")")) {
        e.bands.push_back(band_index());
        while (accept(",")) e.bands.push_back(band_index());
        expect(")");
      }
      return node(std::move(e));
    }
    if (accept("U")) return node(leaf(BaseExpr::Kind::Unknot));
    if (accept("1")) return node(leaf(BaseExpr::Kind::Number, 1));
    fail("expected X(...), U, unlink(...) or 1");
  }

  ExprPtr int_expr() {
    ExprPtr acc;
    if (accept("-")) {
      BaseExpr neg = leaf(BaseExpr::Kind::Sub);
      neg.args = {node(leaf(BaseExpr::Kind::Number, 0)), int_term()};
      acc = node(std::move(neg));
    } else {
      acc = int_term();
    }
    while (true) {
      BaseExpr e;
      if (accept("+"))
        e.kind = BaseExpr::Kind::Add;
      else if (accept("-"))
        e.kind = BaseExpr::Kind::Sub;
      else
        break;
      e.args = {acc, int_term()};
      acc = node(std::move(e));
    }
    return acc;
  }

  ExprPtr int_term() {
    if (accept("abs")) {
      expect("(");
      BaseExpr e = leaf(BaseExpr::Kind::Abs);
      e.args.push_back(int_expr());
      expect(")");
      return node(std::move(e));
    }
    if (accept("(")) {
      ExprPtr e = int_expr();
      expect(")");
      return e;
    }
    if (accept("x")) return node(leaf(BaseExpr::Kind::Bit, band_index()));
    return node(leaf(BaseExpr::Kind::Number, number()));
  }

  std::string s_;
  int bands_;
  std::size_t pos_ = 0;
};

long eval_int(const BaseExpr& e, unsigned mask) {
  switch (e.kind) {
    case BaseExpr::Kind::Number:
      return e.value;
    case BaseExpr::Kind::Bit:
      return (mask >> e.value) & 1U;
    case BaseExpr::Kind::Add:
      return eval_int(*e.args[0], mask) + eval_int(*e.args[1], mask);
    case BaseExpr::Kind::Sub:
      return eval_int(*e.args[0], mask) - eval_int(*e.args[1], mask);
    case BaseExpr::Kind::Abs:
      return std::labs(eval_int(*e.args[0], mask));
    default:
      throw std::logic_error("base rule: link expression used as a count");
  }
}

}  // namespace

HalfLaurent eval_base(const BaseExpr& e, unsigned mask, const std::vector<int>& signs, const std::vector<int>& parities) {
  switch (e.kind) {
    case BaseExpr::Kind::Number:
      return HalfLaurent::constant(e.value);
    case BaseExpr::Kind::Unknot:
      return HalfLaurent::unknot_factor();
    case BaseExpr::Kind::Unlink: {
      const long count = eval_int(*e.args[0], mask);
      if (count < 1) throw std::logic_error("base rule: unlink count " + std::to_string(count) + " < 1");
      return HalfLaurent::unknot_factor().pow(static_cast<unsigned>(count - 1));
    }
    case BaseExpr::Kind::Torus: {
      // A retained odd band keeps -s_i half twists; a resolved one contributes nothing.
      std::vector<int> args;
      for (int b : e.bands) {
        if (parities[b] != 1) throw std::logic_error("base rule: X() argument is an even band");
        args.push_back(((mask >> b) & 1U) ? -signs[b] : 0);
      }
      return xn_jones(args);
    }
    case BaseExpr::Kind::Product: {
      HalfLaurent r = HalfLaurent::constant(1);
      for (const auto& a : e.args) r *= eval_base(*a, mask, signs, parities);
      return r;
    }
    default:
      throw std::logic_error("base rule: count used as a link");
  }
}

const BaseRule& FamilyDefinition::rule_for(unsigned mask) const {
  for (const auto& r : rules) {
    bool ok = true;
    for (auto [band, bit] : r.pattern) ok = ok && static_cast<int>((mask >> band) & 1U) == bit;
    if (ok) return r;
  }
  throw std::runtime_error("family " + name + ": no base rule for resolution mask " + std::to_string(mask));
}

FamilyDefinition parse_family(const std::string& text) {
  FamilyDefinition def;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::vector<std::string> pending_rules;
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("family definition line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string key;
    if (!(words >> key)) continue;
    std::string rest;
    std::getline(words, rest);
    if (key == "name") {
      std::istringstream(rest) >> def.name;
    } else if (key == "params") {
      std::istringstream p(rest);
      for (std::string v; p >> v;) def.params.push_back(v);
    } else if (key == "band") {
      std::string kind;
      std::istringstream(rest) >> kind;
      if (kind == "odd")
        def.parities.push_back(1);
      else if (kind == "even")
        def.parities.push_back(0);
      else
        fail("band must be odd or even");
    } else if (key == "seifert") {
      std::vector<std::string> row;
      std::istringstream r(rest);
      for (std::string cell; std::getline(r, cell, '|');) row.push_back(cell);
      def.seifert_rows.push_back(row);
    } else if (key == "base") {
      pending_rules.push_back(rest);
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  if (def.name.empty()) throw std::invalid_argument("family definition: missing name");
  if (def.parities.empty() || def.bands() > kMaxVars) throw std::invalid_argument("family definition: bad band count");
  if (static_cast<int>(def.params.size()) != def.bands()) throw std::invalid_argument("family definition: params must name every band");
  for (const auto& row : def.seifert_rows)
    if (row.size() != def.seifert_rows.size()) throw std::invalid_argument("family definition: Seifert matrix is not square");
  for (const auto& raw : pending_rules) {
    const auto colon = raw.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("base rule without ':' : " + raw);
    BaseRule rule;
    rule.text = raw;
    std::istringstream pat(raw.substr(0, colon));
    for (std::string tok; pat >> tok;) {
      int band = 0, bit = 0;
      char eq = 0, x = 0;
      std::istringstream t(tok);
      if (!(t >> x >> band >> eq >> bit) || x != 'x' || eq != '=' || band < 1 || band > def.bands() || (bit != 0 && bit != 1))
        throw std::invalid_argument("bad base pattern '" + tok + "'");
      rule.pattern.emplace_back(band - 1, bit);
    }
    rule.expr = BaseParser(raw.substr(colon + 1), def.bands()).parse();
    def.rules.push_back(std::move(rule));
  }
  for (unsigned mask = 0; mask < (1U << def.bands()); ++mask) def.rule_for(mask);
  return def;
}

FamilyDefinition load_family_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open family file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_family(buf.str());
}

std::shared_ptr<const FamilyDefinition> builtin_family(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const FamilyDefinition>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[name];
  if (!slot) slot = std::make_shared<const FamilyDefinition>(load_family_file(data_dir() + "/families/" + name + ".fam"));
  return slot;
}

std::vector<std::string> builtin_family_names() { return {"7_6", "10_58", "8_12"}; }

}  // namespace tk
