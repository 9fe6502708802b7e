#include "twistknot/casework/registry.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>

#include "twistknot/data_dir.hpp"
#include "twistknot/family/engine.hpp"
#include "twistknot/seifert/seifert.hpp"

namespace tk {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Splits "head : tail" at the first colon.
std::pair<std::string, std::string> split_colon(const std::string& s, int line) {
  const auto pos = s.find(':');
  if (pos == std::string::npos) throw std::invalid_argument("registry line " + std::to_string(line) + ": missing ':'");
  return {trim(s.substr(0, pos)), trim(s.substr(pos + 1))};
}

int coefficient_sign(const MultiPoly& p) {
  int sign = 0;
  for (const auto& [m, c] : p.terms()) {
    const int s = sgn(c);
    if (sign == 0) sign = s;
    if (s != sign) return 0;
  }
  return sign;
}

}  // namespace

std::string quantity_name(Quantity q) {
  switch (q) {
    case Quantity::Leading: return "leading";
    case Quantity::Second: return "second";
    case Quantity::D2: return "d2";
    case Quantity::D3: return "d3";
    case Quantity::D4: return "d4";
  }
  return "?";
}

Quantity parse_quantity(const std::string& name) {
  for (Quantity q : {Quantity::Leading, Quantity::Second, Quantity::D2, Quantity::D3, Quantity::D4})
    if (quantity_name(q) == name) return q;
  throw std::invalid_argument("unknown quantity '" + name + "'");
}

std::vector<const RegistryBlock*> Registry::blocks_for(const std::string& sign_case) const {
  std::vector<const RegistryBlock*> out;
  for (const auto& b : blocks)
    if (std::find(b.cases.begin(), b.cases.end(), sign_case) != b.cases.end()) out.push_back(&b);
  return out;
}

std::vector<std::string> Registry::registered_cases() const {
  std::vector<std::string> out;
  for (const auto& b : blocks)
    for (const auto& c : b.cases)
      if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  return out;
}

Registry parse_registry(const std::string& text, const FamilyDefinition& def) {
  Registry reg;
  reg.family = def.name;
  reg.vars = def.params;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  auto fail = [&](const std::string& what) -> void {
    throw std::invalid_argument("registry line " + std::to_string(line) + ": " + what);
  };
  auto current = [&]() -> RegistryBlock& {
    if (reg.blocks.empty()) fail("entry before any 'case' line");
    return reg.blocks.back();
  };
  auto last_expect = [&]() -> Expectation& {
    if (current().expects.empty()) fail("'correct' or 'note' without a preceding 'expect'");
    return current().expects.back();
  };
  auto var_index = [&](const std::string& name) {
    const auto it = std::find(reg.vars.begin(), reg.vars.end(), name);
    if (it == reg.vars.end()) fail("unknown variable '" + name + "'");
    return static_cast<int>(it - reg.vars.begin());
  };
  auto parse = [&](const std::string& expr) {
    try {
      return parse_expression(expr, reg.vars);
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
    return RatFunc();
  };

  std::string only;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw.substr(0, raw.find('#')));
    if (s.empty()) continue;
    std::istringstream words(s);
    std::string key;
    words >> key;
    if (key == "family") {
      std::string name;
      words >> name;
      if (name != def.name) fail("registry is for family " + name + ", not " + def.name);
    } else if (key == "alexander_sign") {
      words >> reg.alexander_sign;
      if (reg.alexander_sign != 1 && reg.alexander_sign != -1) fail("alexander_sign must be 1 or -1");
    } else if (key == "case") {
      RegistryBlock b;
      std::string c;
      while (words >> c) {
        const auto signs = parse_signs(c);
        if (static_cast<int>(signs.size()) != def.bands()) fail("case " + c + " has the wrong length");
        b.cases.push_back(signs_to_string(signs));
      }
      if (b.cases.empty()) fail("'case' needs at least one sign string");
      reg.blocks.push_back(std::move(b));
      only.clear();
    } else if (key == "only") {
      std::string c;
      if (!(words >> c)) {
        only.clear();  // bare "only" returns to the whole block
        continue;
      }
      only = signs_to_string(parse_signs(c));
      const auto& cases = current().cases;
      if (std::find(cases.begin(), cases.end(), only) == cases.end()) fail("'only " + c + "' names a case outside the block");
    } else if (key == "requires") {
      std::string what;
      words >> what;
      if (what != "d4") fail("only 'requires d4' is recognized");
      current().requires_d4 = true;
    } else if (key == "chain") {
      const auto eq = s.find('=');
      if (eq == std::string::npos) fail("chain needs '='");
      ChainStep step;
      step.var = var_index(trim(s.substr(5, eq - 5)));
      step.text = trim(s.substr(eq + 1));
      step.value = parse(step.text);
      current().chain.push_back(std::move(step));
    } else if (key == "expect") {
      auto [head, body] = split_colon(s.substr(6), line);
      std::istringstream h(head);
      std::string q;
      Expectation e;
      h >> q >> e.stage;
      if (!h) fail("expect needs a quantity and a stage");
      e.quantity = parse_quantity(q);
      e.verbatim = body;
      e.expr = parse(body);
      e.line = line;
      e.only = only;
      current().expects.push_back(std::move(e));
    } else if (key == "correct") {
      auto body = split_colon(s, line).second;
      last_expect().corrected = body;
      last_expect().corrected_expr = parse(body);
    } else if (key == "note") {
      last_expect().note = split_colon(s, line).second;
    } else if (key == "claim") {
      Claim c;
      std::string q, sign;
      words >> q >> c.stage >> sign;
      if (!words) fail("claim needs a quantity, a stage and positive|negative");
      c.quantity = parse_quantity(q);
      if (sign == "positive") c.sign = ClaimSign::Positive;
      else if (sign == "negative") c.sign = ClaimSign::Negative;
      else fail("claim sign must be positive or negative");
      c.line = line;
      c.only = only;
      current().claims.push_back(c);
    } else {
      fail("unknown keyword '" + key + "'");
    }
  }
  for (const auto& b : reg.blocks) {
    const int n = static_cast<int>(b.chain.size());
    for (const auto& e : b.expects)
      if (e.stage < 0 || e.stage > n) throw std::invalid_argument("registry line " + std::to_string(e.line) + ": stage beyond chain");
    for (const auto& c : b.claims)
      if (c.stage < 0 || c.stage > n) throw std::invalid_argument("registry line " + std::to_string(c.line) + ": stage beyond chain");
  }
  return reg;
}

Registry load_registry_file(const std::string& path, const FamilyDefinition& def) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open registry " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_registry(buf.str(), def);
}

std::shared_ptr<const Registry> builtin_registry(const std::string& family) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const Registry>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[family];
  if (!slot)
    slot = std::make_shared<const Registry>(load_registry_file(data_dir() + "/registry/" + family + ".reg", *builtin_family(family)));
  return slot;
}

bool CaseVerification::passed() const {
  return std::all_of(formulas.begin(), formulas.end(), [](const FormulaCheck& f) { return f.pass; }) &&
         std::all_of(claims.begin(), claims.end(), [](const ClaimCheck& c) { return c.pass; });
}

SymbolicCase::SymbolicCase(const std::string& family, const std::string& sign_case, int alexander_sign)
    : family_(family), signs_(parse_signs(sign_case)), alexander_sign_(alexander_sign) {}

const RatFunc& SymbolicCase::quantity(Quantity q) {
  if (auto it = cache_.find(q); it != cache_.end()) return it->second;
  const auto def = builtin_family(family_);
  if (q == Quantity::Leading || q == Quantity::Second) {
    const SeifertTemplate tpl = make_template(*def, signs_);
    const MultiPoly p = q == Quantity::Leading ? leading_coeff_symbolic(tpl) : second_coeff_symbolic(tpl);
    cache_[q] = RatFunc(Rational(alexander_sign_) * p);
  } else {
    const auto derivs = FamilySpec(def, signs_).symbolic_derivs(4);
    cache_[Quantity::D2] = RatFunc(derivs[2]);
    cache_[Quantity::D3] = RatFunc(derivs[3]);
    cache_[Quantity::D4] = RatFunc(derivs[4]);
  }
  return cache_.at(q);
}

RatFunc apply_chain(const RatFunc& value, const std::vector<ChainStep>& chain, int stage) {
  RatFunc out = value;
  for (int j = 0; j < stage; ++j) out = out.substitute(chain[static_cast<std::size_t>(j)].var, chain[static_cast<std::size_t>(j)].value);
  return out;
}

namespace {

// Sign claim over positive variables: a certificate if numerator and denominator each have
// coefficients of one sign, else exhaustive sampling where the chain values stay positive.
ClaimCheck check_claim(const RatFunc& value, const std::vector<ChainStep>& chain, const Claim& claim, int nvars, int box) {
  ClaimCheck out;
  out.quantity = claim.quantity;
  out.stage = claim.stage;
  out.sign = claim.sign;
  out.line = claim.line;
  const int want = claim.sign == ClaimSign::Positive ? 1 : -1;
  const int sn = coefficient_sign(value.num()), sd = coefficient_sign(value.den());
  if (sn != 0 && sd != 0) {
    out.method = "certificate";
    out.pass = sn * sd == want;
    return out;
  }
  out.method = "sampled";
  std::vector<bool> chained(static_cast<std::size_t>(nvars), false);
  for (int j = 0; j < claim.stage; ++j) chained[static_cast<std::size_t>(chain[static_cast<std::size_t>(j)].var)] = true;
  std::vector<int> free;
  for (int v = 0; v < nvars; ++v)
    if (!chained[static_cast<std::size_t>(v)]) free.push_back(v);

  std::vector<int> idx(free.size(), 1);
  out.pass = true;
  while (true) {
    std::map<int, Rational> point;
    for (std::size_t i = 0; i < free.size(); ++i) point[free[i]] = idx[i];
    // Resolve chain values in dependency order.
    bool ok = true;
    for (bool progress = true; progress;) {
      progress = false;
      for (int j = 0; j < claim.stage && ok; ++j) {
        const ChainStep& step = chain[static_cast<std::size_t>(j)];
        if (point.count(step.var)) continue;
        try {
          const Rational d = step.value.den().eval(point);
          if (d == 0) {
            ok = false;
            break;
          }
          point[step.var] = step.value.num().eval(point) / d;
          progress = true;
        } catch (const std::out_of_range&) {
        }
      }
    }
    for (int j = 0; j < claim.stage && ok; ++j) {
      const auto it = point.find(chain[static_cast<std::size_t>(j)].var);
      ok = it != point.end() && it->second > 0;
    }
    if (ok) {
      const Rational d = value.den().eval(point);
      if (d != 0) {
        ++out.samples;
        if (sgn(value.num().eval(point) / d) != want) out.pass = false;
      }
    }
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] > box) idx[k++] = 1;
    if (k == idx.size()) break;
  }
  if (out.samples == 0) out.pass = false;
  return out;
}

}  // namespace

CaseVerification verify_paper_case(const Registry& reg, const std::string& sign_case, int claim_box) {
  const std::string key = signs_to_string(parse_signs(sign_case));
  const auto blocks = reg.blocks_for(key);
  if (blocks.empty()) throw std::invalid_argument("no registry entry for " + reg.family + " " + key);
  CaseVerification out;
  out.family = reg.family;
  out.sign_case = key;
  SymbolicCase sym(reg.family, key, reg.alexander_sign);
  for (const RegistryBlock* b : blocks) {
    for (const Expectation& e : b->expects) {
      if (!e.only.empty() && e.only != key) continue;
      FormulaCheck fc;
      fc.family = reg.family;
      fc.sign_case = key;
      fc.quantity = e.quantity;
      fc.stage = e.stage;
      fc.verbatim = e.verbatim;
      fc.corrected = e.corrected.has_value();
      fc.expression = e.corrected.value_or(e.verbatim);
      fc.note = e.note;
      fc.line = e.line;
      const RatFunc computed = apply_chain(sym.quantity(e.quantity), b->chain, e.stage);
      fc.verbatim_pass = computed == apply_chain(e.expr, b->chain, e.stage);
      fc.pass = computed == apply_chain(e.effective(), b->chain, e.stage);
      out.formulas.push_back(std::move(fc));
    }
    for (const Claim& c : b->claims) {
      if (!c.only.empty() && c.only != key) continue;
      ClaimCheck cc = check_claim(apply_chain(sym.quantity(c.quantity), b->chain, c.stage), b->chain, c,
                                  static_cast<int>(reg.vars.size()), claim_box);
      cc.family = reg.family;
      cc.sign_case = key;
      out.claims.push_back(cc);
    }
  }
  return out;
}

std::vector<CaseVerification> verify_registry(const Registry& reg, int claim_box) {
  std::vector<CaseVerification> out;
  for (const auto& c : reg.registered_cases()) out.push_back(verify_paper_case(reg, c, claim_box));
  return out;
}

}  // namespace tk
