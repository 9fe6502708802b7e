// Command-line front end. Exit codes: 0 all checks pass, 1 a check failed, 2 usage error.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "twistknot/casework/report.hpp"
#include "twistknot/casework/sweep.hpp"
#include "twistknot/oracle/pd.hpp"

namespace {

using namespace tk;

struct Options {
  std::string family = "7_6";
  std::string signs;
  std::string twists;
  std::string data_dir;
  std::string json_path;
  std::string text_path;
  std::vector<std::string> cases;
  int range = 4;
  int budget = 18;
  int count = 24;
  int workers = 0;
  int box = 30;
  bool root5 = false;
  bool serial = false;
  bool no_properties = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

TwistVector parse_twists(const std::string& text, int bands) {
  TwistVector n;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    try {
      std::size_t used = 0;
      const long v = std::stol(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      n.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("bad twist count '" + item + "'");
    }
  }
  if (static_cast<int>(n.size()) != bands) throw UsageError("expected " + std::to_string(bands) + " twist counts");
  for (long v : n)
    if (v < 1) throw UsageError("twist counts must be positive");
  return n;
}

std::shared_ptr<const FamilyDefinition> family_of(const Options& o) {
  const auto names = builtin_family_names();
  if (std::find(names.begin(), names.end(), o.family) == names.end()) throw UsageError("unknown family " + o.family);
  return builtin_family(o.family);
}

std::vector<int> signs_of(const Options& o, const FamilyDefinition& def) {
  if (o.signs.empty()) throw UsageError("--signs is required");
  std::vector<int> s;
  try {
    s = parse_signs(o.signs);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (static_cast<int>(s.size()) != def.bands()) throw UsageError("family " + def.name + " needs " + std::to_string(def.bands()) + " signs");
  return s;
}

void write_file(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

std::string join(const std::vector<Rational>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + to_string(v[i]);
  return s;
}

int cmd_jones(const Options& o) {
  const auto def = family_of(o);
  const FamilySpec f(def, signs_of(o, *def));
  const TwistVector n = parse_twists(o.twists, f.size());
  const HalfLaurent v = f.assemble_jones(n);
  std::cout << v.to_string() << "\n";
  std::cout << "derivatives at 1 (orders 0..4): " << join(f.jones_derivs(n, 4)) << "\n";
  return 0;
}

int cmd_alexander(const Options& o) {
  const auto def = family_of(o);
  const auto signs = signs_of(o, *def);
  const SeifertTemplate tpl = make_template(*def, signs);
  const TwistVector n = parse_twists(o.twists, def->bands());
  const auto conway = conway_poly(tpl, n);
  std::cout << "Alexander: " << alexander_poly(tpl, n).to_string() << "\n";
  std::cout << "Conway: " << conway.to_string() << "\n";
  std::cout << "a2 = " << conway.a(2).get_str() << ", a4 = " << conway.a(4).get_str() << ", a6 = " << conway.a(6).get_str() << "\n";
  return 0;
}

int cmd_check(const Options& o) {
  const auto def = family_of(o);
  const std::string key = signs_to_string(signs_of(o, *def));
  const CaseContext ctx(o.family, key);
  PropertyTally tally;
  const InstanceResult r = evaluate_instance(ctx, parse_twists(o.twists, def->bands()), o.root5, !o.no_properties, tally);
  if (!r.error.empty()) {
    std::cerr << "error: " << r.error << "\n";
    return 1;
  }
  std::cout << r.verdict.instance << ": " << r.verdict.classification() << "\n";
  std::cout << "leading Alexander nonzero " << r.verdict.alexander_leading_nonzero << ", V''(1) nonzero " << r.verdict.d2_nonzero
            << ", V'''(1) nonzero " << r.verdict.d3_nonzero << ", Conway nontrivial " << r.verdict.conway_nontrivial
            << ", fourth derivative excludes " << r.verdict.d4_excludes << "\n";
  if (r.verdict.is_exception())
    std::cout << "Jones is 1: " << r.jones_is_one << ", Conway is 1: " << r.conway_is_one << ", root5 inconclusive: " << r.root5_inconclusive
              << "\n";
  for (const auto& p : r.failed_properties) std::cout << "property failed: " << p << "\n";
  return r.failed_properties.empty() ? 0 : 1;
}

int cmd_sweep(const Options& o) {
  family_of(o);
  SweepConfig cfg;
  cfg.family = o.family;
  cfg.range = o.range;
  cfg.use_root5 = o.root5;
  cfg.crossing_budget = o.budget;
  cfg.parallel = !o.serial;
  cfg.workers = o.workers;
  cfg.check_properties = !o.no_properties;
  cfg.cases = o.cases;
  if (cfg.range < 1) throw UsageError("--range must be at least 1");
  const SweepSummary s = summarize(cfg, sweep(cfg));
  const std::string text = format_text(s);
  std::cout << text;
  write_file(o.text_path, text);
  write_file(o.json_path, to_json(s).dump(2) + "\n");
  return s.passed() ? 0 : 1;
}

int cmd_verify(const Options& o, bool all_families) {
  std::vector<std::string> families = all_families ? builtin_family_names() : std::vector<std::string>{o.family};
  nlohmann::json out = nlohmann::json::array();
  bool ok = true;
  for (const auto& fam : families) {
    Options one = o;
    one.family = fam;
    family_of(one);
    const auto checks = verify_registry(*builtin_registry(fam));
    std::cout << format_text(checks);
    for (const auto& c : checks) {
      ok = ok && c.passed();
      out.push_back(to_json(c));
    }
  }
  write_file(o.json_path, out.dump(2) + "\n");
  return ok ? 0 : 1;
}

int cmd_crosscheck(const Options& o) {
  const auto def = family_of(o);
  bool ok = true;
  if (!o.twists.empty()) {
    const FamilySpec f(def, signs_of(o, *def));
    const TwistVector n = parse_twists(o.twists, f.size());
    ok = crosscheck(f, builtin_template(o.family), n, o.budget);
    std::cout << o.family << " " << f.case_string() << " " << format_twists(n) << ": " << (ok ? "agree" : "DISAGREE") << "\n";
  } else {
    const auto samples = crosscheck_family(o.family, o.count, o.budget);
    for (const auto& s : samples) {
      ok = ok && s.agree;
      std::cout << o.family << " " << s.sign_case << " " << format_twists(s.twists) << " " << s.crossings << " crossings: "
                << (s.agree ? "agree" : "DISAGREE") << "\n";
    }
    std::cout << samples.size() << " instances checked\n";
    if (static_cast<int>(samples.size()) < o.count) {
      std::cout << "fewer instances than requested fit the crossing budget\n";
      ok = false;
    }
  }
  return ok ? 0 : 1;
}

int cmd_witnesses(const Options& o) {
  family_of(o);
  const auto reg = builtin_registry(o.family);
  bool ok = true;
  for (const auto& block : reg->blocks) {
    if (!block.requires_d4) continue;
    for (const auto& c : block.cases) {
      const auto found = find_d4_witnesses(*reg, c, o.box, 2);
      bool any = false;
      for (const auto& w : found) {
        any = any || w.verdict.excluded_by == Gate::D4;
        std::cout << o.family << " " << c << " " << format_twists(w.twists) << ": " << w.verdict.classification() << "\n";
      }
      if (!any) std::cout << o.family << " " << c << ": no instance reaches the fourth-derivative gate\n";
      ok = ok && any;
    }
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cosmetic surgery obstructions for twist families of 7_6, 10_58 and 8_12"};
  app.require_subcommand(1);
  Options o;
  if (const char* w = std::getenv("TWISTKNOT_WORKERS")) o.workers = std::atoi(w);
  app.add_option("--data-dir", o.data_dir, "directory holding families/, diagrams/ and registry/");

  auto family_opt = [&](CLI::App* sub) { sub->add_option("--family", o.family, "7_6, 10_58 or 8_12")->capture_default_str(); };
  auto instance_opts = [&](CLI::App* sub, bool required) {
    family_opt(sub);
    auto* s = sub->add_option("--signs", o.signs, "sign case such as ++-+-");
    auto* t = sub->add_option("--twists", o.twists, "comma-separated positive twist counts");
    if (required) {
      s->required();
      t->required();
    }
  };

  auto* jones = app.add_subcommand("jones", "Jones polynomial and its derivatives at 1");
  instance_opts(jones, true);
  auto* alexander = app.add_subcommand("alexander", "Alexander and Conway polynomials");
  instance_opts(alexander, true);
  auto* check = app.add_subcommand("check", "obstruction verdict for one instance");
  instance_opts(check, true);
  check->add_flag("--root5", o.root5, "also evaluate at a fifth root of unity");
  check->add_flag("--no-properties", o.no_properties, "skip the property checks");

  auto* sweep_cmd = app.add_subcommand("sweep", "all sign cases over a twist box");
  family_opt(sweep_cmd);
  sweep_cmd->add_option("--range", o.range, "twist counts run over [1..N]")->capture_default_str();
  sweep_cmd->add_option("--case", o.cases, "restrict to these sign cases");
  sweep_cmd->add_flag("--root5", o.root5, "enable the fifth-root-of-unity gate");
  sweep_cmd->add_option("--budget", o.budget, "crossing budget for oracle spot checks, 0 disables")->capture_default_str();
  sweep_cmd->add_option("--workers", o.workers, "OpenMP threads (default: TWISTKNOT_WORKERS or all)");
  sweep_cmd->add_flag("--serial", o.serial, "use the serial reference loop");
  sweep_cmd->add_flag("--no-properties", o.no_properties, "skip the property checks");
  sweep_cmd->add_option("--json", o.json_path, "write the JSON report here");
  sweep_cmd->add_option("--text", o.text_path, "write the text table here");

  auto* verify = app.add_subcommand("verify-paper", "compare registered case formulas with the symbolic engine");
  family_opt(verify);
  verify->add_option("--json", o.json_path, "write the JSON report here");

  auto* cross = app.add_subcommand("crosscheck", "compare with the state-sum Jones polynomial");
  instance_opts(cross, false);
  cross->add_option("--count", o.count, "instances to sample when no twists are given")->capture_default_str();
  cross->add_option("--budget", o.budget, "largest diagram to expand")->capture_default_str();

  auto* witnesses = app.add_subcommand("witnesses", "instances that only the fourth-derivative gate excludes");
  family_opt(witnesses);
  witnesses->add_option("--box", o.box, "search bound for the free chain variables")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (!o.data_dir.empty()) setenv("TWISTKNOT_DATA_DIR", o.data_dir.c_str(), 1);

  try {
    if (*jones) return cmd_jones(o);
    if (*alexander) return cmd_alexander(o);
    if (*check) return cmd_check(o);
    if (*sweep_cmd) return cmd_sweep(o);
    if (*verify) return cmd_verify(o, verify->count("--family") == 0);
    if (*cross) return cmd_crosscheck(o);
    if (*witnesses) return cmd_witnesses(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
