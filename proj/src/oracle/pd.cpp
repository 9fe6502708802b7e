#include "twistknot/oracle/pd.hpp"

#include <omp.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "twistknot/data_dir.hpp"

namespace tk {

int PDCode::writhe() const {
  int w = 0;
  for (const auto& c : crossings) w += c.sign();
  return w;
}

void PDCode::validate() const {
  std::map<int, int> count;
  for (const auto& c : crossings)
    for (int a : c.arcs) ++count[a];
  for (const auto& [label, k] : count)
    if (k != 2) throw std::invalid_argument("PD label " + std::to_string(label) + " occurs " + std::to_string(k) + " times");
}

PDCode PDCode::compacted() const {
  std::map<int, int> relabel;
  PDCode out = *this;
  for (auto& c : out.crossings)
    for (int& a : c.arcs) {
      auto [it, inserted] = relabel.try_emplace(a, static_cast<int>(relabel.size()));
      a = it->second;
    }
  return out;
}

std::string PDCode::to_string() const {
  std::ostringstream out;
  for (const auto& c : crossings) out << "X " << c.arcs[0] << ' ' << c.arcs[1] << ' ' << c.arcs[2] << ' ' << c.arcs[3] << '\n';
  for (std::size_t i = 0; i < crossings.size(); ++i) out << "orient " << i << ' ' << (crossings[i].over_from_b ? 'b' : 'd') << '\n';
  return out.str();
}

namespace {

struct ParsedDiagram {
  PDCode pd;
  std::string family;
  std::vector<TemplateBand> bands;
};

ParsedDiagram parse_diagram(const std::string& text) {
  ParsedDiagram out;
  std::map<int, bool> orient;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string key;
    if (!(words >> key)) continue;
    auto fail = [&](const std::string& what) {
      throw std::invalid_argument("diagram line " + std::to_string(lineno) + ": " + what);
    };
    if (key == "X") {
      Crossing c;
      for (int& a : c.arcs)
        if (!(words >> a)) fail("X needs four labels");
      out.pd.crossings.push_back(c);
    } else if (key == "orient") {
      int idx = -1;
      char side = 0;
      if (!(words >> idx >> side) || (side != 'b' && side != 'd')) fail("orient needs an index and b or d");
      orient[idx] = side == 'b';
    } else if (key == "family") {
      words >> out.family;
    } else if (key == "band") {
      TemplateBand b;
      int index = 0;
      std::string parity, sign;
      if (!(words >> index >> parity >> sign)) fail("band needs index, parity and sign");
      if (index != static_cast<int>(out.bands.size()) + 1) fail("bands must be listed in order");
      b.parity = parity == "odd" ? 1 : parity == "even" ? 0 : -1;
      b.base_sign = sign == "+" ? 1 : sign == "-" ? -1 : 0;
      if (b.parity < 0 || b.base_sign == 0) fail("bad band parity or sign");
      for (int x; words >> x;) b.crossings.push_back(x);
      if (b.crossings.empty()) fail("band without crossings");
      out.bands.push_back(b);
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  out.pd.validate();
  const int n = out.pd.size();
  const int labels = 2 * n;
  for (int i = 0; i < n; ++i) {
    auto& c = out.pd.crossings[i];
    if (auto it = orient.find(i); it != orient.end()) {
      c.over_from_b = it->second;
    } else if (orient.empty()) {
      // Knot-table convention: the over strand leaves on the next label.
      c.over_from_b = c.arcs[3] == (c.arcs[1] + 1) % labels;
    } else {
      throw std::invalid_argument("orientation block must cover every crossing");
    }
  }
  for (const auto& b : out.bands)
    for (int x : b.crossings)
      if (x < 0 || x >= n) throw std::invalid_argument("band crossing index out of range");
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// One state's loop count; bit i set means the A-smoothing at crossing i.
int count_loops(const std::vector<std::array<int, 4>>& xs, int labels, std::uint64_t state, int* parent) {
  for (int i = 0; i < labels; ++i) parent[i] = i;
  auto find = [parent](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  int loops = labels;
  auto unite = [&](int x, int y) {
    x = find(x);
    y = find(y);
    if (x != y) {
      parent[x] = y;
      --loops;
    }
  };
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto& a = xs[i];
    if ((state >> i) & 1U) {
      unite(a[0], a[1]);
      unite(a[2], a[3]);
    } else {
      unite(a[0], a[3]);
      unite(a[1], a[2]);
    }
  }
  return loops;
}

BracketPoly assemble_bracket(const std::vector<std::uint64_t>& hist, int n, int labels) {
  const HalfLaurent delta = HalfLaurent::monomial(-1, 2) + HalfLaurent::monomial(-1, -2);
  std::vector<HalfLaurent> dpow{HalfLaurent::constant(1)};
  BracketPoly out;
  for (int na = 0; na <= n; ++na)
    for (int loops = 1; loops <= labels; ++loops) {
      const std::uint64_t count = hist[static_cast<std::size_t>(na * (labels + 1) + loops)];
      if (count == 0) continue;
      out.states += count;
      while (static_cast<int>(dpow.size()) < loops) dpow.push_back(dpow.back() * delta);
      Integer c;
      mpz_set_ui(c.get_mpz_t(), count);
      out.poly += (c * dpow[loops - 1]).shifted(2 * na - n);
    }
  return out;
}

void check_size(const PDCode& pd) {
  if (pd.size() > kMaxBracketCrossings)
    throw std::length_error("bracket limited to " + std::to_string(kMaxBracketCrossings) + " crossings, got " + std::to_string(pd.size()));
}

}  // namespace

PDCode parse_pd(const std::string& text) { return parse_diagram(text).pd; }

BracketPoly kauffman_bracket_serial(const PDCode& pd) {
  check_size(pd);
  const PDCode c = pd.compacted();
  const int n = c.size(), labels = 2 * n;
  std::vector<std::array<int, 4>> xs;
  for (const auto& x : c.crossings) xs.push_back(x.arcs);
  std::vector<std::uint64_t> hist(static_cast<std::size_t>((n + 1) * (labels + 1)), 0);
  std::vector<int> parent(static_cast<std::size_t>(std::max(labels, 1)));
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    const int na = __builtin_popcountll(s);
    ++hist[static_cast<std::size_t>(na * (labels + 1) + count_loops(xs, labels, s, parent.data()))];
  }
  if (n == 0) return {HalfLaurent::constant(1), 1};
  return assemble_bracket(hist, n, labels);
}

BracketPoly kauffman_bracket(const PDCode& pd) {
  check_size(pd);
  const PDCode c = pd.compacted();
  const int n = c.size(), labels = 2 * n;
  if (n == 0) return {HalfLaurent::constant(1), 1};
  std::vector<std::array<int, 4>> xs;
  for (const auto& x : c.crossings) xs.push_back(x.arcs);
  const std::size_t width = static_cast<std::size_t>((n + 1) * (labels + 1));
  std::vector<std::uint64_t> hist(width, 0);
  const auto total = static_cast<std::int64_t>(std::uint64_t{1} << n);
#pragma omp parallel
  {
    std::vector<std::uint64_t> local(width, 0);
    std::vector<int> parent(static_cast<std::size_t>(labels));
#pragma omp for schedule(static)
    for (std::int64_t s = 0; s < total; ++s) {
      const auto state = static_cast<std::uint64_t>(s);
      const int na = __builtin_popcountll(state);
      ++local[static_cast<std::size_t>(na * (labels + 1) + count_loops(xs, labels, state, parent.data()))];
    }
#pragma omp critical
    for (std::size_t i = 0; i < width; ++i) hist[i] += local[i];
  }
  return assemble_bracket(hist, n, labels);
}

HalfLaurent jones_from_pd(const PDCode& pd) {
  const BracketPoly b = kauffman_bracket(pd);
  const int w = pd.writhe();
  HalfLaurent out;
  for (const auto& [k, c] : b.poly.terms()) {
    const int a_exp = k - 3 * w;  // A^(k - 3w), A = t^(-1/4)
    if (a_exp % 2 != 0) throw std::logic_error("bracket exponent not compatible with t^(1/2)");
    out += HalfLaurent::monomial((w % 2 == 0) ? c : Integer(-c), -a_exp / 2);
  }
  return out;
}

std::vector<int> DiagramTemplate::base_signs() const {
  std::vector<int> s;
  for (const auto& b : bands) s.push_back(b.base_sign);
  return s;
}

DiagramTemplate parse_template(const std::string& text) {
  ParsedDiagram d = parse_diagram(text);
  if (d.bands.empty()) throw std::invalid_argument("template has no bands");
  return {d.family, d.pd, d.bands};
}

DiagramTemplate load_template_file(const std::string& path) { return parse_template(read_file(path)); }

DiagramTemplate builtin_template(const std::string& family) { return load_template_file(data_dir() + "/diagrams/" + family + ".pd"); }

int expanded_size(const DiagramTemplate& tpl, const TwistVector& n) {
  int size = tpl.base.size();
  for (std::size_t i = 0; i < tpl.bands.size(); ++i) size += static_cast<int>(2 * (n[i] - 1));
  return size;
}

PDCode expand_twists(const DiagramTemplate& tpl, const std::vector<int>& signs, const TwistVector& n) {
  if (signs.size() != tpl.bands.size() || n.size() != tpl.bands.size())
    throw std::invalid_argument("expand_twists: sign and twist vectors must match the template bands");
  struct Growth {
    long count;
    int sign;
  };
  std::map<int, Growth> grow;
  std::vector<bool> flip(static_cast<std::size_t>(tpl.base.size()), false);
  for (std::size_t i = 0; i < tpl.bands.size(); ++i) {
    const auto& b = tpl.bands[i];
    if (n[i] < 1) throw std::invalid_argument("twist counts must be positive");
    grow[b.crossings[0]] = {2 * n[i] - b.parity - static_cast<long>(b.crossings.size() - 1), signs[i]};
    if (signs[i] != b.base_sign)
      for (std::size_t j = 1; j < b.crossings.size(); ++j) flip[b.crossings[j]] = true;
  }
  int fresh = 0;
  for (const auto& c : tpl.base.crossings)
    for (int a : c.arcs) fresh = std::max(fresh, a + 1);

  PDCode out;
  for (int i = 0; i < tpl.base.size(); ++i) {
    const Crossing& x = tpl.base.crossings[i];
    const auto [a, b, c, d] = x.arcs;
    if (auto it = grow.find(i); it != grow.end()) {
      // Corners of the twist region counterclockwise: left-top, left-bottom, right-bottom, right-top.
      // Direction +1 means the strand enters the region at that corner.
      int lt, lb, rb, rt, dlt, dlb;
      if (x.over_from_b) {
        lt = d, lb = a, rb = b, rt = c, dlt = -1, dlb = 1;
      } else {
        lt = a, lb = b, rb = c, rt = d, dlt = 1, dlb = -1;
      }
      const int right_top = rt, right_bottom = rb;
      const auto [count, sign] = it->second;
      for (long j = 0; j < count; ++j) {
        const bool last = j == count - 1;
        const int nrt = last ? right_top : fresh++;
        const int nrb = last ? right_bottom : fresh++;
        const int drt = -dlb, drb = -dlt;
        const std::array<std::pair<int, int>, 4> corners{{{lt, dlt}, {lb, dlb}, {nrb, drb}, {nrt, drt}}};
        // A positive band puts the LB-RT diagonal on top.
        const std::array<int, 2> under = sign > 0 ? std::array<int, 2>{0, 2} : std::array<int, 2>{1, 3};
        const std::array<int, 2> over = sign > 0 ? std::array<int, 2>{1, 3} : std::array<int, 2>{0, 2};
        const int ui = corners[under[0]].second == 1 ? under[0] : under[1];
        const int oin = corners[over[0]].second == 1 ? corners[over[0]].first : corners[over[1]].first;
        Crossing y;
        for (int q = 0; q < 4; ++q) y.arcs[q] = corners[(ui + q) % 4].first;
        y.over_from_b = oin == y.arcs[1];
        out.crossings.push_back(y);
        lt = nrt, lb = nrb, dlt = -drt, dlb = -drb;
      }
    } else if (flip[i]) {
      // Switch over and under; the old under strand becomes the over strand entering at a.
      Crossing y;
      y.arcs = x.over_from_b ? std::array<int, 4>{b, c, d, a} : std::array<int, 4>{d, a, b, c};
      y.over_from_b = y.arcs[1] == a;
      out.crossings.push_back(y);
    } else {
      out.crossings.push_back(x);
    }
  }
  out.validate();
  return out.compacted();
}

bool crosscheck(const FamilySpec& f, const DiagramTemplate& tpl, const TwistVector& n, int crossing_budget) {
  const int size = expanded_size(tpl, n);
  if (size > crossing_budget)
    throw std::length_error("crosscheck needs " + std::to_string(size) + " crossings, budget is " + std::to_string(crossing_budget));
  return jones_from_pd(expand_twists(tpl, f.signs(), n)) == f.assemble_jones(n);
}

}  // namespace tk
