#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "twistknot/algebra/half_laurent.hpp"
#include "twistknot/family/engine.hpp"

namespace tk {

// Arcs in counterclockwise order from the incoming under-strand; the over strand runs
// b -> d when over_from_b is set, else d -> b.
struct Crossing {
  std::array<int, 4> arcs{};
  bool over_from_b = true;
  // -1 when the over strand runs b -> d, +1 otherwise.
  int sign() const { return over_from_b ? -1 : 1; }
};

struct PDCode {
  std::vector<Crossing> crossings;

  int size() const { return static_cast<int>(crossings.size()); }
  int writhe() const;
  // Every label must occur exactly twice; throws std::invalid_argument otherwise.
  void validate() const;
  // Relabels arcs to 0..2c-1 in order of first appearance.
  PDCode compacted() const;
  std::string to_string() const;
};

// "X a b c d" lines; optional "orient <i> <b|d>" lines give the over strand's entry side.
// Without them the knot-table convention applies: consecutive labels along one component.
PDCode parse_pd(const std::string& text);

// Laurent polynomial in A with integer coefficients, keyed by the A exponent.
struct BracketPoly {
  HalfLaurent poly;          // key e holds the coefficient of A^e
  std::uint64_t states = 0;  // number of smoothing states summed
};

inline constexpr int kMaxBracketCrossings = 24;

// Kauffman state sum with loop counting by union-find. Throws std::length_error above the limit.
BracketPoly kauffman_bracket_serial(const PDCode& pd);
// Same sum with state ranges split across OpenMP threads; exact merge.
BracketPoly kauffman_bracket(const PDCode& pd);
// (-A^3)^(-w) <D> with A = t^(-1/4).
HalfLaurent jones_from_pd(const PDCode& pd);

struct TemplateBand {
  int parity = 0;
  int base_sign = 1;
  std::vector<int> crossings;  // the first one is grown into the twist chain
};

// A diagram whose crossings are grouped into the family's twist bands.
struct DiagramTemplate {
  std::string family;
  PDCode base;
  std::vector<TemplateBand> bands;

  std::vector<int> base_signs() const;
};

DiagramTemplate parse_template(const std::string& text);
DiagramTemplate load_template_file(const std::string& path);
// Loads <data_dir>/diagrams/<family>.pd.
DiagramTemplate builtin_template(const std::string& family);

// Band i carries s_i (2 n_i - m_i) crossings; other crossings are copied.
PDCode expand_twists(const DiagramTemplate& tpl, const std::vector<int>& signs, const TwistVector& n);
// Crossing count of expand_twists without building it.
int expanded_size(const DiagramTemplate& tpl, const TwistVector& n);

// jones_from_pd(expand_twists(...)) == f.assemble_jones(n). Throws std::length_error over budget.
bool crosscheck(const FamilySpec& f, const DiagramTemplate& tpl, const TwistVector& n, int crossing_budget = 18);

}  // namespace tk
