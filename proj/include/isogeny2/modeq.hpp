#pragma once

// Modular equations as sparse integer polynomials in (J, J'), read from a
// line-based text format.

#include <string>
#include <vector>

#include "isogeny2/field.hpp"
#include "isogeny2/matrix.hpp"

namespace isogeny2 {

enum class ModeqKind { Siegel, HilbertQ5 };

struct ModeqTerm {
  std::vector<uint32_t> exps;  // e_1..e_n then e'_1..e'_n
  BigInt coeff;
};

struct ModeqPoly {
  std::vector<ModeqTerm> terms;
};

struct ModularEquationSet {
  ModeqKind kind = ModeqKind::Siegel;
  int ell = 0;                  // Siegel
  int64_t norm = 0, trace = 0;  // Hilbert, beta by norm and trace
  int nvars = 0;                // 3 (Igusa) or 2 (Gundlach) per side
  std::vector<ModeqPoly> polys;
};

// Throws ParseError (with line number) or WrongArity.
ModularEquationSet parse_modeq(const std::string& text);
ModularEquationSet load_modeq(const std::string& path);

struct ModeqEvaluation {
  std::vector<Fe> values;
  Mat DL, DR;  // d Psi_n / d J_k and d Psi_n / d J'_k
};

// left, right live in F. Throws InvalidArgument when a polynomial vanishes
// identically mod p, WrongArity on mismatched tuples.
ModeqEvaluation evaluate_and_differentiate(const ModularEquationSet& M, const FieldPtr& F,
                                           const std::vector<Fe>& left,
                                           const std::vector<Fe>& right);

}  // namespace isogeny2
