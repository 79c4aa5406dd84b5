#pragma once

#include <stdexcept>
#include <string>

namespace isogeny2 {

enum class Errc {
  InvalidArgument,
  FieldMismatch,
  DegreeOverflow,
  SquareInField,
  NotIrreducible,
  ZeroConstantTerm,
  NonSquareLeadingTerm,
  OddValuation,
  PrecisionTooLow,
  NoSolution,
  OrderTooLarge,
  SingularCurve,
  ZeroI4,
  NonGenericInvariants,
  NoConicPoint,
  PointAtInfinity,
  NonSquareBranch,
  NoGenericPoint,
  ParseError,
  WrongArity,
  SingularMatrix,
  NonDiagonalSolution,
  ZeroG1,
  NotOnHumbert,
  NonSquare,
  DegenerateGundlach,
  InconsistentChainRule,
  SingularJacobian,
  EqualRoots,
  NonSquareDiscriminant,
  NonInvertibleLeading,
  ResidualNonzero,
  CandidateRejected,
  NotAPerfectSquare,
  SignMismatch,
  NonGenericPosition,
};

const char* errc_name(Errc e);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace isogeny2
