#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gmc {

enum class Errc {
  MalformedSpec,
  LawViolation,
  OwnerMismatch,
  Undecidable,
  InfiniteCarrier,
  NoJoin,
  NoTop,
  NotEffectAlgebra,
  UnknownGenerator,
  NotLeq,
  TypeMismatch,
  GradeMismatch,
  NonOrthogonalGrades,
  BudgetExceeded,
  OpInvalid,
  NotDirected,
  NotTotal,
  ParseError,
  IllFormed,
  NotIdempotent,
  NoBraiding,
  InvalidHom,
  AxiomFailure,
  EnumerationTooLarge,
  PcmMismatch,
};

std::string_view errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace gmc
