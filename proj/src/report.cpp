#include "gmc/report.hpp"

#include <algorithm>

#include "gmc/error.hpp"

namespace gmc {

std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::MalformedSpec: return "MalformedSpec";
    case Errc::LawViolation: return "LawViolation";
    case Errc::OwnerMismatch: return "OwnerMismatch";
    case Errc::Undecidable: return "Undecidable";
    case Errc::InfiniteCarrier: return "InfiniteCarrier";
    case Errc::NoJoin: return "NoJoin";
    case Errc::NoTop: return "NoTop";
    case Errc::NotEffectAlgebra: return "NotEffectAlgebra";
    case Errc::UnknownGenerator: return "UnknownGenerator";
    case Errc::NotLeq: return "NotLeq";
    case Errc::TypeMismatch: return "TypeMismatch";
    case Errc::GradeMismatch: return "GradeMismatch";
    case Errc::NonOrthogonalGrades: return "NonOrthogonalGrades";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::OpInvalid: return "OpInvalid";
    case Errc::NotDirected: return "NotDirected";
    case Errc::NotTotal: return "NotTotal";
    case Errc::ParseError: return "ParseError";
    case Errc::IllFormed: return "IllFormed";
    case Errc::NotIdempotent: return "NotIdempotent";
    case Errc::NoBraiding: return "NoBraiding";
    case Errc::InvalidHom: return "InvalidHom";
    case Errc::AxiomFailure: return "AxiomFailure";
    case Errc::EnumerationTooLarge: return "EnumerationTooLarge";
    case Errc::PcmMismatch: return "PcmMismatch";
  }
  return "Error";
}

void Report::pass(std::string name, std::size_t instances) {
  checks_.push_back(Check{std::move(name), true, {}, instances, false});
}

void Report::fail(std::string name, std::string counterexample, std::size_t instances) {
  checks_.push_back(Check{std::move(name), false, std::move(counterexample), instances, false});
}

void Report::note(std::string name, std::string detail) {
  checks_.push_back(Check{std::move(name), true, std::move(detail), 0, true});
}

void Report::merge(const Report& other) {
  checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
}

bool Report::ok() const {
  return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; });
}

const Check* Report::find(const std::string& name) const {
  for (const auto& c : checks_)
    if (c.name == name) return &c;
  return nullptr;
}

bool Report::passed(const std::string& name) const {
  const Check* c = find(name);
  return c != nullptr && c->pass;
}

std::string Report::render() const {
  std::string out;
  for (const auto& c : checks_) {
    out += c.name;
    if (c.info) {
      out += " INFO " + c.detail;
    } else if (c.pass) {
      out += " PASS";
    } else {
      out += " FAIL";
      if (!c.detail.empty()) out += " " + c.detail;
    }
    out += '\n';
  }
  return out;
}

}  // namespace gmc
