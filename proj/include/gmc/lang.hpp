#pragma once

// The .gmc source language:
//
//   # comment
//   pcm powerset db lock
//   object A B
//   gen f : A B -> A @ {db}
//   term t = (f @ {db,lock}) ; (id A * id I)
//
// Expressions: `id <word>`, a generator, an earlier term, `t ; t`, `t * t`
// and `t @ <grade>`. `@` binds tightest, then `*`, then `;`; both binary
// operators associate to the left. `I` is the empty word.

#include <string>
#include <string_view>
#include <vector>

#include "gmc/error.hpp"
#include "gmc/freecat.hpp"

namespace gmc::lang {

struct Span {
  std::size_t line = 0;
  std::size_t col = 0;
};

struct Diagnostic {
  std::string severity = "error";
  Span span;
  std::string code;  // E-PARSE, E-NAME, E-TYPE, E-GRADE, E-ORTHO
  std::string message;
  std::vector<std::string> grades;  // the two offending grades for E-ORTHO

  // "<file>:<line>:<col>: error[E-ORTHO]: <message>"
  std::string render(std::string_view file) const;
};

class DiagnosticError : public Error {
 public:
  explicit DiagnosticError(Diagnostic d);
  const Diagnostic& diagnostic() const { return d_; }

 private:
  Diagnostic d_;
};

struct Term {
  enum class Kind { id, name, compose, tensor, regrade };
  Kind kind = Kind::id;
  Span span;
  Word word;          // id
  std::string name;   // name
  std::string grade;  // regrade, as written
  std::vector<Term> args;
};

struct Binding {
  std::string name;
  Span span;
  Term term;
};

struct SourceDocument {
  SigPtr sig;
  std::vector<Binding> terms;

  const Binding* find(std::string_view name) const;
};

// Stops at the first error; E-PARSE for syntax, E-NAME for undeclared
// objects and duplicate names.
SourceDocument parse(std::string_view text);

// E-NAME for unknown terms or generators, E-TYPE for boundary mismatches,
// E-GRADE for composites at different grades or regrades that do not go
// up, E-ORTHO for tensors of non-orthogonal grades.
FreeMorphism elaborate(const SourceDocument& doc, std::string_view term);
FreeMorphism elaborate(const SourceDocument& doc, const Term& t);

// Canonical printing; parse(print(d)) prints back to the same text.
std::string print(const SourceDocument& doc);
std::string print(const Term& t);

// A term denoting exactly the slice list of m at m's grade.
Term to_term(const FreeMorphism& m);

// Every term replaced by its canonical form.
SourceDocument normalize(const SourceDocument& doc);

}  // namespace gmc::lang
