#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gmc/pcm.hpp"

namespace gmc {

// Objects of the free category: words over the object generators. The empty
// word is the unit I.
using Word = std::vector<std::string>;

std::string show_word(const Word& w);

struct GeneratorDecl {
  std::string name;
  Word dom;
  Word cod;
  Grade grade;
};

class Signature {
 public:
  Signature(Pcm pcm, std::vector<std::string> objects, std::vector<GeneratorDecl> generators);

  const Pcm& pcm() const { return pcm_; }
  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<GeneratorDecl>& generators() const { return gens_; }
  bool has_object(const std::string& name) const;
  const GeneratorDecl* find(const std::string& name) const;
  const GeneratorDecl& generator(const std::string& name) const;  // UnknownGenerator

 private:
  Pcm pcm_;
  std::vector<std::string> objects_;
  std::vector<GeneratorDecl> gens_;
};

using SigPtr = std::shared_ptr<const Signature>;

SigPtr make_signature(Pcm pcm, std::vector<std::string> objects, std::vector<GeneratorDecl> generators);

// A generator whiskered by identity wires: left . gen . right.
struct Slice {
  Word left;
  std::string gen;
  Word right;
  friend bool operator==(const Slice&, const Slice&) = default;
};

struct FreeMorphism {
  SigPtr sig;
  Grade grade;  // ambient grade
  Word dom;
  Word cod;
  std::vector<Slice> slices;

  friend bool operator==(const FreeMorphism& a, const FreeMorphism& b) {
    return a.sig == b.sig && a.grade == b.grade && a.dom == b.dom && a.cod == b.cod &&
           a.slices == b.slices;
  }
};

FreeMorphism identity(const SigPtr& sig, const Word& w, const Grade& c);
FreeMorphism generator(const SigPtr& sig, const std::string& name);
// Builds a morphism from a slice list, validating chaining and admissibility.
FreeMorphism from_slices(const SigPtr& sig, const Grade& c, const Word& dom, std::vector<Slice> slices);

FreeMorphism regrade(const FreeMorphism& m, const Grade& c);
FreeMorphism compose(const FreeMorphism& m1, const FreeMorphism& m2);
FreeMorphism tensor(const FreeMorphism& m1, const FreeMorphism& m2);

// Lexicographically least exchange-equivalent slice list under the key
// (wire start, generator name).
FreeMorphism canonical_form(const FreeMorphism& m);
bool equal_at(const FreeMorphism& m1, const FreeMorphism& m2, const Grade& c);
// Breadth-first search over exchange moves; BudgetExceeded past max_states.
bool equal_oracle(const FreeMorphism& m1, const FreeMorphism& m2, const Grade& c,
                  std::size_t max_states = 500000);
// Every slice list reachable from m by one exchange move.
std::vector<FreeMorphism> exchange_neighbours(const FreeMorphism& m);

std::vector<Grade> valid_grades(const FreeMorphism& m);
bool admissible_at(const FreeMorphism& m, const Grade& c);

// "left | gen@grade | right" per slice, I for empty words.
std::string show_slice(const Signature& sig, const Slice& s);
std::string show_slices(const FreeMorphism& m);

// The two-layer reading of a signature whose PCM has a top: pure morphisms
// live at grade 0, effectful ones at the top grade.
class EffectfulView {
 public:
  explicit EffectfulView(SigPtr sig);  // NoTop

  const Grade& top() const { return top_; }
  bool is_pure(const FreeMorphism& m) const;
  bool is_effectful(const FreeMorphism& m) const;
  FreeMorphism pure_identity(const Word& w) const;
  FreeMorphism include(const FreeMorphism& pure) const;
  FreeMorphism compose_effectful(const FreeMorphism& a, const FreeMorphism& b) const;
  // Rejected (NonOrthogonalGrades) exactly when top + top is undefined.
  FreeMorphism tensor_effectful(const FreeMorphism& a, const FreeMorphism& b) const;
  FreeMorphism tensor_mixed(const FreeMorphism& pure, const FreeMorphism& effectful) const;

 private:
  SigPtr sig_;
  Grade top_;
};

}  // namespace gmc
