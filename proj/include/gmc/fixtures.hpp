#pragma once

// Small hand-built finite models shared by the tests, the acceptance suite
// and the CLI.

#include <memory>
#include <string>
#include <vector>

#include "gmc/convolution.hpp"
#include "gmc/finmodel.hpp"
#include "gmc/freecat.hpp"

namespace gmc::fixtures {

// One object I and a single morphism "*" in every hom-set, with trivial
// braiding. Valid over any finite PCM.
FiniteGradedModel terminal(const Pcm& p);

// Effectful categories over objects {I, A} with A (x) A = A. The pure side is
// the thin category with I <= A; the effectful side pairs each arrow of the
// pure side with an element of a finite monoid:
//   "m3"   {id, c0, c1}, c0 and c1 left zeros (neither is central)
//   "flag" {0, 1} under or
//   "t2"   all self-maps of a two-element set
// Both sides carry the trivial symmetry.
EffectfulData effectful(const std::string& monoid);  // MalformedSpec
const std::vector<std::string>& effectful_names();
FiniteGradedModel effectful_model(const std::string& monoid);

// The descriptor of a two-element chain 0 < 1 as a semilattice, and a
// three-element table 0, h, 1 with h + h = 1, standing in for the unit
// interval discretized at halves.
inline constexpr const char* chain2 = "semilattice 0 1 : 0<1";
inline constexpr const char* halves = "table 0 h 1 : h+h=1";
// Natural numbers under + truncated at 2.
inline constexpr const char* nat2 = "table 0 1 2 : 1+1=2";

// Descriptors of the finite PCMs used for exhaustive law checks, each with
// at most 16 elements.
const std::vector<std::string>& finite_pcms();

// hom_e(I,I) = {0..level(e)} with composition and tensor given by max and
// inclusions as regradings. `level` must send the PCM's sum to an upper bound
// of the summands' levels for this to be a model; used with nat2 (level = n)
// and chain2 (level = n).
FiniteGradedModel level_model(const Pcm& p);

// Objects {I, A} with A (x) A = A; hom(x,y) is {0, 1} when x <= y except
// hom(I,I) = {0}, and every operation is "or". Valid over any finite PCM.
FiniteGradedModel or_model(const Pcm& p);

// Models over PCMs with a top for the coreflection suite.
struct Topful {
  std::string name;
  std::shared_ptr<const FiniteGradedModel> model;
};
std::vector<Topful> coreflection_fixtures();

// Every free morphism over `sig` (generators must preserve word length) with
// at most `max_slices` slices between words of length at most `max_word`,
// identified up to equality at each grade. Longer words collapse into an
// absorbing object "Omega" and longer composites into a label "omega" present
// in every inhabited hom-set. MalformedSpec on a generator that changes
// length; InfiniteCarrier if the PCM is infinite.
FiniteGradedModel truncation(const SigPtr& sig, std::size_t max_word, std::size_t max_slices);

// The signature used for the truncation fixtures: over two, one object A,
// f : A -> A at 1 and p : A -> A at 0.
SigPtr truncation_signature();

// Copies of valid models with one table entry changed, and the check item
// each is meant to break.
struct Mutant {
  std::string name;
  FiniteGradedModel model;
  std::string breaks;
};
std::vector<Mutant> mutants();

// Lax presentations of valid models with one entry changed, and the
// checklist item each is meant to break.
struct LaxMutant {
  std::string name;
  LaxPresentation presentation;
  std::string breaks;
};
std::vector<LaxMutant> lax_mutants();

}  // namespace gmc::fixtures
