#pragma once

// Thin promonoidal structure of a finite PCM, Day convolution of finite
// copresheaves over it, and the presentation of a graded model as a monoid
// for that convolution (laxators and units instead of tensors).

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gmc/finmodel.hpp"

namespace gmc {

// P(a,b;c) holds iff a + b is defined and below c; I(c) holds everywhere.
struct BoolPromonoidal {
  Pcm pcm;
  GradeAlgebra alg;
  std::vector<char> P;  // [(a*n+b)*n+c]
  std::vector<char> I;  // [c]

  std::size_t size() const { return alg.size(); }
  bool p(std::size_t a, std::size_t b, std::size_t c) const { return P[(a * size() + b) * size() + c] != 0; }
  bool i(std::size_t c) const { return I[c] != 0; }
};

BoolPromonoidal promonoidal_from_pcm(const Pcm& p);  // InfiniteCarrier

// PROMONOIDAL-ASSOC, PROMONOIDAL-UNIT-LEFT, PROMONOIDAL-UNIT-RIGHT,
// P-FUNCTORIAL, I-FUNCTORIAL, all exhaustive.
Report check_promonoidal_laws(const BoolPromonoidal& b);

// A functor from the extension preorder of a finite PCM to finite sets.
struct Copresheaf {
  Pcm pcm;
  GradeAlgebra alg;
  std::vector<std::vector<std::string>> sets;   // [e]
  std::vector<std::vector<std::size_t>> maps;   // [e*G+e2][i], empty unless e <= e2

  std::size_t grades() const { return alg.size(); }
  std::size_t apply(std::size_t e, std::size_t e2, std::size_t i) const { return maps[e * grades() + e2][i]; }
};

// Builds the full functor from maps on some pairs e <= e2 (normally the
// covering pairs) by composing along chains. IllFormed when a pair is not
// reachable, when two chains disagree, or when a given map is out of range.
struct GeneratingMap {
  std::size_t from;
  std::size_t to;
  std::vector<std::size_t> map;
};
Copresheaf make_copresheaf(const Pcm& p, std::vector<std::vector<std::string>> sets,
                           const std::vector<GeneratingMap>& maps);

// J(c) = {*}.
Copresheaf unit_copresheaf(const Pcm& p);

// Pairs e < e2 with nothing strictly between them.
std::vector<std::pair<std::size_t, std::size_t>> covering_pairs(const GradeAlgebra& alg);

// Every copresheaf with |F(e)| <= max_size, elements named "0", "1", ...,
// in a fixed order (set sizes, then generating maps, lexicographically).
std::vector<Copresheaf> all_copresheaves(const Pcm& p, std::size_t max_size);

// gmccopresheaf/1: {"format", "pcm", "sets": {grade: [names]},
// "maps": [{"from", "to", "map": {x: y}}]} with maps on covering pairs or
// any generating set of pairs.
Copresheaf load_copresheaf(std::string_view text);  // ParseError, IllFormed
std::string save_copresheaf(const Copresheaf& f);   // maps on covering pairs only

// A tagged pair (a, b, x, y) with x in F(a), y in G(b).
struct Tagged {
  std::size_t a, b, x, y;
  auto operator<=>(const Tagged&) const = default;
};

struct Convolution {
  Copresheaf result;
  // classes[c][k] lists the members of class k at c in increasing order; the
  // first member is the representative. Classes are ordered by representative.
  std::vector<std::vector<std::vector<Tagged>>> classes;
  std::vector<std::map<Tagged, std::size_t>> index;  // [c] member -> class
  std::vector<std::vector<std::string>> left, right;  // the factors' sets, for naming
  std::size_t class_of(std::size_t c, const Tagged& t) const;  // IllFormed if absent
  std::string name_of(const Tagged& t) const;                  // "(a,b|x,y)"
};

// PcmMismatch unless F and G share a PCM (compared by descriptor).
Convolution convolve_classes(const Copresheaf& f, const Copresheaf& g);
Copresheaf convolve(const Copresheaf& f, const Copresheaf& g);
// The result document plus "classes": [{"grade", "members": [names]}], with
// members in increasing order so the first is the representative.
std::string save_convolution(const Convolution& c);

// LEFT-UNIT (J*F -> F), RIGHT-UNIT (F*J -> F) and ASSOCIATOR
// ((F*G)*H -> F*(G*H)): each canonical map is checked well defined on
// classes, bijective at every grade and natural in the grade.
Report check_convolution_coherence(const Copresheaf& f, const Copresheaf& g, const Copresheaf& h);

// ---------------------------------------------------------------- lax presentations

struct LaxPresentation {
  Pcm pcm;
  GradeAlgebra alg;
  ObjectMonoid objects;
  std::vector<std::vector<std::vector<std::string>>> hom;  // [e][x*n+y]
  std::vector<std::vector<std::vector<Label>>> regrade;    // [e*G+e2][x*n+y][i]
  std::vector<std::vector<std::vector<Label>>> comp;       // [e][(x*n+y)*n+z][i*|hom(e,y,z)|+j]
  std::vector<std::vector<Label>> ids;                     // [e][x]
  // laxator[(a*G+b)*G+c][quad][i*|hom(b,x2,y2)|+j] when P(a,b;c), else empty.
  std::vector<std::vector<std::vector<Label>>> laxator;
  std::vector<Label> eta;  // [c] in hom[c][I,I]
  std::optional<std::vector<Label>> braiding;

  std::size_t grades() const { return alg.size(); }
  std::size_t size() const { return objects.size(); }
  std::size_t count(std::size_t e, std::size_t x, std::size_t y) const { return hom[e][x * size() + y].size(); }
  friend bool operator==(const LaxPresentation& a, const LaxPresentation& b) {
    return a.pcm.descriptor() == b.pcm.descriptor() && a.objects == b.objects && a.hom == b.hom &&
           a.regrade == b.regrade && a.comp == b.comp && a.ids == b.ids && a.laxator == b.laxator &&
           a.eta == b.eta && a.braiding == b.braiding;
  }
};

// The translations without any law check; for inspecting broken inputs.
LaxPresentation lax_tables(const FiniteGradedModel& m);
FiniteGradedModel graded_tables(const LaxPresentation& p);

// AxiomFailure unless the input passes check_axioms / check_lax_presentation.
LaxPresentation graded_to_lax(const FiniteGradedModel& m);
FiniteGradedModel lax_to_graded(const LaxPresentation& p);

// LAX-REGRADE-FUNCTOR    regrading is functorial
// LAX-EQUIVALENCE        laxators ignore regrading of their arguments
// LAX-UNIT-NATURAL       eta commutes with regrading
// LAX-NATURAL            regrading a laxator result raises its target grade
// LAX-ASSOC              associativity through any intermediate grades
// LAX-UNIT               eta is a unit for the laxators
// LAX-COMP-NATURAL       regrading preserves composition
// LAX-COMP-MONOIDAL      laxators interchange with composition
// LAX-ID-NATURAL         identities regrade to identities
// LAX-ID-MONOIDAL        laxators of identities are identities
// LAX-ETA-ID             eta at c is the identity on I at c
// LAX-COMP-ASSOC         composition is associative
// LAX-COMP-UNIT          identities are units
Report check_lax_presentation(const LaxPresentation& p);

}  // namespace gmc
