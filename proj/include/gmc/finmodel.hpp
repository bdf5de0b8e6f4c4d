#pragma once

// Finite graded monoidal categories stored as explicit tables.
//
// Every hom-set is a list of string labels and morphisms are referred to by
// their index in that list. Grades are referred to by their index in
// pcm.elements(), objects by their index in the object monoid.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gmc/pcm.hpp"
#include "gmc/report.hpp"

namespace gmc {

using Label = std::size_t;

struct ObjectMonoid {
  std::vector<std::string> names;
  std::size_t unit = 0;
  std::vector<std::size_t> mult;  // mult[x * n + y] = x (x) y

  std::size_t size() const { return names.size(); }
  std::size_t operator()(std::size_t x, std::size_t y) const { return mult[x * size() + y]; }
  std::size_t index_of(const std::string& name) const;  // IllFormed

  // The free monoid on nothing: a single object I.
  static ObjectMonoid trivial();
  friend bool operator==(const ObjectMonoid&, const ObjectMonoid&) = default;
};

// Precomputed grade arithmetic on the indices of a finite PCM.
class GradeAlgebra {
 public:
  GradeAlgebra() = default;
  explicit GradeAlgebra(const Pcm& p);  // InfiniteCarrier

  std::size_t size() const { return n_; }
  std::size_t zero() const { return zero_; }
  std::optional<std::size_t> add(std::size_t a, std::size_t b) const {
    int v = add_[a * n_ + b];
    if (v < 0) return std::nullopt;
    return static_cast<std::size_t>(v);
  }
  bool leq(std::size_t a, std::size_t b) const { return leq_[a * n_ + b] != 0; }
  std::optional<std::size_t> top() const { return top_; }

 private:
  std::size_t n_ = 0;
  std::size_t zero_ = 0;
  std::vector<int> add_;
  std::vector<char> leq_;
  std::optional<std::size_t> top_;
};

struct FiniteGradedModel {
  Pcm pcm;
  GradeAlgebra alg;
  ObjectMonoid objects;
  std::vector<std::vector<std::vector<std::string>>> hom;  // [e][x*n+y]
  std::vector<Label> id;                                   // [x], in hom[0][x*n+x]
  std::vector<std::vector<std::vector<Label>>> comp;       // [e][(x*n+y)*n+z][i*|hom(e,y,z)|+j]
  std::vector<std::vector<std::vector<Label>>> regrade;    // [e*G+e2][x*n+y][i]; empty unless e <= e2
  std::vector<std::vector<std::vector<Label>>> tensor;     // [e*G+e2][((x*n+y)*n+x2)*n+y2][i*|hom(e2,x2,y2)|+j]
  std::optional<std::vector<Label>> braiding;              // [x*n+y], in hom[0][(x.y)*n+(y.x)]

  // Sized but empty tables for the given carrier.
  static FiniteGradedModel blank(Pcm pcm, ObjectMonoid objects);

  std::size_t grades() const { return alg.size(); }
  std::size_t size() const { return objects.size(); }
  std::size_t zero() const { return alg.zero(); }
  std::size_t pair(std::size_t x, std::size_t y) const { return x * size() + y; }
  std::size_t triple(std::size_t x, std::size_t y, std::size_t z) const { return pair(x, y) * size() + z; }
  std::size_t quad(std::size_t x, std::size_t y, std::size_t x2, std::size_t y2) const {
    return triple(x, y, x2) * size() + y2;
  }

  const std::vector<std::string>& labels(std::size_t e, std::size_t x, std::size_t y) const {
    return hom[e][pair(x, y)];
  }
  std::size_t count(std::size_t e, std::size_t x, std::size_t y) const { return labels(e, x, y).size(); }
  Label compose(std::size_t e, std::size_t x, std::size_t y, std::size_t z, Label f, Label g) const {
    return comp[e][triple(x, y, z)][f * count(e, y, z) + g];
  }
  Label regraded(std::size_t e, std::size_t e2, std::size_t x, std::size_t y, Label f) const {
    return regrade[e * grades() + e2][pair(x, y)][f];
  }
  Label tensored(std::size_t e, std::size_t e2, std::size_t x, std::size_t y, std::size_t x2, std::size_t y2,
                 Label f, Label g) const {
    return tensor[e * grades() + e2][quad(x, y, x2, y2)][f * count(e2, x2, y2) + g];
  }
  // The identity of ℂ_e at x: the grade-0 identity regraded to e.
  Label identity(std::size_t e, std::size_t x) const { return regraded(zero(), e, x, x, id[x]); }
  std::optional<Label> find_label(std::size_t e, std::size_t x, std::size_t y, const std::string& name) const;
  std::string grade_name(std::size_t e) const { return pcm.show(pcm.element(e)); }
};

// Structural well-formedness: shapes, label ranges, distinct labels and the
// monoid laws of the object table. IllFormed names the offending coordinate.
void validate(const FiniteGradedModel& m);

// Table identity, comparing the PCM by descriptor.
bool same_tables(const FiniteGradedModel& a, const FiniteGradedModel& b);

// Describes a model by its operations on labels; tabulate() evaluates them
// everywhere they are required and checks every result lands in its hom-set.
struct ModelSpec {
  Pcm pcm;
  ObjectMonoid objects;
  std::function<std::vector<std::string>(std::size_t e, std::size_t x, std::size_t y)> hom;
  std::function<std::string(std::size_t x)> id;
  std::function<std::string(std::size_t e, std::size_t x, std::size_t y, std::size_t z, const std::string& f,
                            const std::string& g)>
      comp;
  std::function<std::string(std::size_t e, std::size_t e2, std::size_t x, std::size_t y, const std::string& f)>
      regrade;
  std::function<std::string(std::size_t e, std::size_t e2, std::size_t x, std::size_t y, std::size_t x2,
                            std::size_t y2, const std::string& f, const std::string& g)>
      tensor;
  std::function<std::string(std::size_t x, std::size_t y)> braiding;  // optional
};

FiniteGradedModel tabulate(const ModelSpec& spec);

// Items CATEGORY, REG-FUNCTOR, REG-ACT, REG-TENSOR, TENSOR-UNIT-ASSOC,
// TENSOR-ID, INTER. Each failure carries the first counterexample in the
// scan order grades, then objects, then labels.
Report check_axioms(const FiniteGradedModel& m);

// BRAID-INVOLUTION, BRAID-HEXAGON, BRAID-UNIT, BRAID-NATURALITY,
// GRADED-SYMMETRY. NoBraiding without a braiding table.
Report check_symmetric(const FiniteGradedModel& m);

// Grade-0 morphisms interchange with every grade-a morphism in ℂ_a, on both
// sides (INTERCHANGE-LEFT, INTERCHANGE-RIGHT).
Report check_interchange_lemma(const FiniteGradedModel& m);

// Regrading along a <= b agrees with tensoring by (id_I) regraded to c for
// every witness c of a (+) c = b (REGRADE-WITNESS).
Report check_regrade_witness(const FiniteGradedModel& m);

// ---------------------------------------------------------------- single-category tables

struct CategoryTables {
  std::vector<std::vector<std::string>> hom;  // [x*n+y]
  std::vector<Label> id;
  std::vector<std::vector<Label>> comp;  // [(x*n+y)*n+z][i*|hom(y,z)|+j]

  std::size_t count(std::size_t n, std::size_t x, std::size_t y) const { return hom[x * n + y].size(); }
  Label compose(std::size_t n, std::size_t x, std::size_t y, std::size_t z, Label f, Label g) const {
    return comp[(x * n + y) * n + z][f * count(n, y, z) + g];
  }
  friend bool operator==(const CategoryTables&, const CategoryTables&) = default;
};

struct MonoidalTables {
  ObjectMonoid objects;
  CategoryTables cat;
  std::vector<std::vector<Label>> tensor;  // [((x*n+y)*n+x2)*n+y2][i*|hom(x2,y2)|+j]
  std::optional<std::vector<Label>> braiding;
  friend bool operator==(const MonoidalTables&, const MonoidalTables&) = default;
};

struct PremonoidalTables {
  ObjectMonoid objects;
  CategoryTables cat;
  // left[a][x*n+y][i] is a ⋉ f in hom(a.x, a.y); right[a][x*n+y][i] is f ⋊ a.
  std::vector<std::vector<std::vector<Label>>> left;
  std::vector<std::vector<std::vector<Label>>> right;
  std::optional<std::vector<Label>> braiding;
  friend bool operator==(const PremonoidalTables&, const PremonoidalTables&) = default;
};

struct EffectfulData {
  MonoidalTables pure;
  PremonoidalTables effectful;
  std::vector<std::vector<Label>> eta;  // [x*n+y][i] into effectful hom(x,y)
  friend bool operator==(const EffectfulData&, const EffectfulData&) = default;
};

// Item names are prefixed with `prefix`.
Report check_category(const ObjectMonoid& objects, const CategoryTables& c, const std::string& prefix = "");
Report check_monoidal(const MonoidalTables& m, const std::string& prefix = "");
Report check_premonoidal(const PremonoidalTables& p, const std::string& prefix = "");
// Monoidal and premonoidal laws of both sides, functoriality of eta,
// preservation of whiskerings, centrality of its image and, when braided,
// preservation of the braiding.
Report check_effectful(const EffectfulData& e);

MonoidalTables monoidal_view(const FiniteGradedModel& m, std::size_t e);  // NotIdempotent
PremonoidalTables premonoidal_view(const FiniteGradedModel& m, std::size_t a);

// Both AxiomFailure when the input fails its own law check.
EffectfulData to_effectful(const FiniteGradedModel& m);
FiniteGradedModel from_effectful(const EffectfulData& e);

// ---------------------------------------------------------------- graded functors

struct GradedFunctorData {
  std::shared_ptr<const FiniteGradedModel> source;
  std::shared_ptr<const FiniteGradedModel> target;
  std::vector<std::size_t> objects;                   // source object -> target object
  std::vector<std::size_t> grades;                    // source grade -> target grade
  std::vector<std::vector<std::vector<Label>>> labels;  // [e][x*n+y][i] in target hom[grades[e]]
};

// The PCM homomorphism underlying a functor, as a PcmHomomorphism.
PcmHomomorphism grade_map(const GradedFunctorData& f);

// FUNCTOR-OBJECTS, FUNCTOR-PCM-HOM, FUNCTOR-IDENTITY, FUNCTOR-COMPOSITION,
// FUNCTOR-TENSOR, FUNCTOR-REGRADE.
Report check_graded_functor(const GradedFunctorData& f);

GradedFunctorData identity_functor(std::shared_ptr<const FiniteGradedModel> m);

// The model over phi.source with ℂ_e := ℂ_phi(e). InvalidHom unless phi
// passes check_hom and targets the model's PCM.
FiniteGradedModel pullback(const FiniteGradedModel& m, const PcmHomomorphism& phi);

struct Coreflection {
  std::shared_ptr<const FiniteGradedModel> model;  // over two
  GradedFunctorData counit;
};

// Keeps ℂ_0 and ℂ_top as the two layers. NoTop.
Coreflection coreflect(std::shared_ptr<const FiniteGradedModel> m);

// Given M from a two-graded model D into C, builds the factorization through
// the coreflection, checks it, and counts by exhaustive search every graded
// functor D -> RC over M's object map that factors M. Items FACTOR-DEFINED,
// FACTOR-EQUATION, FACTOR-UNIQUE and CANDIDATES (info). EnumerationTooLarge
// when a hom-set on either side exceeds `max_labels` or the search exceeds
// `max_nodes`.
Report check_couniversal(std::shared_ptr<const FiniteGradedModel> c, const GradedFunctorData& m,
                         std::size_t max_labels = 3, std::size_t max_nodes = 2000000);

}  // namespace gmc
