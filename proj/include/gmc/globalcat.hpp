#pragma once

#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "gmc/freecat.hpp"

namespace gmc {

// A morphism of the global category: a grade-tagged representative.
struct GlobalMorphism {
  Grade grade;
  FreeMorphism body;  // body.grade == grade
};

GlobalMorphism tag(const FreeMorphism& m);
GlobalMorphism global_identity(const SigPtr& sig, const Word& w);

// A binary operation on grades used to combine the grades of a sequential
// composite: the PCM's join, its own addition when total, arithmetic sum on
// naturals, or a user table.
struct UpperBoundingOp {
  std::string name;
  std::function<std::optional<Grade>(const Grade&, const Grade&)> apply;

  static UpperBoundingOp join(const Pcm& p);
  static UpperBoundingOp plus(const Pcm& p);  // NotTotal unless p is total
  // Arithmetic addition on a natural-number kind, whatever its own addition.
  static UpperBoundingOp sum(const Pcm& p);
  static UpperBoundingOp table(const Pcm& p, std::vector<std::tuple<Grade, Grade, Grade>> entries);
  // One entry per line: "<a> <b> -> <c>" with grade literals of p; '#' starts a comment.
  static UpperBoundingOp parse_table(const Pcm& p, std::string_view text);
};

Report check_upper_bounding(const Pcm& p, const UpperBoundingOp& op, std::size_t budget = 10000,
                            std::uint64_t seed = 1);

GlobalMorphism global_compose(const GlobalMorphism& x, const GlobalMorphism& y, const UpperBoundingOp& op);

// The grade at which equality of two representatives is decided.
Grade stabilization_grade(const GlobalMorphism& x, const GlobalMorphism& y);
bool quotient_equal(const GlobalMorphism& x, const GlobalMorphism& y);

FreeMorphism to_top(const GlobalMorphism& x);
GlobalMorphism from_top(const FreeMorphism& m);

GlobalMorphism global_tensor(const GlobalMorphism& x, const GlobalMorphism& y);

}  // namespace gmc
