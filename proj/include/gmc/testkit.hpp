#pragma once

// Random term generation shared by the property tests, the acceptance suite
// and the selftest command.

#include <random>
#include <string>
#include <vector>

#include "gmc/freecat.hpp"

namespace gmc::testkit {

// Objects A and B plus one generator per (shape, grade) pair. Shapes cover
// endomorphisms, merges, splits, states, effects and scalars.
SigPtr shaped_signature(const Pcm& p, const std::vector<Grade>& grades, bool with_degenerate = true);

Word random_word(const Signature& sig, std::size_t max_len, std::mt19937_64& rng);

// A slice list of at most `len` slices starting at `dom`, every generator
// admissible at `ambient`. Stops early if no generator fits.
FreeMorphism random_morphism(const SigPtr& sig, const Grade& ambient, const Word& dom, std::size_t len,
                             std::mt19937_64& rng);

// Same, but only generators whose grade is exactly `gen_grade`.
FreeMorphism random_morphism_graded(const SigPtr& sig, const Grade& ambient, const Grade& gen_grade,
                                    const Word& dom, std::size_t len, std::mt19937_64& rng);

// Applies `moves` random exchange moves.
FreeMorphism random_walk(const FreeMorphism& m, std::size_t moves, std::mt19937_64& rng);

// Applies `moves` random exchanges that respect wires but ignore grades, so
// the result is often not equal to m at its grade.
FreeMorphism random_geometric_walk(const FreeMorphism& m, std::size_t moves, std::mt19937_64& rng);

// A random grade c with leq(lo, c), drawn by adding samples to lo.
Grade random_above(const Pcm& p, const Grade& lo, std::mt19937_64& rng);

}  // namespace gmc::testkit
