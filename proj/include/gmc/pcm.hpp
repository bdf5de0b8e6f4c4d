#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "gmc/error.hpp"
#include "gmc/report.hpp"

namespace gmc {

using Rational = boost::rational<std::int64_t>;

enum class PcmKind {
  singleton,
  two,
  three,
  powerset,
  rw,
  interval,
  product,
  nat_plus,
  nat_max,
  semilattice,
  table,
};

std::string_view kind_name(PcmKind k);

// An element of one particular PCM instance. The payload fields in use depend
// on the owner's kind:
//   two / three / table / semilattice / nat_*  -> n
//   powerset                                   -> n (bit mask over the carrier)
//   rw                                         -> n (read mask), w (write mask)
//   interval                                   -> q
//   product                                    -> parts
struct Grade {
  std::uint64_t owner = 0;
  std::uint64_t n = 0;
  std::uint64_t w = 0;
  Rational q{0};
  std::vector<Grade> parts;

  friend bool operator==(const Grade& a, const Grade& b) {
    return a.owner == b.owner && a.n == b.n && a.w == b.w && a.q == b.q && a.parts == b.parts;
  }
  friend bool operator!=(const Grade& a, const Grade& b) { return !(a == b); }
};

// Total order used only for deterministic output and container keys.
bool operator<(const Grade& a, const Grade& b);

class Pcm {
 public:
  static Pcm singleton();
  static Pcm two();
  static Pcm three();
  static Pcm powerset(std::vector<std::string> carrier);
  static Pcm rw(std::vector<std::string> locations);
  static Pcm interval(Rational bound);
  static Pcm product(std::vector<Pcm> components);
  static Pcm nat_plus();
  static Pcm nat_max();
  // join[i][j] is the index of i v j; element 0 is the bottom/unit.
  // Idempotence, commutativity, associativity and unit are always validated.
  static Pcm semilattice(std::vector<std::string> names, std::vector<std::vector<int>> join);
  // add[i][j] is the index of i + j, or -1 when undefined.
  static Pcm table(std::vector<std::string> names, std::vector<std::vector<int>> add, int zero,
                   bool validate);

  // Text descriptor, e.g. "two", "powerset a b", "interval 1/2", "product (two) (three)",
  // "semilattice bot lo hi : bot<lo lo<hi", "table 0 a b : a+a=b".
  static Pcm parse(std::string_view descriptor, bool validate = true);
  std::string descriptor() const;

  std::uint64_t id() const;
  PcmKind kind() const;
  bool finite() const;
  bool total() const;
  const std::vector<Pcm>& components() const;
  const std::vector<std::string>& names() const;
  Rational bound() const;

  // Finite carriers only (InfiniteCarrier otherwise).
  const std::vector<Grade>& elements() const;
  std::size_t size() const { return elements().size(); }
  std::size_t index_of(const Grade& g) const;

  Grade zero() const;
  Grade element(std::size_t i) const { return elements().at(i); }
  Grade nat(std::uint64_t v) const;
  Grade rational(Rational v) const;
  Grade subset(const std::vector<std::string>& names) const;
  Grade rw_pair(const std::vector<std::string>& reads, const std::vector<std::string>& writes) const;
  Grade tuple(std::vector<Grade> parts) const;
  Grade named(std::string_view name) const;

  bool owns(const Grade& g) const;

  std::optional<Grade> add(const Grade& a, const Grade& b) const;
  bool orthogonal(const Grade& a, const Grade& b) const { return add(a, b).has_value(); }

  // Direct per-kind rule for the extension preorder.
  bool leq(const Grade& a, const Grade& b) const;
  // Exhaustive witness search; finite carriers only.
  bool leq_search(const Grade& a, const Grade& b) const;
  std::vector<Grade> witnesses(const Grade& a, const Grade& b) const;
  std::optional<Grade> join(const Grade& a, const Grade& b) const;
  std::optional<Grade> top() const;
  Grade complement(const Grade& a) const;

  std::string show(const Grade& g) const;
  Grade parse_grade(std::string_view text) const;

  // Random element: intervals draw p/q with q <= 12, naturals draw from [0, 64].
  Grade sample(std::mt19937_64& rng) const;
  // All elements for finite kinds; a small fixed prefix for infinite ones
  // (naturals 0..6, interval multiples of r/4), scanned before random samples.
  std::vector<Grade> probe() const;

  friend bool operator==(const Pcm& a, const Pcm& b) { return a.id() == b.id(); }
  friend bool operator!=(const Pcm& a, const Pcm& b) { return !(a == b); }

  struct Impl;

 private:
  explicit Pcm(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  void require(const Grade& g) const;
  std::shared_ptr<const Impl> impl_;
};

std::string show_rational(const Rational& q);
Rational parse_rational(std::string_view text);

// Law checks. Finite carriers are scanned exhaustively; infinite ones scan
// probe() exhaustively and then `budget` random triples drawn from `seed`.
Report check_pcm_laws(const Pcm& p, std::size_t budget = 10000, std::uint64_t seed = 1);
// The extra laws printed by the lawcheck command: monotonicity of the
// extension preorder and agreement of direct and search-based leq.
Report check_order_laws(const Pcm& p, std::size_t budget = 10000, std::uint64_t seed = 1);
Report check_separation(const Pcm& p, std::size_t budget = 10000, std::uint64_t seed = 1);
Report check_effect_algebra(const Pcm& p, std::size_t budget = 10000, std::uint64_t seed = 1);

struct PcmHomomorphism {
  Pcm source;
  Pcm target;
  std::function<Grade(const Grade&)> map;

  Grade operator()(const Grade& g) const { return map(g); }

  static PcmHomomorphism identity(const Pcm& p);
  // image[i] is the image of source.element(i).
  static PcmHomomorphism from_table(const Pcm& source, const Pcm& target, std::vector<Grade> image);
  // The canonical map two -> target sending 1 to the top element.
  static PcmHomomorphism top_preserving(const Pcm& target);
};

Report check_hom(const PcmHomomorphism& h, std::size_t budget = 10000, std::uint64_t seed = 1);

}  // namespace gmc
