#include "gmc/pcm.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

#include "text.hpp"

namespace gmc {

namespace {

std::atomic<std::uint64_t> next_id{1};

constexpr std::size_t kMaxPowersetCarrier = 16;
constexpr std::size_t kMaxRwLocations = 6;

}  // namespace

struct Pcm::Impl {
  std::uint64_t id = 0;
  PcmKind kind = PcmKind::singleton;
  std::vector<std::string> names;
  Rational r{1};
  std::vector<Pcm> comps;
  std::vector<std::vector<int>> table;
  int zero = 0;
  bool finite = true;
  std::vector<Grade> elems;
};

std::string_view kind_name(PcmKind k) {
  switch (k) {
    case PcmKind::singleton: return "singleton";
    case PcmKind::two: return "two";
    case PcmKind::three: return "three";
    case PcmKind::powerset: return "powerset";
    case PcmKind::rw: return "rw";
    case PcmKind::interval: return "interval";
    case PcmKind::product: return "product";
    case PcmKind::nat_plus: return "nat_plus";
    case PcmKind::nat_max: return "nat_max";
    case PcmKind::semilattice: return "semilattice";
    case PcmKind::table: return "table";
  }
  return "?";
}

bool operator<(const Grade& a, const Grade& b) {
  if (a.owner != b.owner) return a.owner < b.owner;
  if (a.n != b.n) return a.n < b.n;
  if (a.w != b.w) return a.w < b.w;
  if (a.q != b.q) return a.q < b.q;
  return std::lexicographical_compare(a.parts.begin(), a.parts.end(), b.parts.begin(),
                                      b.parts.end());
}

std::string show_rational(const Rational& q) {
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

Rational parse_rational(std::string_view text) {
  text = text::trim(text);
  auto slash = text.find('/');
  auto num = text::parse_int(text.substr(0, slash));
  std::int64_t den = 1;
  if (slash != std::string_view::npos) {
    auto d = text::parse_int(text.substr(slash + 1));
    if (!d) throw Error(Errc::ParseError, "bad rational '" + std::string(text) + "'");
    den = *d;
  }
  if (!num || den <= 0) throw Error(Errc::ParseError, "bad rational '" + std::string(text) + "'");
  return Rational(*num, den);
}

// ---------------------------------------------------------------- construction

namespace {

std::shared_ptr<Pcm::Impl> fresh(PcmKind kind) {
  auto impl = std::make_shared<Pcm::Impl>();
  impl->id = next_id.fetch_add(1);
  impl->kind = kind;
  return impl;
}

Grade atom(std::uint64_t owner, std::uint64_t n, std::uint64_t w = 0) {
  Grade g;
  g.owner = owner;
  g.n = n;
  g.w = w;
  return g;
}

void check_distinct(const std::vector<std::string>& names, const char* what) {
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty() || !seen.insert(n).second)
      throw Error(Errc::MalformedSpec, std::string(what) + " names must be distinct and non-empty");
  }
}

}  // namespace

Pcm Pcm::singleton() {
  auto impl = fresh(PcmKind::singleton);
  impl->elems = {atom(impl->id, 0)};
  return Pcm(impl);
}

Pcm Pcm::two() {
  auto impl = fresh(PcmKind::two);
  impl->elems = {atom(impl->id, 0), atom(impl->id, 1)};
  return Pcm(impl);
}

Pcm Pcm::three() {
  auto impl = fresh(PcmKind::three);
  impl->elems = {atom(impl->id, 0), atom(impl->id, 1), atom(impl->id, 2)};
  return Pcm(impl);
}

Pcm Pcm::powerset(std::vector<std::string> carrier) {
  check_distinct(carrier, "powerset carrier");
  if (carrier.size() > kMaxPowersetCarrier)
    throw Error(Errc::MalformedSpec, "powerset carrier too large");
  auto impl = fresh(PcmKind::powerset);
  impl->names = std::move(carrier);
  std::uint64_t count = std::uint64_t{1} << impl->names.size();
  for (std::uint64_t m = 0; m < count; ++m) impl->elems.push_back(atom(impl->id, m));
  return Pcm(impl);
}

Pcm Pcm::rw(std::vector<std::string> locations) {
  check_distinct(locations, "rw location");
  if (locations.size() > kMaxRwLocations) throw Error(Errc::MalformedSpec, "rw location set too large");
  auto impl = fresh(PcmKind::rw);
  impl->names = std::move(locations);
  std::uint64_t count = std::uint64_t{1} << impl->names.size();
  for (std::uint64_t r = 0; r < count; ++r)
    for (std::uint64_t w = 0; w < count; ++w) impl->elems.push_back(atom(impl->id, r, w));
  return Pcm(impl);
}

Pcm Pcm::interval(Rational bound) {
  if (bound <= Rational(0)) throw Error(Errc::MalformedSpec, "interval bound must be positive");
  auto impl = fresh(PcmKind::interval);
  impl->r = bound;
  impl->finite = false;
  return Pcm(impl);
}

Pcm Pcm::nat_plus() {
  auto impl = fresh(PcmKind::nat_plus);
  impl->finite = false;
  return Pcm(impl);
}

Pcm Pcm::nat_max() {
  auto impl = fresh(PcmKind::nat_max);
  impl->finite = false;
  return Pcm(impl);
}

Pcm Pcm::product(std::vector<Pcm> components) {
  if (components.empty()) throw Error(Errc::MalformedSpec, "product needs at least one component");
  auto impl = fresh(PcmKind::product);
  impl->comps = std::move(components);
  impl->finite = std::all_of(impl->comps.begin(), impl->comps.end(),
                             [](const Pcm& c) { return c.finite(); });
  if (impl->finite) {
    std::vector<std::vector<Grade>> acc{{}};
    for (const auto& c : impl->comps) {
      std::vector<std::vector<Grade>> next;
      for (const auto& prefix : acc)
        for (const auto& e : c.elements()) {
          auto v = prefix;
          v.push_back(e);
          next.push_back(std::move(v));
        }
      acc = std::move(next);
      if (acc.size() > 4096) throw Error(Errc::MalformedSpec, "product carrier too large");
    }
    for (auto& parts : acc) {
      Grade g;
      g.owner = impl->id;
      g.parts = std::move(parts);
      impl->elems.push_back(std::move(g));
    }
  }
  return Pcm(impl);
}

Pcm Pcm::semilattice(std::vector<std::string> names, std::vector<std::vector<int>> join) {
  check_distinct(names, "semilattice element");
  const int n = static_cast<int>(names.size());
  if (static_cast<int>(join.size()) != n)
    throw Error(Errc::MalformedSpec, "semilattice join table has wrong shape");
  for (const auto& row : join) {
    if (static_cast<int>(row.size()) != n)
      throw Error(Errc::MalformedSpec, "semilattice join table has wrong shape");
    for (int v : row)
      if (v < 0 || v >= n) throw Error(Errc::MalformedSpec, "semilattice join must be total");
  }
  auto impl = fresh(PcmKind::semilattice);
  impl->names = std::move(names);
  impl->table = std::move(join);
  impl->zero = 0;
  for (int i = 0; i < n; ++i) impl->elems.push_back(atom(impl->id, static_cast<std::uint64_t>(i)));
  Pcm p(impl);
  const auto& t = impl->table;
  const auto& nm = impl->names;
  for (int a = 0; a < n; ++a) {
    if (t[a][a] != a) throw Error(Errc::LawViolation, "join not idempotent at " + nm[a]);
    if (t[0][a] != a) throw Error(Errc::LawViolation, "first element is not a unit at " + nm[a]);
    for (int b = 0; b < n; ++b) {
      if (t[a][b] != t[b][a])
        throw Error(Errc::LawViolation, "join not commutative at (" + nm[a] + "," + nm[b] + ")");
      for (int c = 0; c < n; ++c)
        if (t[t[a][b]][c] != t[a][t[b][c]])
          throw Error(Errc::LawViolation,
                      "join not associative at (" + nm[a] + "," + nm[b] + "," + nm[c] + ")");
    }
  }
  return p;
}

Pcm Pcm::table(std::vector<std::string> names, std::vector<std::vector<int>> add, int zero,
               bool validate) {
  check_distinct(names, "table element");
  const int n = static_cast<int>(names.size());
  if (n == 0 || zero < 0 || zero >= n) throw Error(Errc::MalformedSpec, "table zero index out of range");
  if (static_cast<int>(add.size()) != n)
    throw Error(Errc::MalformedSpec, "table has wrong shape");
  for (const auto& row : add) {
    if (static_cast<int>(row.size()) != n) throw Error(Errc::MalformedSpec, "table has wrong shape");
    for (int v : row)
      if (v < -1 || v >= n) throw Error(Errc::MalformedSpec, "table entry out of range");
  }
  auto impl = fresh(PcmKind::table);
  impl->names = std::move(names);
  impl->table = std::move(add);
  impl->zero = zero;
  for (int i = 0; i < n; ++i) impl->elems.push_back(atom(impl->id, static_cast<std::uint64_t>(i)));
  Pcm p(impl);
  if (validate) {
    Report r = check_pcm_laws(p);
    for (const auto& c : r.checks())
      if (!c.pass) throw Error(Errc::LawViolation, c.name + " fails at " + c.detail);
  }
  return p;
}

// ---------------------------------------------------------------- accessors

std::uint64_t Pcm::id() const { return impl_->id; }
PcmKind Pcm::kind() const { return impl_->kind; }
bool Pcm::finite() const { return impl_->finite; }
const std::vector<Pcm>& Pcm::components() const { return impl_->comps; }
const std::vector<std::string>& Pcm::names() const { return impl_->names; }
Rational Pcm::bound() const { return impl_->r; }

bool Pcm::total() const {
  switch (impl_->kind) {
    case PcmKind::singleton:
    case PcmKind::nat_plus:
    case PcmKind::nat_max:
    case PcmKind::semilattice:
      return true;
    case PcmKind::product:
      return std::all_of(impl_->comps.begin(), impl_->comps.end(),
                         [](const Pcm& c) { return c.total(); });
    case PcmKind::table:
      for (const auto& row : impl_->table)
        for (int v : row)
          if (v < 0) return false;
      return true;
    default:
      return false;
  }
}

const std::vector<Grade>& Pcm::elements() const {
  if (!impl_->finite)
    throw Error(Errc::InfiniteCarrier, std::string(kind_name(impl_->kind)) + " has an infinite carrier");
  return impl_->elems;
}

std::size_t Pcm::index_of(const Grade& g) const {
  require(g);
  const auto& es = elements();
  switch (impl_->kind) {
    case PcmKind::singleton:
    case PcmKind::two:
    case PcmKind::three:
    case PcmKind::powerset:
    case PcmKind::semilattice:
    case PcmKind::table:
      return static_cast<std::size_t>(g.n);
    case PcmKind::rw:
      return static_cast<std::size_t>((g.n << impl_->names.size()) | g.w);
    default: {
      auto it = std::find(es.begin(), es.end(), g);
      if (it == es.end()) throw Error(Errc::OwnerMismatch, "grade not in carrier");
      return static_cast<std::size_t>(it - es.begin());
    }
  }
}

bool Pcm::owns(const Grade& g) const {
  if (g.owner != impl_->id) return false;
  switch (impl_->kind) {
    case PcmKind::singleton: return g.n == 0;
    case PcmKind::two: return g.n <= 1;
    case PcmKind::three: return g.n <= 2;
    case PcmKind::powerset: return g.n < (std::uint64_t{1} << impl_->names.size());
    case PcmKind::rw: {
      auto lim = std::uint64_t{1} << impl_->names.size();
      return g.n < lim && g.w < lim;
    }
    case PcmKind::interval: return g.q >= Rational(0) && g.q <= impl_->r;
    case PcmKind::semilattice:
    case PcmKind::table: return g.n < impl_->names.size();
    case PcmKind::product:
      if (g.parts.size() != impl_->comps.size()) return false;
      for (std::size_t i = 0; i < g.parts.size(); ++i)
        if (!impl_->comps[i].owns(g.parts[i])) return false;
      return true;
    default: return true;
  }
}

void Pcm::require(const Grade& g) const {
  if (!owns(g))
    throw Error(Errc::OwnerMismatch, "grade does not belong to this " +
                                         std::string(kind_name(impl_->kind)) + " instance");
}

Grade Pcm::zero() const {
  switch (impl_->kind) {
    case PcmKind::product: {
      std::vector<Grade> parts;
      for (const auto& c : impl_->comps) parts.push_back(c.zero());
      return tuple(std::move(parts));
    }
    case PcmKind::interval: return rational(Rational(0));
    case PcmKind::table:
    case PcmKind::semilattice: return atom(impl_->id, static_cast<std::uint64_t>(impl_->zero));
    default: return atom(impl_->id, 0);
  }
}

Grade Pcm::nat(std::uint64_t v) const {
  switch (impl_->kind) {
    case PcmKind::nat_plus:
    case PcmKind::nat_max:
    case PcmKind::two:
    case PcmKind::three: {
      Grade g = atom(impl_->id, v);
      require(g);
      return g;
    }
    default:
      throw Error(Errc::MalformedSpec, "numeric literal not valid for " + std::string(kind_name(impl_->kind)));
  }
}

Grade Pcm::rational(Rational v) const {
  if (impl_->kind != PcmKind::interval) throw Error(Errc::MalformedSpec, "rational grade needs an interval");
  Grade g;
  g.owner = impl_->id;
  g.q = v;
  if (!owns(g)) throw Error(Errc::MalformedSpec, "rational " + show_rational(v) + " outside [0," + show_rational(impl_->r) + "]");
  return g;
}

namespace {

std::uint64_t mask_of(const std::vector<std::string>& carrier, const std::vector<std::string>& names) {
  std::uint64_t m = 0;
  for (const auto& n : names) {
    auto it = std::find(carrier.begin(), carrier.end(), n);
    if (it == carrier.end()) throw Error(Errc::MalformedSpec, "unknown carrier element '" + n + "'");
    m |= std::uint64_t{1} << (it - carrier.begin());
  }
  return m;
}

}  // namespace

Grade Pcm::subset(const std::vector<std::string>& names) const {
  if (impl_->kind != PcmKind::powerset) throw Error(Errc::MalformedSpec, "subset grade needs a powerset");
  return atom(impl_->id, mask_of(impl_->names, names));
}

Grade Pcm::rw_pair(const std::vector<std::string>& reads, const std::vector<std::string>& writes) const {
  if (impl_->kind != PcmKind::rw) throw Error(Errc::MalformedSpec, "read/write grade needs an rw PCM");
  return atom(impl_->id, mask_of(impl_->names, reads), mask_of(impl_->names, writes));
}

Grade Pcm::tuple(std::vector<Grade> parts) const {
  Grade g;
  g.owner = impl_->id;
  g.parts = std::move(parts);
  require(g);
  return g;
}

Grade Pcm::named(std::string_view name) const {
  if (impl_->kind != PcmKind::table && impl_->kind != PcmKind::semilattice)
    throw Error(Errc::MalformedSpec, "named grade needs a table or semilattice");
  auto it = std::find(impl_->names.begin(), impl_->names.end(), name);
  if (it == impl_->names.end()) throw Error(Errc::MalformedSpec, "unknown element '" + std::string(name) + "'");
  return atom(impl_->id, static_cast<std::uint64_t>(it - impl_->names.begin()));
}

// ---------------------------------------------------------------- algebra

std::optional<Grade> Pcm::add(const Grade& a, const Grade& b) const {
  require(a);
  require(b);
  const auto id = impl_->id;
  switch (impl_->kind) {
    case PcmKind::singleton: return zero();
    case PcmKind::two:
      if (a.n && b.n) return std::nullopt;
      return atom(id, a.n | b.n);
    case PcmKind::three:
      if (a.n == 2 && b.n == 2) return std::nullopt;
      return atom(id, std::max(a.n, b.n));
    case PcmKind::powerset:
      if (a.n & b.n) return std::nullopt;
      return atom(id, a.n | b.n);
    case PcmKind::rw:
      if ((a.w & (b.n | b.w)) || (b.w & (a.n | a.w))) return std::nullopt;
      return atom(id, a.n | b.n, a.w | b.w);
    case PcmKind::interval: {
      Rational s = a.q + b.q;
      if (s > impl_->r) return std::nullopt;
      Grade g;
      g.owner = id;
      g.q = s;
      return g;
    }
    case PcmKind::nat_plus: return atom(id, a.n + b.n);
    case PcmKind::nat_max: return atom(id, std::max(a.n, b.n));
    case PcmKind::semilattice: return atom(id, static_cast<std::uint64_t>(impl_->table[a.n][b.n]));
    case PcmKind::table: {
      int v = impl_->table[a.n][b.n];
      if (v < 0) return std::nullopt;
      return atom(id, static_cast<std::uint64_t>(v));
    }
    case PcmKind::product: {
      Grade g;
      g.owner = id;
      for (std::size_t i = 0; i < impl_->comps.size(); ++i) {
        auto s = impl_->comps[i].add(a.parts[i], b.parts[i]);
        if (!s) return std::nullopt;
        g.parts.push_back(std::move(*s));
      }
      return g;
    }
  }
  return std::nullopt;
}

bool Pcm::leq(const Grade& a, const Grade& b) const {
  require(a);
  require(b);
  switch (impl_->kind) {
    case PcmKind::singleton: return true;
    case PcmKind::two:
    case PcmKind::three:
    case PcmKind::nat_plus:
    case PcmKind::nat_max: return a.n <= b.n;
    case PcmKind::powerset: return (a.n & ~b.n) == 0;
    case PcmKind::rw:
      // (R1,W1) <= (R2,W2) iff the forced witness (R2\R1, W2\W1) is orthogonal to (R1,W1).
      return (a.n & ~b.n) == 0 && (a.w & ~b.w) == 0 && ((b.w & ~a.w) & a.n) == 0 &&
             ((b.n & ~a.n) & a.w) == 0;
    case PcmKind::interval: return a.q <= b.q;
    case PcmKind::semilattice: return impl_->table[a.n][b.n] == static_cast<int>(b.n);
    case PcmKind::product:
      for (std::size_t i = 0; i < impl_->comps.size(); ++i)
        if (!impl_->comps[i].leq(a.parts[i], b.parts[i])) return false;
      return true;
    case PcmKind::table: return leq_search(a, b);
  }
  return false;
}

bool Pcm::leq_search(const Grade& a, const Grade& b) const {
  require(a);
  require(b);
  for (const auto& c : elements()) {
    auto s = add(a, c);
    if (s && *s == b) return true;
  }
  return false;
}

std::vector<Grade> Pcm::witnesses(const Grade& a, const Grade& b) const {
  require(a);
  require(b);
  std::vector<Grade> out;
  if (impl_->finite) {
    for (const auto& c : impl_->elems) {
      auto s = add(a, c);
      if (s && *s == b) out.push_back(c);
    }
    return out;
  }
  switch (impl_->kind) {
    case PcmKind::nat_plus:
      if (a.n <= b.n) out.push_back(nat(b.n - a.n));
      return out;
    case PcmKind::nat_max:
      if (a.n == b.n)
        for (std::uint64_t v = 0; v <= a.n; ++v) out.push_back(nat(v));
      else if (a.n < b.n)
        out.push_back(nat(b.n));
      return out;
    case PcmKind::interval:
      if (a.q <= b.q) out.push_back(rational(b.q - a.q));
      return out;
    case PcmKind::product: {
      std::vector<std::vector<Grade>> acc{{}};
      for (std::size_t i = 0; i < impl_->comps.size(); ++i) {
        auto ws = impl_->comps[i].witnesses(a.parts[i], b.parts[i]);
        std::vector<std::vector<Grade>> next;
        for (const auto& prefix : acc)
          for (const auto& w : ws) {
            auto v = prefix;
            v.push_back(w);
            next.push_back(std::move(v));
          }
        acc = std::move(next);
      }
      for (auto& parts : acc) out.push_back(tuple(std::move(parts)));
      return out;
    }
    default:
      throw Error(Errc::InfiniteCarrier, "witness enumeration needs a finite carrier");
  }
}

namespace {

std::optional<Grade> least_upper_bound(const Pcm& p, const Grade& a, const Grade& b) {
  std::vector<Grade> ubs;
  for (const auto& u : p.elements())
    if (p.leq(a, u) && p.leq(b, u)) ubs.push_back(u);
  for (const auto& j : ubs) {
    bool least = std::all_of(ubs.begin(), ubs.end(), [&](const Grade& u) { return p.leq(j, u); });
    if (least) return j;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Grade> Pcm::join(const Grade& a, const Grade& b) const {
  require(a);
  require(b);
  switch (impl_->kind) {
    case PcmKind::singleton: return zero();
    case PcmKind::powerset: return atom(impl_->id, a.n | b.n);
    case PcmKind::nat_plus:
    case PcmKind::nat_max: return atom(impl_->id, std::max(a.n, b.n));
    case PcmKind::interval: return a.q < b.q ? b : a;
    case PcmKind::semilattice: return atom(impl_->id, static_cast<std::uint64_t>(impl_->table[a.n][b.n]));
    case PcmKind::product: {
      std::vector<Grade> parts;
      for (std::size_t i = 0; i < impl_->comps.size(); ++i) {
        auto j = impl_->comps[i].join(a.parts[i], b.parts[i]);
        if (!j) return std::nullopt;
        parts.push_back(std::move(*j));
      }
      return tuple(std::move(parts));
    }
    default: return least_upper_bound(*this, a, b);
  }
}

std::optional<Grade> Pcm::top() const {
  switch (impl_->kind) {
    case PcmKind::singleton: return zero();
    case PcmKind::two: return atom(impl_->id, 1);
    case PcmKind::three: return atom(impl_->id, 2);
    case PcmKind::powerset: return atom(impl_->id, (std::uint64_t{1} << impl_->names.size()) - 1);
    case PcmKind::interval: return rational(impl_->r);
    case PcmKind::nat_plus:
    case PcmKind::nat_max: return std::nullopt;
    case PcmKind::product: {
      std::vector<Grade> parts;
      for (const auto& c : impl_->comps) {
        auto t = c.top();
        if (!t) return std::nullopt;
        parts.push_back(std::move(*t));
      }
      return tuple(std::move(parts));
    }
    default:
      for (const auto& t : impl_->elems) {
        bool is_top = std::all_of(impl_->elems.begin(), impl_->elems.end(),
                                  [&](const Grade& a) { return leq(a, t); });
        if (is_top) return t;
      }
      return std::nullopt;
  }
}

Grade Pcm::complement(const Grade& a) const {
  require(a);
  if (impl_->kind == PcmKind::interval) return rational(impl_->r - a.q);
  if (impl_->kind == PcmKind::product && !impl_->finite) {
    std::vector<Grade> parts;
    for (std::size_t i = 0; i < impl_->comps.size(); ++i)
      parts.push_back(impl_->comps[i].complement(a.parts[i]));
    return tuple(std::move(parts));
  }
  if (!impl_->finite) throw Error(Errc::NotEffectAlgebra, std::string(kind_name(impl_->kind)) + " is not an effect algebra");
  auto t = top();
  if (!t) throw Error(Errc::NotEffectAlgebra, "no top element");
  if (!check_effect_algebra(*this).ok())
    throw Error(Errc::NotEffectAlgebra, "complements toward the top are not unique");
  for (const auto& b : impl_->elems) {
    auto s = add(a, b);
    if (s && *s == *t) return b;
  }
  throw Error(Errc::NotEffectAlgebra, "no complement for " + show(a));
}

// ---------------------------------------------------------------- text

namespace {

std::string show_mask(const std::vector<std::string>& names, std::uint64_t m) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (m >> i & 1) {
      if (!first) out += ",";
      out += names[i];
      first = false;
    }
  return out + "}";
}

std::vector<std::string> parse_set_literal(std::string_view text) {
  text = text::trim(text);
  if (text.size() < 2 || text.front() != '{' || text.back() != '}')
    throw Error(Errc::ParseError, "expected a set literal, got '" + std::string(text) + "'");
  std::vector<std::string> out;
  for (auto part : text::split_top(text.substr(1, text.size() - 2), ',')) {
    auto t = text::trim(part);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

std::vector<std::string_view> parse_tuple_literal(std::string_view text) {
  text = text::trim(text);
  if (text.size() < 2 || text.front() != '(' || text.back() != ')')
    throw Error(Errc::ParseError, "expected a tuple literal, got '" + std::string(text) + "'");
  return text::split_top(text.substr(1, text.size() - 2), ',');
}

}  // namespace

std::string Pcm::show(const Grade& g) const {
  require(g);
  switch (impl_->kind) {
    case PcmKind::singleton:
    case PcmKind::two:
    case PcmKind::three:
    case PcmKind::nat_plus:
    case PcmKind::nat_max: return std::to_string(g.n);
    case PcmKind::powerset: return show_mask(impl_->names, g.n);
    case PcmKind::rw: return "(" + show_mask(impl_->names, g.n) + "," + show_mask(impl_->names, g.w) + ")";
    case PcmKind::interval: return show_rational(g.q);
    case PcmKind::semilattice:
    case PcmKind::table: return impl_->names[g.n];
    case PcmKind::product: {
      std::string out = "(";
      for (std::size_t i = 0; i < g.parts.size(); ++i) {
        if (i) out += ",";
        out += impl_->comps[i].show(g.parts[i]);
      }
      return out + ")";
    }
  }
  return "?";
}

Grade Pcm::parse_grade(std::string_view text) const {
  text = text::trim(text);
  auto bad = [&]() {
    return Error(Errc::ParseError, "'" + std::string(text) + "' is not a " +
                                       std::string(kind_name(impl_->kind)) + " grade");
  };
  switch (impl_->kind) {
    case PcmKind::singleton:
      if (text == "0" || text == "*") return zero();
      throw bad();
    case PcmKind::two:
    case PcmKind::three:
    case PcmKind::nat_plus:
    case PcmKind::nat_max: {
      auto v = text::parse_int(text);
      if (!v || *v < 0) throw bad();
      Grade g = atom(impl_->id, static_cast<std::uint64_t>(*v));
      if (!owns(g)) throw bad();
      return g;
    }
    case PcmKind::powerset: return subset(parse_set_literal(text));
    case PcmKind::rw: {
      auto parts = parse_tuple_literal(text);
      if (parts.size() != 2) throw bad();
      return rw_pair(parse_set_literal(parts[0]), parse_set_literal(parts[1]));
    }
    case PcmKind::interval: return rational(parse_rational(text));
    case PcmKind::semilattice:
    case PcmKind::table: return named(text);
    case PcmKind::product: {
      auto parts = parse_tuple_literal(text);
      if (parts.size() != impl_->comps.size()) throw bad();
      std::vector<Grade> gs;
      for (std::size_t i = 0; i < parts.size(); ++i) gs.push_back(impl_->comps[i].parse_grade(parts[i]));
      return tuple(std::move(gs));
    }
  }
  throw bad();
}

std::string Pcm::descriptor() const {
  std::string out(kind_name(impl_->kind));
  switch (impl_->kind) {
    case PcmKind::powerset:
    case PcmKind::rw:
      for (const auto& n : impl_->names) out += " " + n;
      return out;
    case PcmKind::interval: return out + " " + show_rational(impl_->r);
    case PcmKind::product:
      for (const auto& c : impl_->comps) out += " (" + c.descriptor() + ")";
      return out;
    case PcmKind::semilattice: {
      const auto& t = impl_->table;
      const auto& nm = impl_->names;
      const std::size_t n = nm.size();
      for (const auto& s : nm) out += " " + s;
      std::string rel;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          if (a == b || t[a][b] != static_cast<int>(b)) continue;
          bool covering = true;
          for (std::size_t c = 0; c < n && covering; ++c)
            if (c != a && c != b && t[a][c] == static_cast<int>(c) && t[c][b] == static_cast<int>(b))
              covering = false;
          if (covering) rel += " " + nm[a] + "<" + nm[b];
        }
      if (!rel.empty()) out += " :" + rel;
      return out;
    }
    case PcmKind::table: {
      const auto& t = impl_->table;
      const auto& nm = impl_->names;
      const int n = static_cast<int>(nm.size());
      const int z = impl_->zero;
      out += " " + nm[z];
      for (int i = 0; i < n; ++i)
        if (i != z) out += " " + nm[i];
      auto deflt = [&](int i, int j) { return i == z ? j : (j == z ? i : -1); };
      auto entry = [&](int i, int j) {
        return " " + nm[i] + "+" + nm[j] + "=" + (t[i][j] < 0 ? std::string("_") : nm[t[i][j]]);
      };
      std::string rel;
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
          if (t[i][j] != deflt(i, j)) rel += entry(i, j);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
          if (t[i][j] != t[j][i]) rel += entry(i, j);
      if (!rel.empty()) out += " :" + rel;
      return out;
    }
    default: return out;
  }
}

namespace {

Pcm parse_descriptor(std::string_view text, bool validate);

std::vector<std::string> words(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

Pcm parse_semilattice(const std::vector<std::string>& names, const std::vector<std::string>& rels) {
  const int n = static_cast<int>(names.size());
  if (n == 0) throw Error(Errc::MalformedSpec, "semilattice needs elements");
  auto idx = [&](const std::string& s) {
    auto it = std::find(names.begin(), names.end(), s);
    if (it == names.end()) throw Error(Errc::MalformedSpec, "unknown semilattice element '" + s + "'");
    return static_cast<int>(it - names.begin());
  };
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) le[i][i] = true;
  for (const auto& r : rels) {
    auto lt = r.find('<');
    if (lt == std::string::npos) throw Error(Errc::MalformedSpec, "expected a<b, got '" + r + "'");
    le[idx(r.substr(0, lt))][idx(r.substr(lt + 1))] = true;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (le[i][k] && le[k][j]) le[i][j] = true;
  std::vector<std::vector<int>> join(n, std::vector<int>(n, -1));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      for (int u = 0; u < n; ++u) {
        if (!le[a][u] || !le[b][u]) continue;
        bool least = true;
        for (int v = 0; v < n && least; ++v)
          if (le[a][v] && le[b][v] && !le[u][v]) least = false;
        if (least) {
          join[a][b] = u;
          break;
        }
      }
      if (join[a][b] < 0)
        throw Error(Errc::MalformedSpec, "no join for " + names[a] + " and " + names[b]);
    }
  return Pcm::semilattice(names, join);
}

Pcm parse_table(const std::vector<std::string>& names, const std::vector<std::string>& rels,
                bool validate) {
  const int n = static_cast<int>(names.size());
  if (n == 0) throw Error(Errc::MalformedSpec, "table needs elements");
  auto idx = [&](const std::string& s) {
    auto it = std::find(names.begin(), names.end(), s);
    if (it == names.end()) throw Error(Errc::MalformedSpec, "unknown table element '" + s + "'");
    return static_cast<int>(it - names.begin());
  };
  std::vector<std::vector<int>> add(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i) {
    add[0][i] = i;
    add[i][0] = i;
  }
  std::vector<std::vector<bool>> set(n, std::vector<bool>(n, false));
  std::vector<std::tuple<int, int, int>> entries;
  for (const auto& r : rels) {
    auto plus = r.find('+');
    auto eq = r.find('=');
    if (plus == std::string::npos || eq == std::string::npos || eq < plus)
      throw Error(Errc::MalformedSpec, "expected x+y=z, got '" + r + "'");
    int i = idx(r.substr(0, plus));
    int j = idx(r.substr(plus + 1, eq - plus - 1));
    std::string rhs = r.substr(eq + 1);
    int v = rhs == "_" ? -1 : idx(rhs);
    entries.emplace_back(i, j, v);
    set[i][j] = true;
  }
  for (auto [i, j, v] : entries) {
    add[i][j] = v;
    if (!set[j][i]) add[j][i] = v;
  }
  return Pcm::table(names, add, 0, validate);
}

Pcm parse_descriptor(std::string_view text, bool validate) {
  text = text::trim(text);
  auto sp = text.find_first_of(" \t\n");
  std::string head(text.substr(0, sp));
  std::string_view rest = sp == std::string_view::npos ? std::string_view{} : text.substr(sp + 1);
  if (head == "singleton") return Pcm::singleton();
  if (head == "two") return Pcm::two();
  if (head == "three") return Pcm::three();
  if (head == "nat_plus") return Pcm::nat_plus();
  if (head == "nat_max") return Pcm::nat_max();
  if (head == "powerset") return Pcm::powerset(words(rest));
  if (head == "rw") return Pcm::rw(words(rest));
  if (head == "interval") {
    auto ws = words(rest);
    if (ws.size() != 1) throw Error(Errc::MalformedSpec, "interval needs exactly one bound");
    Rational r;
    try {
      r = parse_rational(ws[0]);
    } catch (const Error&) {
      throw Error(Errc::MalformedSpec, "bad interval bound '" + ws[0] + "'");
    }
    return Pcm::interval(r);
  }
  if (head == "product") {
    std::vector<Pcm> comps;
    rest = text::trim(rest);
    while (!rest.empty()) {
      if (rest.front() != '(') throw Error(Errc::MalformedSpec, "product components must be parenthesised");
      auto close = text::matching(rest, 0);
      if (close == std::string_view::npos) throw Error(Errc::MalformedSpec, "unbalanced parenthesis in product");
      comps.push_back(parse_descriptor(rest.substr(1, close - 1), validate));
      rest = text::trim(rest.substr(close + 1));
    }
    return Pcm::product(std::move(comps));
  }
  if (head == "semilattice" || head == "table") {
    auto colon = rest.find(':');
    auto names = words(rest.substr(0, colon));
    std::vector<std::string> rels;
    if (colon != std::string_view::npos) rels = words(rest.substr(colon + 1));
    return head == "semilattice" ? parse_semilattice(names, rels) : parse_table(names, rels, validate);
  }
  throw Error(Errc::MalformedSpec, "unknown PCM kind '" + head + "'");
}

}  // namespace

Pcm Pcm::parse(std::string_view descriptor, bool validate) { return parse_descriptor(descriptor, validate); }

// ---------------------------------------------------------------- sampling

Grade Pcm::sample(std::mt19937_64& rng) const {
  if (impl_->finite) {
    std::uniform_int_distribution<std::size_t> d(0, impl_->elems.size() - 1);
    return impl_->elems[d(rng)];
  }
  switch (impl_->kind) {
    case PcmKind::nat_plus:
    case PcmKind::nat_max: {
      std::uniform_int_distribution<std::uint64_t> d(0, 64);
      return atom(impl_->id, d(rng));
    }
    case PcmKind::interval: {
      std::uniform_int_distribution<std::int64_t> dq(1, 12);
      std::int64_t q = dq(rng);
      Rational lim = impl_->r * q;
      std::int64_t pmax = lim.numerator() / lim.denominator();
      std::uniform_int_distribution<std::int64_t> dp(0, pmax);
      return rational(Rational(dp(rng), q));
    }
    case PcmKind::product: {
      std::vector<Grade> parts;
      for (const auto& c : impl_->comps) parts.push_back(c.sample(rng));
      return tuple(std::move(parts));
    }
    default: return zero();
  }
}

std::vector<Grade> Pcm::probe() const {
  if (impl_->finite) return impl_->elems;
  std::vector<Grade> out;
  switch (impl_->kind) {
    case PcmKind::nat_plus:
    case PcmKind::nat_max:
      for (std::uint64_t v = 0; v <= 6; ++v) out.push_back(atom(impl_->id, v));
      return out;
    case PcmKind::interval:
      for (int k = 0; k <= 4; ++k) out.push_back(rational(impl_->r * Rational(k, 4)));
      return out;
    case PcmKind::product: {
      std::vector<std::vector<Grade>> acc{{}};
      for (const auto& c : impl_->comps) {
        auto ps = c.probe();
        std::vector<std::vector<Grade>> next;
        for (const auto& prefix : acc)
          for (const auto& e : ps) {
            auto v = prefix;
            v.push_back(e);
            next.push_back(std::move(v));
          }
        acc = std::move(next);
      }
      for (auto& parts : acc) out.push_back(tuple(std::move(parts)));
      return out;
    }
    default: return {zero()};
  }
}

// ---------------------------------------------------------------- law checks

namespace {

// Calls f on every scanned tuple: the exhaustive probe first, then `budget`
// random tuples for infinite carriers.
template <std::size_t Arity, class F>
void scan(const Pcm& p, std::size_t budget, std::uint64_t seed, F&& f) {
  const auto base = p.probe();
  std::array<std::size_t, Arity> idx{};
  std::array<const Grade*, Arity> cur{};
  while (true) {
    for (std::size_t k = 0; k < Arity; ++k) cur[k] = &base[idx[k]];
    if constexpr (Arity == 1) f(*cur[0]);
    if constexpr (Arity == 2) f(*cur[0], *cur[1]);
    if constexpr (Arity == 3) f(*cur[0], *cur[1], *cur[2]);
    std::size_t k = Arity;
    while (k > 0) {
      --k;
      if (++idx[k] < base.size()) break;
      idx[k] = 0;
      if (k == 0) goto random_phase;
    }
  }
random_phase:
  if (p.finite()) return;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < budget; ++i) {
    std::array<Grade, Arity> g;
    for (auto& x : g) x = p.sample(rng);
    if constexpr (Arity == 1) f(g[0]);
    if constexpr (Arity == 2) f(g[0], g[1]);
    if constexpr (Arity == 3) f(g[0], g[1], g[2]);
  }
}

std::string tup(const Pcm& p, std::initializer_list<const Grade*> gs) {
  std::string out = "(";
  bool first = true;
  for (const Grade* g : gs) {
    if (!first) out += ",";
    out += p.show(*g);
    first = false;
  }
  return out + ")";
}

bool kleene_eq(const std::optional<Grade>& x, const std::optional<Grade>& y) {
  if (x.has_value() != y.has_value()) return false;
  return !x || *x == *y;
}

}  // namespace

Report check_pcm_laws(const Pcm& p, std::size_t budget, std::uint64_t seed) {
  LawTally comm("COMMUTATIVITY"), unit("UNIT"), assoc("ASSOCIATIVITY");
  const Grade z = p.zero();
  scan<2>(p, budget, seed, [&](const Grade& a, const Grade& b) {
    comm.count();
    if (!kleene_eq(p.add(a, b), p.add(b, a))) comm.failure(tup(p, {&a, &b}));
  });
  scan<1>(p, budget, seed + 1, [&](const Grade& a) {
    unit.count();
    auto l = p.add(a, z);
    auto r = p.add(z, a);
    if (!l || !r || *l != a || *r != a) unit.failure(tup(p, {&a}));
  });
  scan<3>(p, budget, seed + 2, [&](const Grade& a, const Grade& b, const Grade& c) {
    assoc.count();
    auto ab = p.add(a, b);
    auto bc = p.add(b, c);
    std::optional<Grade> l = ab ? p.add(*ab, c) : std::nullopt;
    std::optional<Grade> r = bc ? p.add(a, *bc) : std::nullopt;
    if (!kleene_eq(l, r)) assoc.failure(tup(p, {&a, &b, &c}));
  });
  Report r;
  comm.into(r);
  unit.into(r);
  assoc.into(r);
  return r;
}

Report check_order_laws(const Pcm& p, std::size_t budget, std::uint64_t seed) {
  LawTally mono("MONOTONICITY"), agree("LEQ-AGREEMENT");
  scan<3>(p, budget, seed + 3, [&](const Grade& x, const Grade& y, const Grade& b) {
    if (!p.leq(x, y) || !p.orthogonal(y, b)) return;
    mono.count();
    auto xb = p.add(x, b);
    if (!xb || !p.leq(*xb, *p.add(y, b))) mono.failure(tup(p, {&x, &y, &b}));
  });
  scan<2>(p, budget, seed + 4, [&](const Grade& a, const Grade& b) {
    agree.count();
    bool search = p.finite() ? p.leq_search(a, b) : !p.witnesses(a, b).empty();
    if (search != p.leq(a, b)) agree.failure(tup(p, {&a, &b}));
  });
  Report r;
  mono.into(r);
  agree.into(r);
  return r;
}

Report check_separation(const Pcm& p, std::size_t budget, std::uint64_t seed) {
  LawTally canc("CANCELLATIVITY");
  scan<3>(p, budget, seed + 5, [&](const Grade& a, const Grade& b, const Grade& c) {
    canc.count();
    auto ac = p.add(a, c);
    auto bc = p.add(b, c);
    if (ac && bc && *ac == *bc && a != b) canc.failure(tup(p, {&a, &b, &c}));
  });
  Report r;
  canc.into(r);
  return r;
}

Report check_effect_algebra(const Pcm& p, std::size_t budget, std::uint64_t seed) {
  auto t = p.top();
  if (!t) throw Error(Errc::NoTop, std::string(kind_name(p.kind())) + " has no top element");
  LawTally compl_("COMPLEMENT"), invol("COMPLEMENT-INVOLUTION");
  if (p.finite()) {
    std::vector<std::optional<Grade>> comp(p.size());
    for (const auto& a : p.elements()) {
      compl_.count();
      std::vector<Grade> found;
      for (const auto& b : p.elements()) {
        auto s = p.add(a, b);
        if (s && *s == *t) found.push_back(b);
      }
      if (found.size() != 1)
        compl_.failure(tup(p, {&a}) + " has " + std::to_string(found.size()) + " complements");
      else
        comp[p.index_of(a)] = found[0];
    }
    for (const auto& a : p.elements()) {
      const auto& c = comp[p.index_of(a)];
      if (!c) continue;
      invol.count();
      const auto& cc = comp[p.index_of(*c)];
      if (!cc || *cc != a) invol.failure(tup(p, {&a}));
    }
  } else {
    scan<2>(p, budget, seed + 6, [&](const Grade& a, const Grade& b) {
      compl_.count();
      Grade c = p.complement(a);
      auto s = p.add(a, c);
      if (!s || *s != *t) compl_.failure(tup(p, {&a}) + " complement does not reach top");
      auto sb = p.add(a, b);
      if (sb && *sb == *t && b != c) compl_.failure(tup(p, {&a, &b}) + " second complement");
      invol.count();
      if (p.complement(c) != a) invol.failure(tup(p, {&a}));
    });
  }
  Report r;
  compl_.into(r);
  invol.into(r);
  return r;
}

// ---------------------------------------------------------------- homomorphisms

PcmHomomorphism PcmHomomorphism::identity(const Pcm& p) {
  return PcmHomomorphism{p, p, [](const Grade& g) { return g; }};
}

PcmHomomorphism PcmHomomorphism::from_table(const Pcm& source, const Pcm& target,
                                            std::vector<Grade> image) {
  if (image.size() != source.size()) throw Error(Errc::MalformedSpec, "homomorphism table has wrong size");
  for (const auto& g : image)
    if (!target.owns(g)) throw Error(Errc::OwnerMismatch, "homomorphism image outside target");
  auto shared = std::make_shared<std::vector<Grade>>(std::move(image));
  return PcmHomomorphism{source, target,
                         [source, shared](const Grade& g) { return (*shared)[source.index_of(g)]; }};
}

PcmHomomorphism PcmHomomorphism::top_preserving(const Pcm& target) {
  auto t = target.top();
  if (!t) throw Error(Errc::NoTop, "target has no top element");
  Pcm two = Pcm::two();
  return from_table(two, target, {target.zero(), *t});
}

Report check_hom(const PcmHomomorphism& h, std::size_t budget, std::uint64_t seed) {
  LawTally unit("HOM-UNIT"), add("HOM-ADDITIVITY");
  unit.count();
  if (h(h.source.zero()) != h.target.zero()) unit.failure("f(0) = " + h.target.show(h(h.source.zero())));
  scan<2>(h.source, budget, seed + 7, [&](const Grade& a, const Grade& b) {
    auto s = h.source.add(a, b);
    if (!s) return;
    add.count();
    auto t = h.target.add(h(a), h(b));
    if (!t || *t != h(*s)) add.failure(tup(h.source, {&a, &b}));
  });
  Report r;
  unit.into(r);
  add.into(r);
  return r;
}

}  // namespace gmc
