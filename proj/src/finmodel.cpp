#include "gmc/finmodel.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace gmc {

std::size_t ObjectMonoid::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  throw Error(Errc::IllFormed, "unknown object '" + name + "'");
}

ObjectMonoid ObjectMonoid::trivial() { return ObjectMonoid{{"I"}, 0, {0}}; }

GradeAlgebra::GradeAlgebra(const Pcm& p) {
  if (!p.finite()) throw Error(Errc::InfiniteCarrier, p.descriptor() + " is not finite");
  const auto& es = p.elements();
  n_ = es.size();
  zero_ = p.index_of(p.zero());
  add_.assign(n_ * n_, -1);
  leq_.assign(n_ * n_, 0);
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b) {
      if (auto s = p.add(es[a], es[b])) add_[a * n_ + b] = static_cast<int>(p.index_of(*s));
      leq_[a * n_ + b] = p.leq(es[a], es[b]) ? 1 : 0;
    }
  if (auto t = p.top()) top_ = p.index_of(*t);
}

FiniteGradedModel FiniteGradedModel::blank(Pcm pcm, ObjectMonoid objects) {
  FiniteGradedModel m{pcm, GradeAlgebra(pcm), std::move(objects), {}, {}, {}, {}, {}, std::nullopt};
  const std::size_t g = m.grades(), n = m.size();
  m.hom.assign(g, std::vector<std::vector<std::string>>(n * n));
  m.id.assign(n, 0);
  m.comp.assign(g, std::vector<std::vector<Label>>(n * n * n));
  m.regrade.assign(g * g, {});
  m.tensor.assign(g * g, {});
  for (std::size_t a = 0; a < g; ++a)
    for (std::size_t b = 0; b < g; ++b) {
      if (m.alg.leq(a, b)) m.regrade[a * g + b].assign(n * n, {});
      if (m.alg.add(a, b)) m.tensor[a * g + b].assign(n * n * n * n, {});
    }
  return m;
}

std::optional<Label> FiniteGradedModel::find_label(std::size_t e, std::size_t x, std::size_t y,
                                                   const std::string& name) const {
  const auto& ls = labels(e, x, y);
  auto it = std::find(ls.begin(), ls.end(), name);
  if (it == ls.end()) return std::nullopt;
  return static_cast<Label>(it - ls.begin());
}

namespace {

[[noreturn]] void ill(const std::string& msg) { throw Error(Errc::IllFormed, msg); }

std::string tuple_of(const std::vector<std::string>& xs) {
  std::string out = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + xs[i];
  return out + ")";
}

void validate_monoid(const ObjectMonoid& o) {
  const std::size_t n = o.size();
  if (n == 0) ill("the object monoid is empty");
  if (o.unit >= n) ill("the unit object is out of range");
  if (o.mult.size() != n * n) ill("the object multiplication table has the wrong shape");
  std::set<std::string> seen;
  for (const auto& s : o.names)
    if (!seen.insert(s).second) ill("object '" + s + "' is declared twice");
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y)
      if (o(x, y) >= n) ill("object product " + tuple_of({o.names[x], o.names[y]}) + " is out of range");
    if (o(o.unit, x) != x || o(x, o.unit) != x) ill("the unit law fails at object " + o.names[x]);
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (o(o(x, y), z) != o(x, o(y, z)))
          ill("object multiplication is not associative at " + tuple_of({o.names[x], o.names[y], o.names[z]}));
}

}  // namespace

void validate(const FiniteGradedModel& m) {
  validate_monoid(m.objects);
  const std::size_t g = m.grades(), n = m.size();
  if (m.hom.size() != g || m.comp.size() != g || m.regrade.size() != g * g || m.tensor.size() != g * g ||
      m.id.size() != n)
    ill("table shapes do not match the carrier");
  auto where = [&](std::size_t e, std::size_t x, std::size_t y) {
    return "grade " + m.grade_name(e) + " hom(" + m.objects.names[x] + "," + m.objects.names[y] + ")";
  };
  for (std::size_t e = 0; e < g; ++e) {
    if (m.hom[e].size() != n * n || m.comp[e].size() != n * n * n) ill("table shapes do not match the carrier");
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        std::set<std::string> seen;
        for (const auto& l : m.labels(e, x, y))
          if (!seen.insert(l).second) ill(where(e, x, y) + " repeats label '" + l + "'");
      }
  }
  for (std::size_t x = 0; x < n; ++x)
    if (m.id[x] >= m.count(m.zero(), x, x)) ill("identity of " + m.objects.names[x] + " is out of range");
  for (std::size_t e = 0; e < g; ++e)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z) {
          const auto& t = m.comp[e][m.triple(x, y, z)];
          if (t.size() != m.count(e, x, y) * m.count(e, y, z))
            ill("comp table at grade " + m.grade_name(e) + " objects " +
                tuple_of({m.objects.names[x], m.objects.names[y], m.objects.names[z]}) + " is not total");
          for (std::size_t k = 0; k < t.size(); ++k)
            if (t[k] >= m.count(e, x, z))
              ill("comp at grade " + m.grade_name(e) + " objects " +
                  tuple_of({m.objects.names[x], m.objects.names[y], m.objects.names[z]}) + " labels " +
                  tuple_of({m.labels(e, x, y)[k / m.count(e, y, z)], m.labels(e, y, z)[k % m.count(e, y, z)]}) +
                  " leaves " + where(e, x, z));
        }
  for (std::size_t a = 0; a < g; ++a)
    for (std::size_t b = 0; b < g; ++b) {
      const auto& r = m.regrade[a * g + b];
      if (!m.alg.leq(a, b)) {
        if (!r.empty()) ill("regrade from " + m.grade_name(a) + " to " + m.grade_name(b) + " is not an extension");
        continue;
      }
      if (r.size() != n * n) ill("regrade table " + m.grade_name(a) + " to " + m.grade_name(b) + " has the wrong shape");
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
          const auto& t = r[m.pair(x, y)];
          if (t.size() != m.count(a, x, y))
            ill("regrade " + m.grade_name(a) + " to " + m.grade_name(b) + " is not total on " + where(a, x, y));
          for (std::size_t i = 0; i < t.size(); ++i)
            if (t[i] >= m.count(b, x, y))
              ill("regrade " + m.grade_name(a) + " to " + m.grade_name(b) + " of '" + m.labels(a, x, y)[i] +
                  "' leaves " + where(b, x, y));
        }
    }
  for (std::size_t a = 0; a < g; ++a)
    for (std::size_t b = 0; b < g; ++b) {
      const auto& tt = m.tensor[a * g + b];
      auto s = m.alg.add(a, b);
      if (!s) {
        if (!tt.empty()) ill("tensor at non-orthogonal grades " + tuple_of({m.grade_name(a), m.grade_name(b)}));
        continue;
      }
      if (tt.size() != n * n * n * n) ill("tensor table has the wrong shape");
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          for (std::size_t x2 = 0; x2 < n; ++x2)
            for (std::size_t y2 = 0; y2 < n; ++y2) {
              const auto& t = tt[m.quad(x, y, x2, y2)];
              const std::size_t xx = m.objects(x, x2), yy = m.objects(y, y2);
              if (t.size() != m.count(a, x, y) * m.count(b, x2, y2))
                ill("tensor at grades " + tuple_of({m.grade_name(a), m.grade_name(b)}) + " objects " +
                    tuple_of({m.objects.names[x], m.objects.names[y], m.objects.names[x2], m.objects.names[y2]}) +
                    " is not total");
              for (std::size_t k = 0; k < t.size(); ++k)
                if (t[k] >= m.count(*s, xx, yy))
                  ill("tensor at grades " + tuple_of({m.grade_name(a), m.grade_name(b)}) + " objects " +
                      tuple_of({m.objects.names[x], m.objects.names[y], m.objects.names[x2], m.objects.names[y2]}) +
                      " leaves " + where(*s, xx, yy));
            }
    }
  if (m.braiding) {
    if (m.braiding->size() != n * n) ill("braiding table has the wrong shape");
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if ((*m.braiding)[m.pair(x, y)] >= m.count(m.zero(), m.objects(x, y), m.objects(y, x)))
          ill("braiding at " + tuple_of({m.objects.names[x], m.objects.names[y]}) + " is out of range");
  }
}

bool same_tables(const FiniteGradedModel& a, const FiniteGradedModel& b) {
  return a.pcm.descriptor() == b.pcm.descriptor() && a.objects == b.objects && a.hom == b.hom && a.id == b.id &&
         a.comp == b.comp && a.regrade == b.regrade && a.tensor == b.tensor && a.braiding == b.braiding;
}

FiniteGradedModel tabulate(const ModelSpec& spec) {
  FiniteGradedModel m = FiniteGradedModel::blank(spec.pcm, spec.objects);
  validate_monoid(m.objects);
  const std::size_t g = m.grades(), n = m.size();
  for (std::size_t e = 0; e < g; ++e)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) m.hom[e][m.pair(x, y)] = spec.hom(e, x, y);
  auto find = [&](std::size_t e, std::size_t x, std::size_t y, const std::string& l, const char* what) {
    auto i = m.find_label(e, x, y, l);
    if (!i)
      ill(std::string(what) + " produced '" + l + "', not in grade " + m.grade_name(e) + " hom(" +
          m.objects.names[x] + "," + m.objects.names[y] + ")");
    return *i;
  };
  for (std::size_t x = 0; x < n; ++x) m.id[x] = find(m.zero(), x, x, spec.id(x), "id");
  for (std::size_t e = 0; e < g; ++e)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z) {
          auto& t = m.comp[e][m.triple(x, y, z)];
          for (const auto& f : m.labels(e, x, y))
            for (const auto& h : m.labels(e, y, z)) t.push_back(find(e, x, z, spec.comp(e, x, y, z, f, h), "comp"));
        }
  for (std::size_t a = 0; a < g; ++a)
    for (std::size_t b = 0; b < g; ++b) {
      if (!m.alg.leq(a, b)) continue;
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
          auto& t = m.regrade[a * g + b][m.pair(x, y)];
          for (const auto& f : m.labels(a, x, y)) t.push_back(find(b, x, y, spec.regrade(a, b, x, y, f), "regrade"));
        }
    }
  for (std::size_t a = 0; a < g; ++a)
    for (std::size_t b = 0; b < g; ++b) {
      auto s = m.alg.add(a, b);
      if (!s) continue;
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          for (std::size_t x2 = 0; x2 < n; ++x2)
            for (std::size_t y2 = 0; y2 < n; ++y2) {
              auto& t = m.tensor[a * g + b][m.quad(x, y, x2, y2)];
              const std::size_t xx = m.objects(x, x2), yy = m.objects(y, y2);
              for (const auto& f : m.labels(a, x, y))
                for (const auto& h : m.labels(b, x2, y2))
                  t.push_back(find(*s, xx, yy, spec.tensor(a, b, x, y, x2, y2, f, h), "tensor"));
            }
    }
  if (spec.braiding) {
    std::vector<Label> br(n * n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        br[m.pair(x, y)] = find(m.zero(), m.objects(x, y), m.objects(y, x), spec.braiding(x, y), "braiding");
    m.braiding = std::move(br);
  }
  validate(m);
  return m;
}

// ---------------------------------------------------------------- axioms

namespace {

// Formats "grades (..) objects (..) labels (..)".
struct Cex {
  const FiniteGradedModel& m;
  std::string grades(std::initializer_list<std::size_t> gs) const {
    std::vector<std::string> s;
    for (auto e : gs) s.push_back(m.grade_name(e));
    return "grades " + tuple_of(s);
  }
  std::string objects(std::initializer_list<std::size_t> xs) const {
    std::vector<std::string> s;
    for (auto x : xs) s.push_back(m.objects.names[x]);
    return " objects " + tuple_of(s);
  }
  std::string labels(std::vector<std::string> ls) const { return " labels " + tuple_of(ls); }
};

}  // namespace

Report check_axioms(const FiniteGradedModel& m) {
  const std::size_t g = m.grades(), n = m.size(), z0 = m.zero(), unit = m.objects.unit;
  const auto& O = m.objects;
  Cex cx{m};
  LawTally category("CATEGORY"), regfun("REG-FUNCTOR"), regact("REG-ACT"), regten("REG-TENSOR"),
      unitassoc("TENSOR-UNIT-ASSOC"), tid("TENSOR-ID"), inter("INTER");
  auto L = [&](std::size_t e, std::size_t x, std::size_t y, Label i) { return m.labels(e, x, y)[i]; };

  for (std::size_t a = 0; a < g; ++a) {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (Label f = 0; f < m.count(a, x, y); ++f) {
          category.count();
          if (m.compose(a, x, x, y, m.identity(a, x), f) != f || m.compose(a, x, y, y, f, m.identity(a, y)) != f)
            category.failure(cx.grades({a}) + cx.objects({x, y}) + cx.labels({L(a, x, y, f)}));
        }
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z)
          for (std::size_t w = 0; w < n; ++w)
            for (Label f = 0; f < m.count(a, x, y); ++f)
              for (Label h = 0; h < m.count(a, y, z); ++h)
                for (Label k = 0; k < m.count(a, z, w); ++k) {
                  category.count();
                  auto l = m.compose(a, x, z, w, m.compose(a, x, y, z, f, h), k);
                  auto r = m.compose(a, x, y, w, f, m.compose(a, y, z, w, h, k));
                  if (l != r)
                    category.failure(cx.grades({a}) + cx.objects({x, y, z, w}) +
                                     cx.labels({L(a, x, y, f), L(a, y, z, h), L(a, z, w, k)}));
                }
  }

  for (std::size_t a = 0; a < g; ++a)
    for (std::size_t b = 0; b < g; ++b) {
      if (!m.alg.leq(a, b)) continue;
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          for (std::size_t z = 0; z < n; ++z)
            for (Label f = 0; f < m.count(a, x, y); ++f)
              for (Label h = 0; h < m.count(a, y, z); ++h) {
                regfun.count();
                auto l = m.regraded(a, b, x, z, m.compose(a, x, y, z, f, h));
                auto r = m.compose(b, x, y, z, m.regraded(a, b, x, y, f), m.regraded(a, b, y, z, h));
                if (l != r) regfun.failure(cx.grades({a, b}) + cx.objects({x, y, z}) + cx.labels({L(a, x, y, f), L(a, y, z, h)}));
              }
    }

  for (std::size_t a = 0; a < g; ++a) {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (Label f = 0; f < m.count(a, x, y); ++f) {
          regact.count();
          if (m.regraded(a, a, x, y, f) != f) regact.failure(cx.grades({a, a}) + cx.objects({x, y}) + cx.labels({L(a, x, y, f)}));
        }
    for (std::size_t b = 0; b < g; ++b) {
      if (!m.alg.leq(a, b)) continue;
      for (std::size_t c = 0; c < g; ++c) {
        if (!m.alg.leq(b, c)) continue;
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t y = 0; y < n; ++y)
            for (Label f = 0; f < m.count(a, x, y); ++f) {
              regact.count();
              if (m.regraded(b, c, x, y, m.regraded(a, b, x, y, f)) != m.regraded(a, c, x, y, f))
                regact.failure(cx.grades({a, b, c}) + cx.objects({x, y}) + cx.labels({L(a, x, y, f)}));
            }
      }
    }
  }

  for (std::size_t a = 0; a < g; ++a)
    for (std::size_t b = 0; b < g; ++b) {
      auto s = m.alg.add(a, b);
      if (!s) continue;
      for (std::size_t c = 0; c < g; ++c) {
        if (!m.alg.leq(a, c)) continue;
        for (std::size_t d = 0; d < g; ++d) {
          if (!m.alg.leq(b, d)) continue;
          auto t = m.alg.add(c, d);
          if (!t || !m.alg.leq(*s, *t)) continue;
          for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
              for (std::size_t x2 = 0; x2 < n; ++x2)
                for (std::size_t y2 = 0; y2 < n; ++y2)
                  for (Label f = 0; f < m.count(a, x, y); ++f)
                    for (Label h = 0; h < m.count(b, x2, y2); ++h) {
                      regten.count();
                      auto l = m.regraded(*s, *t, O(x, x2), O(y, y2), m.tensored(a, b, x, y, x2, y2, f, h));
                      auto r = m.tensored(c, d, x, y, x2, y2, m.regraded(a, c, x, y, f), m.regraded(b, d, x2, y2, h));
                      if (l != r)
                        regten.failure(cx.grades({a, b, c, d}) + cx.objects({x, y, x2, y2}) +
                                       cx.labels({L(a, x, y, f), L(b, x2, y2, h)}));
                    }
        }
      }
    }

  const Label idI = m.id[unit];
  for (std::size_t a = 0; a < g; ++a)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (Label f = 0; f < m.count(a, x, y); ++f) {
          unitassoc.count();
          if (m.tensored(a, z0, x, y, unit, unit, f, idI) != f || m.tensored(z0, a, unit, unit, x, y, idI, f) != f)
            unitassoc.failure(cx.grades({a}) + cx.objects({x, y}) + cx.labels({L(a, x, y, f)}));
        }
  for (std::size_t a = 0; a < g; ++a)
    for (std::size_t b = 0; b < g; ++b) {
      auto ab = m.alg.add(a, b);
      if (!ab) continue;
      for (std::size_t c = 0; c < g; ++c) {
        auto abc = m.alg.add(*ab, c);
        if (!abc) continue;
        auto bc = m.alg.add(b, c);
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t y = 0; y < n; ++y)
            for (std::size_t x2 = 0; x2 < n; ++x2)
              for (std::size_t y2 = 0; y2 < n; ++y2)
                for (std::size_t x3 = 0; x3 < n; ++x3)
                  for (std::size_t y3 = 0; y3 < n; ++y3)
                    for (Label f = 0; f < m.count(a, x, y); ++f)
                      for (Label h = 0; h < m.count(b, x2, y2); ++h)
                        for (Label k = 0; k < m.count(c, x3, y3); ++k) {
                          unitassoc.count();
                          auto l = m.tensored(*ab, c, O(x, x2), O(y, y2), x3, y3, m.tensored(a, b, x, y, x2, y2, f, h), k);
                          bool bad = !bc;
                          if (bc) {
                            auto r = m.tensored(a, *bc, x, y, O(x2, x3), O(y2, y3), f,
                                                m.tensored(b, c, x2, y2, x3, y3, h, k));
                            bad = l != r;
                          }
                          if (bad)
                            unitassoc.failure(cx.grades({a, b, c}) + cx.objects({x, y, x2, y2, x3, y3}) +
                                              cx.labels({L(a, x, y, f), L(b, x2, y2, h), L(c, x3, y3, k)}));
                        }
      }
    }

  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      tid.count();
      if (m.tensored(z0, z0, x, x, y, y, m.id[x], m.id[y]) != m.id[O(x, y)])
        tid.failure(cx.grades({z0, z0}) + cx.objects({x, y}));
    }

  for (std::size_t a = 0; a < g; ++a)
    for (std::size_t b = 0; b < g; ++b) {
      auto s = m.alg.add(a, b);
      if (!s) continue;
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          for (std::size_t z = 0; z < n; ++z)
            for (std::size_t x2 = 0; x2 < n; ++x2)
              for (std::size_t y2 = 0; y2 < n; ++y2)
                for (std::size_t z2 = 0; z2 < n; ++z2) {
                  const std::size_t nf = m.count(a, x, y), nh = m.count(a, y, z), ng = m.count(b, x2, y2),
                                    nk = m.count(b, y2, z2);
                  if (!nf || !nh || !ng || !nk) continue;
                  for (Label f = 0; f < nf; ++f)
                    for (Label h = 0; h < nh; ++h)
                      for (Label q = 0; q < ng; ++q)
                        for (Label k = 0; k < nk; ++k) {
                          inter.count();
                          auto l = m.compose(*s, O(x, x2), O(y, y2), O(z, z2), m.tensored(a, b, x, y, x2, y2, f, q),
                                             m.tensored(a, b, y, z, y2, z2, h, k));
                          auto r = m.tensored(a, b, x, z, x2, z2, m.compose(a, x, y, z, f, h),
                                              m.compose(b, x2, y2, z2, q, k));
                          if (l != r)
                            inter.failure(cx.grades({a, b}) + cx.objects({x, y, z, x2, y2, z2}) +
                                          cx.labels({L(a, x, y, f), L(b, x2, y2, q), L(a, y, z, h), L(b, y2, z2, k)}));
                        }
                }
    }

  Report r;
  for (auto* t : {&category, &regfun, &regact, &regten, &unitassoc, &tid, &inter}) t->into(r);
  return r;
}

Report check_symmetric(const FiniteGradedModel& m) {
  if (!m.braiding) throw Error(Errc::NoBraiding, "the model has no braiding table");
  const std::size_t g = m.grades(), n = m.size(), z0 = m.zero(), unit = m.objects.unit;
  const auto& O = m.objects;
  const auto& sg = *m.braiding;
  auto s = [&](std::size_t x, std::size_t y) { return sg[m.pair(x, y)]; };
  Cex cx{m};
  LawTally inv("BRAID-INVOLUTION"), hex("BRAID-HEXAGON"), un("BRAID-UNIT"), nat("BRAID-NATURALITY"),
      gsym("GRADED-SYMMETRY");
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      inv.count();
      if (m.compose(z0, O(x, y), O(y, x), O(x, y), s(x, y), s(y, x)) != m.id[O(x, y)])
        inv.failure(cx.objects({x, y}).substr(1));
    }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        hex.count();
        auto l1 = m.tensored(z0, z0, O(x, y), O(y, x), z, z, s(x, y), m.id[z]);
        auto l2 = m.tensored(z0, z0, y, y, O(x, z), O(z, x), m.id[y], s(x, z));
        auto l = m.compose(z0, O(O(x, y), z), O(O(y, x), z), O(y, O(z, x)), l1, l2);
        if (l != s(x, O(y, z))) hex.failure(cx.objects({x, y, z}).substr(1));
      }
  for (std::size_t x = 0; x < n; ++x) {
    un.count();
    if (s(x, unit) != m.id[x]) un.failure(cx.objects({x}).substr(1));
  }
  auto symmetry = [&](std::size_t a, std::size_t b, LawTally& tally) {
    auto ab = m.alg.add(a, b);
    if (!ab) return;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t x2 = 0; x2 < n; ++x2)
          for (std::size_t y2 = 0; y2 < n; ++y2)
            for (Label f = 0; f < m.count(a, x, y); ++f)
              for (Label h = 0; h < m.count(b, x2, y2); ++h) {
                tally.count();
                auto l = m.compose(*ab, O(x, x2), O(y, y2), O(y2, y), m.tensored(a, b, x, y, x2, y2, f, h),
                                   m.regraded(z0, *ab, O(y, y2), O(y2, y), s(y, y2)));
                auto r = m.compose(*ab, O(x, x2), O(x2, x), O(y2, y), m.regraded(z0, *ab, O(x, x2), O(x2, x), s(x, x2)),
                                   m.tensored(b, a, x2, y2, x, y, h, f));
                if (l != r)
                  tally.failure(cx.grades({a, b}) + cx.objects({x, y, x2, y2}) +
                                cx.labels({m.labels(a, x, y)[f], m.labels(b, x2, y2)[h]}));
              }
  };
  symmetry(z0, z0, nat);
  for (std::size_t a = 0; a < g; ++a)
    for (std::size_t b = 0; b < g; ++b) symmetry(a, b, gsym);
  Report r;
  for (auto* t : {&inv, &hex, &un, &nat, &gsym}) t->into(r);
  return r;
}

Report check_interchange_lemma(const FiniteGradedModel& m) {
  const std::size_t g = m.grades(), n = m.size(), z0 = m.zero();
  const auto& O = m.objects;
  Cex cx{m};
  LawTally left("INTERCHANGE-LEFT"), right("INTERCHANGE-RIGHT");
  for (std::size_t a = 0; a < g; ++a)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t x2 = 0; x2 < n; ++x2)
          for (std::size_t y2 = 0; y2 < n; ++y2)
            for (Label f = 0; f < m.count(z0, x, y); ++f)
              for (Label q = 0; q < m.count(a, x2, y2); ++q) {
                const Label fa = m.regraded(z0, a, x, y, f);
                auto cex = [&] {
                  return cx.grades({a}) + cx.objects({x, y, x2, y2}) +
                         cx.labels({m.labels(z0, x, y)[f], m.labels(a, x2, y2)[q]});
                };
                // f (x) g
                left.count();
                const Label t = m.tensored(z0, a, x, y, x2, y2, f, q);
                auto l1 = m.compose(a, O(x, x2), O(y, x2), O(y, y2), m.tensored(a, z0, x, y, x2, x2, fa, m.id[x2]),
                                    m.tensored(z0, a, y, y, x2, y2, m.id[y], q));
                auto l2 = m.compose(a, O(x, x2), O(x, y2), O(y, y2), m.tensored(z0, a, x, x, x2, y2, m.id[x], q),
                                    m.tensored(a, z0, x, y, y2, y2, fa, m.id[y2]));
                if (l1 != t || l2 != t) left.failure(cex());
                // g (x) f
                right.count();
                const Label u = m.tensored(a, z0, x2, y2, x, y, q, f);
                auto r1 = m.compose(a, O(x2, x), O(y2, x), O(y2, y), m.tensored(a, z0, x2, y2, x, x, q, m.id[x]),
                                    m.tensored(z0, a, y2, y2, x, y, m.id[y2], fa));
                auto r2 = m.compose(a, O(x2, x), O(x2, y), O(y2, y), m.tensored(z0, a, x2, x2, x, y, m.id[x2], fa),
                                    m.tensored(a, z0, x2, y2, y, y, q, m.id[y]));
                if (r1 != u || r2 != u) right.failure(cex());
              }
  Report r;
  left.into(r);
  right.into(r);
  return r;
}

Report check_regrade_witness(const FiniteGradedModel& m) {
  const std::size_t g = m.grades(), n = m.size(), z0 = m.zero(), unit = m.objects.unit;
  Cex cx{m};
  LawTally w("REGRADE-WITNESS");
  for (std::size_t a = 0; a < g; ++a)
    for (std::size_t c = 0; c < g; ++c) {
      auto b = m.alg.add(a, c);
      if (!b) continue;
      const Label idc = m.regraded(z0, c, unit, unit, m.id[unit]);
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          for (Label f = 0; f < m.count(a, x, y); ++f) {
            w.count();
            if (m.regraded(a, *b, x, y, f) != m.tensored(a, c, x, y, unit, unit, f, idc))
              w.failure(cx.grades({a, *b, c}) + cx.objects({x, y}) + cx.labels({m.labels(a, x, y)[f]}));
          }
    }
  Report r;
  w.into(r);
  return r;
}

// ---------------------------------------------------------------- single categories

namespace {

std::string objs(const ObjectMonoid& o, std::initializer_list<std::size_t> xs) {
  std::vector<std::string> s;
  for (auto x : xs) s.push_back(o.names[x]);
  return "objects " + tuple_of(s);
}

}  // namespace

Report check_category(const ObjectMonoid& o, const CategoryTables& c, const std::string& prefix) {
  const std::size_t n = o.size();
  LawTally t(prefix + "CATEGORY");
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (Label f = 0; f < c.count(n, x, y); ++f) {
        t.count();
        if (c.compose(n, x, x, y, c.id[x], f) != f || c.compose(n, x, y, y, f, c.id[y]) != f)
          t.failure(objs(o, {x, y}) + " labels (" + c.hom[x * n + y][f] + ")");
      }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        for (std::size_t w = 0; w < n; ++w)
          for (Label f = 0; f < c.count(n, x, y); ++f)
            for (Label h = 0; h < c.count(n, y, z); ++h)
              for (Label k = 0; k < c.count(n, z, w); ++k) {
                t.count();
                if (c.compose(n, x, z, w, c.compose(n, x, y, z, f, h), k) !=
                    c.compose(n, x, y, w, f, c.compose(n, y, z, w, h, k)))
                  t.failure(objs(o, {x, y, z, w}) + " labels " +
                            tuple_of({c.hom[x * n + y][f], c.hom[y * n + z][h], c.hom[z * n + w][k]}));
              }
  Report r;
  t.into(r);
  return r;
}

Report check_monoidal(const MonoidalTables& mt, const std::string& prefix) {
  const auto& o = mt.objects;
  const auto& c = mt.cat;
  const std::size_t n = o.size(), unit = o.unit;
  auto quad = [&](std::size_t x, std::size_t y, std::size_t x2, std::size_t y2) { return ((x * n + y) * n + x2) * n + y2; };
  auto ten = [&](std::size_t x, std::size_t y, std::size_t x2, std::size_t y2, Label f, Label g) {
    return mt.tensor[quad(x, y, x2, y2)][f * c.count(n, x2, y2) + g];
  };
  auto lab = [&](std::size_t x, std::size_t y, Label f) { return c.hom[x * n + y][f]; };
  Report r = check_category(o, c, prefix);
  LawTally tu(prefix + "TENSOR-UNIT"), ta(prefix + "TENSOR-ASSOC"), ti(prefix + "TENSOR-ID"),
      tx(prefix + "TENSOR-INTERCHANGE");
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (Label f = 0; f < c.count(n, x, y); ++f) {
        tu.count();
        if (ten(x, y, unit, unit, f, c.id[unit]) != f || ten(unit, unit, x, y, c.id[unit], f) != f)
          tu.failure(objs(o, {x, y}) + " labels (" + lab(x, y, f) + ")");
      }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t x2 = 0; x2 < n; ++x2)
        for (std::size_t y2 = 0; y2 < n; ++y2)
          for (std::size_t x3 = 0; x3 < n; ++x3)
            for (std::size_t y3 = 0; y3 < n; ++y3)
              for (Label f = 0; f < c.count(n, x, y); ++f)
                for (Label g = 0; g < c.count(n, x2, y2); ++g)
                  for (Label h = 0; h < c.count(n, x3, y3); ++h) {
                    ta.count();
                    auto l = ten(o(x, x2), o(y, y2), x3, y3, ten(x, y, x2, y2, f, g), h);
                    auto rr = ten(x, y, o(x2, x3), o(y2, y3), f, ten(x2, y2, x3, y3, g, h));
                    if (l != rr)
                      ta.failure(objs(o, {x, y, x2, y2, x3, y3}) + " labels " +
                                 tuple_of({lab(x, y, f), lab(x2, y2, g), lab(x3, y3, h)}));
                  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      ti.count();
      if (ten(x, x, y, y, c.id[x], c.id[y]) != c.id[o(x, y)]) ti.failure(objs(o, {x, y}));
    }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        for (std::size_t x2 = 0; x2 < n; ++x2)
          for (std::size_t y2 = 0; y2 < n; ++y2)
            for (std::size_t z2 = 0; z2 < n; ++z2)
              for (Label f = 0; f < c.count(n, x, y); ++f)
                for (Label h = 0; h < c.count(n, y, z); ++h)
                  for (Label g = 0; g < c.count(n, x2, y2); ++g)
                    for (Label k = 0; k < c.count(n, y2, z2); ++k) {
                      tx.count();
                      auto l = ten(x, z, x2, z2, c.compose(n, x, y, z, f, h), c.compose(n, x2, y2, z2, g, k));
                      auto rr = c.compose(n, o(x, x2), o(y, y2), o(z, z2), ten(x, y, x2, y2, f, g), ten(y, z, y2, z2, h, k));
                      if (l != rr)
                        tx.failure(objs(o, {x, y, z, x2, y2, z2}) + " labels " +
                                   tuple_of({lab(x, y, f), lab(y, z, h), lab(x2, y2, g), lab(y2, z2, k)}));
                    }
  for (auto* t : {&tu, &ta, &ti, &tx}) t->into(r);
  if (mt.braiding) {
    const auto& sg = *mt.braiding;
    auto s = [&](std::size_t x, std::size_t y) { return sg[x * n + y]; };
    LawTally inv(prefix + "BRAID-INVOLUTION"), hex(prefix + "BRAID-HEXAGON"), un(prefix + "BRAID-UNIT"),
        nat(prefix + "BRAID-NATURALITY");
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        inv.count();
        if (c.compose(n, o(x, y), o(y, x), o(x, y), s(x, y), s(y, x)) != c.id[o(x, y)]) inv.failure(objs(o, {x, y}));
        for (std::size_t z = 0; z < n; ++z) {
          hex.count();
          auto l = c.compose(n, o(o(x, y), z), o(o(y, x), z), o(y, o(z, x)), ten(o(x, y), o(y, x), z, z, s(x, y), c.id[z]),
                             ten(y, y, o(x, z), o(z, x), c.id[y], s(x, z)));
          if (l != s(x, o(y, z))) hex.failure(objs(o, {x, y, z}));
        }
      }
    for (std::size_t x = 0; x < n; ++x) {
      un.count();
      if (s(x, unit) != c.id[x]) un.failure(objs(o, {x}));
    }
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t x2 = 0; x2 < n; ++x2)
          for (std::size_t y2 = 0; y2 < n; ++y2)
            for (Label f = 0; f < c.count(n, x, y); ++f)
              for (Label g = 0; g < c.count(n, x2, y2); ++g) {
                nat.count();
                auto l = c.compose(n, o(x, x2), o(y, y2), o(y2, y), ten(x, y, x2, y2, f, g), s(y, y2));
                auto rr = c.compose(n, o(x, x2), o(x2, x), o(y2, y), s(x, x2), ten(x2, y2, x, y, g, f));
                if (l != rr) nat.failure(objs(o, {x, y, x2, y2}) + " labels " + tuple_of({lab(x, y, f), lab(x2, y2, g)}));
              }
    for (auto* t : {&inv, &hex, &un, &nat}) t->into(r);
  }
  return r;
}

namespace {

// a ⋉ f and f ⋊ a in a premonoidal table.
struct Whisk {
  const PremonoidalTables& p;
  std::size_t n;
  Label left(std::size_t a, std::size_t x, std::size_t y, Label f) const { return p.left[a][x * n + y][f]; }
  Label right(std::size_t a, std::size_t x, std::size_t y, Label f) const { return p.right[a][x * n + y][f]; }
};

// Whether f : a -> b is central.
std::optional<std::string> central_failure(const PremonoidalTables& p, std::size_t a, std::size_t b, Label f) {
  const auto& o = p.objects;
  const auto& c = p.cat;
  const std::size_t n = o.size();
  Whisk w{p, n};
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (Label g = 0; g < c.count(n, x, y); ++g) {
        auto l1 = c.compose(n, o(a, x), o(a, y), o(b, y), w.left(a, x, y, g), w.right(y, a, b, f));
        auto r1 = c.compose(n, o(a, x), o(b, x), o(b, y), w.right(x, a, b, f), w.left(b, x, y, g));
        auto l2 = c.compose(n, o(x, a), o(y, a), o(y, b), w.right(a, x, y, g), w.left(y, a, b, f));
        auto r2 = c.compose(n, o(x, a), o(x, b), o(y, b), w.left(x, a, b, f), w.right(b, x, y, g));
        if (l1 != r1 || l2 != r2) return objs(o, {a, b, x, y}) + " labels " + tuple_of({c.hom[a * n + b][f], c.hom[x * n + y][g]});
      }
  return std::nullopt;
}

}  // namespace

Report check_premonoidal(const PremonoidalTables& p, const std::string& prefix) {
  const auto& o = p.objects;
  const auto& c = p.cat;
  const std::size_t n = o.size(), unit = o.unit;
  Whisk w{p, n};
  auto lab = [&](std::size_t x, std::size_t y, Label f) { return c.hom[x * n + y][f]; };
  Report r = check_category(o, c, prefix);
  LawTally fun(prefix + "WHISKER-FUNCTOR"), mixed(prefix + "WHISKER-MIXED"), lact(prefix + "WHISKER-LEFT-ACTION"),
      ract(prefix + "WHISKER-RIGHT-ACTION"), wun(prefix + "WHISKER-UNIT");
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t x = 0; x < n; ++x) {
      fun.count();
      if (w.left(a, x, x, c.id[x]) != c.id[o(a, x)] || w.right(a, x, x, c.id[x]) != c.id[o(x, a)])
        fun.failure(objs(o, {a, x}));
    }
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z)
          for (Label f = 0; f < c.count(n, x, y); ++f)
            for (Label g = 0; g < c.count(n, y, z); ++g) {
              fun.count();
              auto fg = c.compose(n, x, y, z, f, g);
              bool okl = w.left(a, x, z, fg) == c.compose(n, o(a, x), o(a, y), o(a, z), w.left(a, x, y, f), w.left(a, y, z, g));
              bool okr = w.right(a, x, z, fg) == c.compose(n, o(x, a), o(y, a), o(z, a), w.right(a, x, y, f), w.right(a, y, z, g));
              if (!okl || !okr) fun.failure(objs(o, {a, x, y, z}) + " labels " + tuple_of({lab(x, y, f), lab(y, z, g)}));
            }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          for (Label f = 0; f < c.count(n, x, y); ++f) {
            auto cex = objs(o, {a, b, x, y}) + " labels (" + lab(x, y, f) + ")";
            mixed.count();
            if (w.right(b, o(a, x), o(a, y), w.left(a, x, y, f)) != w.left(a, o(x, b), o(y, b), w.right(b, x, y, f)))
              mixed.failure(cex);
            lact.count();
            if (w.left(o(a, b), x, y, f) != w.left(a, o(b, x), o(b, y), w.left(b, x, y, f))) lact.failure(cex);
            ract.count();
            if (w.right(o(a, b), x, y, f) != w.right(b, o(x, a), o(y, a), w.right(a, x, y, f))) ract.failure(cex);
          }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (Label f = 0; f < c.count(n, x, y); ++f) {
        wun.count();
        if (w.left(unit, x, y, f) != f || w.right(unit, x, y, f) != f)
          wun.failure(objs(o, {x, y}) + " labels (" + lab(x, y, f) + ")");
      }
  for (auto* t : {&fun, &mixed, &lact, &ract, &wun}) t->into(r);
  if (p.braiding) {
    const auto& sg = *p.braiding;
    auto s = [&](std::size_t x, std::size_t y) { return sg[x * n + y]; };
    LawTally cen(prefix + "BRAID-CENTRAL"), inv(prefix + "BRAID-INVOLUTION"), hex(prefix + "BRAID-HEXAGON"),
        un(prefix + "BRAID-UNIT"), nat(prefix + "BRAID-NATURALITY");
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        cen.count();
        if (auto bad = central_failure(p, o(x, y), o(y, x), s(x, y))) cen.failure(*bad);
        inv.count();
        if (c.compose(n, o(x, y), o(y, x), o(x, y), s(x, y), s(y, x)) != c.id[o(x, y)]) inv.failure(objs(o, {x, y}));
        for (std::size_t z = 0; z < n; ++z) {
          hex.count();
          auto l = c.compose(n, o(o(x, y), z), o(o(y, x), z), o(y, o(z, x)), w.right(z, o(x, y), o(y, x), s(x, y)),
                             w.left(y, o(x, z), o(z, x), s(x, z)));
          if (l != s(x, o(y, z))) hex.failure(objs(o, {x, y, z}));
        }
      }
    for (std::size_t x = 0; x < n; ++x) {
      un.count();
      if (s(x, unit) != c.id[x]) un.failure(objs(o, {x}));
    }
    for (std::size_t z = 0; z < n; ++z)
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          for (Label f = 0; f < c.count(n, x, y); ++f) {
            nat.count();
            auto l1 = c.compose(n, o(x, z), o(y, z), o(z, y), w.right(z, x, y, f), s(y, z));
            auto r1 = c.compose(n, o(x, z), o(z, x), o(z, y), s(x, z), w.left(z, x, y, f));
            auto l2 = c.compose(n, o(z, x), o(z, y), o(y, z), w.left(z, x, y, f), s(z, y));
            auto r2 = c.compose(n, o(z, x), o(x, z), o(y, z), s(z, x), w.right(z, x, y, f));
            if (l1 != r1 || l2 != r2) nat.failure(objs(o, {z, x, y}) + " labels (" + lab(x, y, f) + ")");
          }
    for (auto* t : {&cen, &inv, &hex, &un, &nat}) t->into(r);
  }
  return r;
}

Report check_effectful(const EffectfulData& e) {
  const auto& o = e.pure.objects;
  const std::size_t n = o.size();
  Report r;
  if (!(e.effectful.objects == o)) {
    r.fail("OBJECTS", "pure and effectful sides have different object monoids");
    return r;
  }
  r.merge(check_monoidal(e.pure, "PURE-"));
  r.merge(check_premonoidal(e.effectful, "EFFECTFUL-"));
  const auto& v = e.pure.cat;
  const auto& c = e.effectful.cat;
  Whisk w{e.effectful, n};
  auto eta = [&](std::size_t x, std::size_t y, Label f) { return e.eta[x * n + y][f]; };
  auto vten = [&](std::size_t x, std::size_t y, std::size_t x2, std::size_t y2, Label f, Label g) {
    return e.pure.tensor[((x * n + y) * n + x2) * n + y2][f * v.count(n, x2, y2) + g];
  };
  auto lab = [&](std::size_t x, std::size_t y, Label f) { return v.hom[x * n + y][f]; };
  LawTally fun("ETA-FUNCTOR"), wh("ETA-WHISKER"), cen("ETA-CENTRAL");
  for (std::size_t x = 0; x < n; ++x) {
    fun.count();
    if (eta(x, x, v.id[x]) != c.id[x]) fun.failure(objs(o, {x}));
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        for (Label f = 0; f < v.count(n, x, y); ++f)
          for (Label g = 0; g < v.count(n, y, z); ++g) {
            fun.count();
            if (eta(x, z, v.compose(n, x, y, z, f, g)) != c.compose(n, x, y, z, eta(x, y, f), eta(y, z, g)))
              fun.failure(objs(o, {x, y, z}) + " labels " + tuple_of({lab(x, y, f), lab(y, z, g)}));
          }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (Label f = 0; f < v.count(n, x, y); ++f) {
          wh.count();
          bool okl = eta(o(a, x), o(a, y), vten(a, a, x, y, v.id[a], f)) == w.left(a, x, y, eta(x, y, f));
          bool okr = eta(o(x, a), o(y, a), vten(x, y, a, a, f, v.id[a])) == w.right(a, x, y, eta(x, y, f));
          if (!okl || !okr) wh.failure(objs(o, {a, x, y}) + " labels (" + lab(x, y, f) + ")");
        }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (Label f = 0; f < v.count(n, x, y); ++f) {
        cen.count();
        if (auto bad = central_failure(e.effectful, x, y, eta(x, y, f))) cen.failure(*bad);
      }
  for (auto* t : {&fun, &wh, &cen}) t->into(r);
  if (e.pure.braiding || e.effectful.braiding) {
    LawTally br("ETA-BRAID");
    if (!e.pure.braiding || !e.effectful.braiding) {
      br.failure("only one side is braided");
    } else {
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
          br.count();
          if (eta(o(x, y), o(y, x), (*e.pure.braiding)[x * n + y]) != (*e.effectful.braiding)[x * n + y])
            br.failure(objs(o, {x, y}));
        }
    }
    br.into(r);
  }
  return r;
}

MonoidalTables monoidal_view(const FiniteGradedModel& m, std::size_t e) {
  auto ee = m.alg.add(e, e);
  if (!ee || *ee != e) throw Error(Errc::NotIdempotent, "grade " + m.grade_name(e) + " is not idempotent");
  const std::size_t n = m.size();
  MonoidalTables t;
  t.objects = m.objects;
  t.cat.hom = m.hom[e];
  t.cat.comp = m.comp[e];
  for (std::size_t x = 0; x < n; ++x) t.cat.id.push_back(m.identity(e, x));
  t.tensor = m.tensor[e * m.grades() + e];
  if (m.braiding) {
    std::vector<Label> br(n * n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        br[m.pair(x, y)] = m.regraded(m.zero(), e, m.objects(x, y), m.objects(y, x), (*m.braiding)[m.pair(x, y)]);
    t.braiding = std::move(br);
  }
  return t;
}

PremonoidalTables premonoidal_view(const FiniteGradedModel& m, std::size_t a) {
  const std::size_t n = m.size(), z0 = m.zero();
  PremonoidalTables t;
  t.objects = m.objects;
  t.cat.hom = m.hom[a];
  t.cat.comp = m.comp[a];
  for (std::size_t x = 0; x < n; ++x) t.cat.id.push_back(m.identity(a, x));
  t.left.assign(n, std::vector<std::vector<Label>>(n * n));
  t.right.assign(n, std::vector<std::vector<Label>>(n * n));
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (Label f = 0; f < m.count(a, x, y); ++f) {
          t.left[w][m.pair(x, y)].push_back(m.tensored(z0, a, w, w, x, y, m.id[w], f));
          t.right[w][m.pair(x, y)].push_back(m.tensored(a, z0, x, y, w, w, f, m.id[w]));
        }
  if (m.braiding) {
    std::vector<Label> br(n * n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        br[m.pair(x, y)] = m.regraded(z0, a, m.objects(x, y), m.objects(y, x), (*m.braiding)[m.pair(x, y)]);
    t.braiding = std::move(br);
  }
  return t;
}

namespace {

std::string first_failure(const Report& r) {
  for (const auto& c : r.checks())
    if (!c.pass) return c.name + " " + c.detail;
  return "";
}

std::size_t nonzero_grade(const FiniteGradedModel& m) { return m.zero() == 0 ? 1 : 0; }

}  // namespace

EffectfulData to_effectful(const FiniteGradedModel& m) {
  if (m.pcm.kind() != PcmKind::two) throw Error(Errc::PcmMismatch, "expected a model graded by two");
  Report r = check_axioms(m);
  if (!r.ok()) throw Error(Errc::AxiomFailure, first_failure(r));
  const std::size_t one = nonzero_grade(m), z0 = m.zero(), n = m.size();
  EffectfulData e;
  e.pure = monoidal_view(m, z0);
  e.effectful = premonoidal_view(m, one);
  e.eta = m.regrade[z0 * m.grades() + one];
  (void)n;
  return e;
}

FiniteGradedModel from_effectful(const EffectfulData& e) {
  Report r = check_effectful(e);
  if (!r.ok()) throw Error(Errc::AxiomFailure, first_failure(r));
  const auto& o = e.pure.objects;
  const std::size_t n = o.size();
  FiniteGradedModel m = FiniteGradedModel::blank(Pcm::two(), o);
  const std::size_t z0 = m.zero(), one = nonzero_grade(m), g = m.grades();
  const auto& v = e.pure.cat;
  const auto& c = e.effectful.cat;
  Whisk w{e.effectful, n};
  m.hom[z0] = v.hom;
  m.hom[one] = c.hom;
  m.id = v.id;
  m.comp[z0] = v.comp;
  m.comp[one] = c.comp;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      for (Label f = 0; f < v.count(n, x, y); ++f) m.regrade[z0 * g + z0][m.pair(x, y)].push_back(f);
      for (Label f = 0; f < c.count(n, x, y); ++f) m.regrade[one * g + one][m.pair(x, y)].push_back(f);
    }
  m.regrade[z0 * g + one] = e.eta;
  m.tensor[z0 * g + z0] = e.pure.tensor;
  auto eta = [&](std::size_t x, std::size_t y, Label f) { return e.eta[x * n + y][f]; };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t x2 = 0; x2 < n; ++x2)
        for (std::size_t y2 = 0; y2 < n; ++y2) {
          auto& t01 = m.tensor[z0 * g + one][m.quad(x, y, x2, y2)];
          for (Label f = 0; f < v.count(n, x, y); ++f)
            for (Label q = 0; q < c.count(n, x2, y2); ++q)
              t01.push_back(c.compose(n, o(x, x2), o(y, x2), o(y, y2), w.right(x2, x, y, eta(x, y, f)), w.left(y, x2, y2, q)));
          auto& t10 = m.tensor[one * g + z0][m.quad(x, y, x2, y2)];
          for (Label q = 0; q < c.count(n, x, y); ++q)
            for (Label f = 0; f < v.count(n, x2, y2); ++f)
              t10.push_back(c.compose(n, o(x, x2), o(y, x2), o(y, y2), w.right(x2, x, y, q), w.left(y, x2, y2, eta(x2, y2, f))));
        }
  m.braiding = e.pure.braiding;
  validate(m);
  return m;
}

// ---------------------------------------------------------------- functors

PcmHomomorphism grade_map(const GradedFunctorData& f) {
  std::vector<Grade> image;
  for (auto e : f.grades) image.push_back(f.target->pcm.element(e));
  return PcmHomomorphism::from_table(f.source->pcm, f.target->pcm, std::move(image));
}

namespace {

void check_functor_shape(const GradedFunctorData& f) {
  const auto& s = *f.source;
  const auto& t = *f.target;
  if (f.objects.size() != s.size() || f.grades.size() != s.grades() || f.labels.size() != s.grades())
    ill("functor tables do not match the source model");
  for (auto x : f.objects)
    if (x >= t.size()) ill("functor object image out of range");
  for (auto e : f.grades)
    if (e >= t.grades()) ill("functor grade image out of range");
  for (std::size_t e = 0; e < s.grades(); ++e) {
    if (f.labels[e].size() != s.size() * s.size()) ill("functor label tables have the wrong shape");
    for (std::size_t x = 0; x < s.size(); ++x)
      for (std::size_t y = 0; y < s.size(); ++y) {
        const auto& ls = f.labels[e][s.pair(x, y)];
        if (ls.size() != s.count(e, x, y)) ill("functor label table is not total at grade " + s.grade_name(e));
        for (auto l : ls)
          if (l >= t.count(f.grades[e], f.objects[x], f.objects[y]))
            ill("functor label image out of range at grade " + s.grade_name(e));
      }
  }
}

}  // namespace

Report check_graded_functor(const GradedFunctorData& F) {
  check_functor_shape(F);
  const auto& S = *F.source;
  const auto& T = *F.target;
  const std::size_t g = S.grades(), n = S.size();
  const auto& O = S.objects;
  const auto& M = F.objects;
  const auto& phi = F.grades;
  Cex cx{S};
  auto map = [&](std::size_t e, std::size_t x, std::size_t y, Label f) { return F.labels[e][S.pair(x, y)][f]; };
  auto L = [&](std::size_t e, std::size_t x, std::size_t y, Label f) { return S.labels(e, x, y)[f]; };
  LawTally objs_t("FUNCTOR-OBJECTS"), pcm_t("FUNCTOR-PCM-HOM"), id_t("FUNCTOR-IDENTITY"), comp_t("FUNCTOR-COMPOSITION"),
      ten_t("FUNCTOR-TENSOR"), reg_t("FUNCTOR-REGRADE");
  objs_t.count();
  if (M[O.unit] != T.objects.unit) objs_t.failure("unit maps to " + T.objects.names[M[O.unit]]);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      objs_t.count();
      if (M[O(x, y)] != T.objects(M[x], M[y])) objs_t.failure(cx.objects({x, y}).substr(1));
    }
  Report hom = check_hom(grade_map(F));
  pcm_t.count();
  if (!hom.ok()) pcm_t.failure(first_failure(hom));
  for (std::size_t e = 0; e < g; ++e)
    for (std::size_t x = 0; x < n; ++x) {
      id_t.count();
      if (map(e, x, x, S.identity(e, x)) != T.identity(phi[e], M[x])) id_t.failure(cx.grades({e}) + cx.objects({x}));
    }
  for (std::size_t e = 0; e < g; ++e)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z)
          for (Label f = 0; f < S.count(e, x, y); ++f)
            for (Label h = 0; h < S.count(e, y, z); ++h) {
              comp_t.count();
              auto l = map(e, x, z, S.compose(e, x, y, z, f, h));
              auto r = T.compose(phi[e], M[x], M[y], M[z], map(e, x, y, f), map(e, y, z, h));
              if (l != r) comp_t.failure(cx.grades({e}) + cx.objects({x, y, z}) + cx.labels({L(e, x, y, f), L(e, y, z, h)}));
            }
  for (std::size_t a = 0; a < g; ++a)
    for (std::size_t b = 0; b < g; ++b) {
      auto s = S.alg.add(a, b);
      if (!s) continue;
      if (!T.alg.add(phi[a], phi[b])) {
        ten_t.failure(cx.grades({a, b}) + " images are not orthogonal");
        continue;
      }
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          for (std::size_t x2 = 0; x2 < n; ++x2)
            for (std::size_t y2 = 0; y2 < n; ++y2)
              for (Label f = 0; f < S.count(a, x, y); ++f)
                for (Label h = 0; h < S.count(b, x2, y2); ++h) {
                  ten_t.count();
                  auto l = map(*s, O(x, x2), O(y, y2), S.tensored(a, b, x, y, x2, y2, f, h));
                  auto r = T.tensored(phi[a], phi[b], M[x], M[y], M[x2], M[y2], map(a, x, y, f), map(b, x2, y2, h));
                  if (l != r)
                    ten_t.failure(cx.grades({a, b}) + cx.objects({x, y, x2, y2}) + cx.labels({L(a, x, y, f), L(b, x2, y2, h)}));
                }
    }
  for (std::size_t a = 0; a < g; ++a)
    for (std::size_t b = 0; b < g; ++b) {
      if (!S.alg.leq(a, b)) continue;
      if (!T.alg.leq(phi[a], phi[b])) {
        reg_t.failure(cx.grades({a, b}) + " images are not ordered");
        continue;
      }
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          for (Label f = 0; f < S.count(a, x, y); ++f) {
            reg_t.count();
            if (map(b, x, y, S.regraded(a, b, x, y, f)) != T.regraded(phi[a], phi[b], M[x], M[y], map(a, x, y, f)))
              reg_t.failure(cx.grades({a, b}) + cx.objects({x, y}) + cx.labels({L(a, x, y, f)}));
          }
    }
  Report r;
  for (auto* t : {&objs_t, &pcm_t, &id_t, &comp_t, &ten_t, &reg_t}) t->into(r);
  return r;
}

GradedFunctorData identity_functor(std::shared_ptr<const FiniteGradedModel> m) {
  GradedFunctorData f{m, m, {}, {}, {}};
  for (std::size_t x = 0; x < m->size(); ++x) f.objects.push_back(x);
  for (std::size_t e = 0; e < m->grades(); ++e) {
    f.grades.push_back(e);
    f.labels.emplace_back(m->size() * m->size());
    for (std::size_t p = 0; p < m->size() * m->size(); ++p)
      for (Label i = 0; i < m->hom[e][p].size(); ++i) f.labels[e][p].push_back(i);
  }
  return f;
}

FiniteGradedModel pullback(const FiniteGradedModel& m, const PcmHomomorphism& phi) {
  if (phi.target.descriptor() != m.pcm.descriptor())
    throw Error(Errc::InvalidHom, "the homomorphism does not land in " + m.pcm.descriptor());
  if (!phi.source.finite()) throw Error(Errc::InvalidHom, "the source PCM must be finite");
  Report h = check_hom(phi);
  if (!h.ok()) throw Error(Errc::InvalidHom, first_failure(h));
  FiniteGradedModel p = FiniteGradedModel::blank(phi.source, m.objects);
  const std::size_t g = p.grades(), G = m.grades();
  std::vector<std::size_t> at;
  for (const auto& e : phi.source.elements()) at.push_back(phi.target.index_of(phi(e)));
  for (std::size_t e = 0; e < g; ++e) {
    p.hom[e] = m.hom[at[e]];
    p.comp[e] = m.comp[at[e]];
  }
  p.id = m.id;
  for (std::size_t a = 0; a < g; ++a)
    for (std::size_t b = 0; b < g; ++b) {
      if (p.alg.leq(a, b)) p.regrade[a * g + b] = m.regrade[at[a] * G + at[b]];
      if (p.alg.add(a, b)) p.tensor[a * g + b] = m.tensor[at[a] * G + at[b]];
    }
  p.braiding = m.braiding;
  validate(p);
  return p;
}

Coreflection coreflect(std::shared_ptr<const FiniteGradedModel> m) {
  auto top = m->alg.top();
  if (!top) throw Error(Errc::NoTop, m->pcm.descriptor() + " has no top element");
  const std::size_t t = *top, z = m->zero(), G = m->grades();
  FiniteGradedModel r = FiniteGradedModel::blank(Pcm::two(), m->objects);
  const std::size_t z0 = r.zero(), one = nonzero_grade(r), g = r.grades();
  std::vector<std::size_t> layer(g);
  layer[z0] = z;
  layer[one] = t;
  for (std::size_t e = 0; e < g; ++e) {
    r.hom[e] = m->hom[layer[e]];
    r.comp[e] = m->comp[layer[e]];
  }
  r.id = m->id;
  for (std::size_t a = 0; a < g; ++a)
    for (std::size_t b = 0; b < g; ++b) {
      if (r.alg.leq(a, b)) r.regrade[a * g + b] = m->regrade[layer[a] * G + layer[b]];
      if (r.alg.add(a, b)) r.tensor[a * g + b] = m->tensor[layer[a] * G + layer[b]];
    }
  r.braiding = m->braiding;
  validate(r);
  auto rp = std::make_shared<const FiniteGradedModel>(std::move(r));
  GradedFunctorData counit = identity_functor(rp);
  counit.target = m;
  counit.grades = layer;
  return Coreflection{rp, std::move(counit)};
}

namespace {

// Backtracking search for every graded functor D -> R with a fixed object and
// grade map. Constraints fire once all their variables are assigned.
class FunctorSearch {
 public:
  FunctorSearch(const FiniteGradedModel& d, const FiniteGradedModel& r, const std::vector<std::size_t>& objects,
                std::size_t max_nodes)
      : d_(d), r_(r), M_(objects), max_nodes_(max_nodes) {
    const std::size_t g = d.grades(), n = d.size();
    base_.assign(g, std::vector<std::size_t>(n * n));
    for (std::size_t e = 0; e < g; ++e)
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
          base_[e][d.pair(x, y)] = domain_.size();
          for (Label i = 0; i < d.count(e, x, y); ++i) domain_.push_back(r.count(e, M_[x], M_[y]));
        }
    const std::size_t vars = domain_.size();
    fires_.assign(vars, {});
    val_.assign(vars, 0);
    auto add = [&](std::vector<std::size_t> vs, std::function<bool()> ok) {
      std::size_t last = *std::max_element(vs.begin(), vs.end());
      fires_[last].push_back(std::move(ok));
    };
    const auto& O = d.objects;
    for (std::size_t e = 0; e < g; ++e)
      for (std::size_t x = 0; x < n; ++x) {
        std::size_t v = var(e, x, x, d.identity(e, x));
        add({v}, [this, v, e, x] { return val_[v] == r_.identity(e, M_[x]); });
      }
    for (std::size_t e = 0; e < g; ++e)
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          for (std::size_t z = 0; z < n; ++z)
            for (Label f = 0; f < d.count(e, x, y); ++f)
              for (Label h = 0; h < d.count(e, y, z); ++h) {
                std::size_t vf = var(e, x, y, f), vh = var(e, y, z, h), vc = var(e, x, z, d.compose(e, x, y, z, f, h));
                add({vf, vh, vc}, [=, this] { return val_[vc] == r_.compose(e, M_[x], M_[y], M_[z], val_[vf], val_[vh]); });
              }
    for (std::size_t a = 0; a < g; ++a)
      for (std::size_t b = 0; b < g; ++b) {
        if (d.alg.leq(a, b))
          for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
              for (Label f = 0; f < d.count(a, x, y); ++f) {
                std::size_t vf = var(a, x, y, f), vr = var(b, x, y, d.regraded(a, b, x, y, f));
                add({vf, vr}, [=, this] { return val_[vr] == r_.regraded(a, b, M_[x], M_[y], val_[vf]); });
              }
        auto s = d.alg.add(a, b);
        if (!s) continue;
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t y = 0; y < n; ++y)
            for (std::size_t x2 = 0; x2 < n; ++x2)
              for (std::size_t y2 = 0; y2 < n; ++y2)
                for (Label f = 0; f < d.count(a, x, y); ++f)
                  for (Label h = 0; h < d.count(b, x2, y2); ++h) {
                    std::size_t vf = var(a, x, y, f), vh = var(b, x2, y2, h),
                                vt = var(*s, O(x, x2), O(y, y2), d.tensored(a, b, x, y, x2, y2, f, h));
                    add({vf, vh, vt}, [=, this] {
                      return val_[vt] == r_.tensored(a, b, M_[x], M_[y], M_[x2], M_[y2], val_[vf], val_[vh]);
                    });
                  }
      }
  }

  std::size_t var(std::size_t e, std::size_t x, std::size_t y, Label i) const { return base_[e][d_.pair(x, y)] + i; }

  // Calls visit(values) for every solution.
  void run(const std::function<void(const std::vector<Label>&)>& visit) { step(0, visit); }

 private:
  void step(std::size_t v, const std::function<void(const std::vector<Label>&)>& visit) {
    if (v == domain_.size()) {
      visit(val_);
      return;
    }
    for (Label c = 0; c < domain_[v]; ++c) {
      if (++nodes_ > max_nodes_) throw Error(Errc::EnumerationTooLarge, "functor search exceeded its node budget");
      val_[v] = c;
      bool ok = true;
      for (const auto& check : fires_[v])
        if (!check()) {
          ok = false;
          break;
        }
      if (ok) step(v + 1, visit);
    }
  }

  const FiniteGradedModel& d_;
  const FiniteGradedModel& r_;
  std::vector<std::size_t> M_;
  std::size_t max_nodes_;
  std::size_t nodes_ = 0;
  std::vector<std::vector<std::size_t>> base_;
  std::vector<std::size_t> domain_;
  std::vector<std::vector<std::function<bool()>>> fires_;
  std::vector<Label> val_;
};

}  // namespace

Report check_couniversal(std::shared_ptr<const FiniteGradedModel> c, const GradedFunctorData& m,
                         std::size_t max_labels, std::size_t max_nodes) {
  Report out;
  const auto& D = *m.source;
  if (D.pcm.kind() != PcmKind::two) throw Error(Errc::PcmMismatch, "the source of M must be graded by two");
  if (m.target != c && !same_tables(*m.target, *c)) throw Error(Errc::TypeMismatch, "M does not land in the given model");
  Report pre = check_graded_functor(m);
  auto top = c->alg.top();
  if (!top) throw Error(Errc::NoTop, c->pcm.descriptor() + " has no top element");
  const std::size_t dz = D.zero(), done = nonzero_grade(D);
  if (!pre.ok() || m.grades[dz] != c->zero() || m.grades[done] != *top) {
    out.fail("PRECONDITION", pre.ok() ? "M does not preserve the top grade" : first_failure(pre));
    return out;
  }
  Coreflection R = coreflect(c);
  const auto& RC = *R.model;
  const std::size_t rz = RC.zero(), rone = nonzero_grade(RC);

  GradedFunctorData hat{m.source, R.model, m.objects, std::vector<std::size_t>(2), m.labels};
  hat.grades[dz] = rz;
  hat.grades[done] = rone;
  Report hr = check_graded_functor(hat);
  if (hr.ok())
    out.pass("FACTOR-DEFINED");
  else
    out.fail("FACTOR-DEFINED", first_failure(hr));

  // ε ∘ i(M̂) computed componentwise: ε is the identity on labels.
  bool eq = true;
  for (std::size_t e = 0; e < D.grades(); ++e)
    if (R.counit.grades[hat.grades[e]] != m.grades[e]) eq = false;
  if (eq && hat.labels == m.labels)
    out.pass("FACTOR-EQUATION");
  else
    out.fail("FACTOR-EQUATION", "the composite differs from M");

  for (std::size_t e = 0; e < D.grades(); ++e)
    for (const auto& h : D.hom[e])
      if (h.size() > max_labels)
        throw Error(Errc::EnumerationTooLarge, "a source hom-set has more than " + std::to_string(max_labels) + " labels");
  for (std::size_t e = 0; e < RC.grades(); ++e)
    for (const auto& h : RC.hom[e])
      if (h.size() > max_labels)
        throw Error(Errc::EnumerationTooLarge, "a target hom-set has more than " + std::to_string(max_labels) + " labels");

  FunctorSearch search(D, RC, m.objects, max_nodes);
  std::size_t total = 0, factoring = 0;
  search.run([&](const std::vector<Label>& vals) {
    ++total;
    bool same = true;
    for (std::size_t e = 0; e < D.grades() && same; ++e)
      for (std::size_t x = 0; x < D.size() && same; ++x)
        for (std::size_t y = 0; y < D.size() && same; ++y)
          for (Label i = 0; i < D.count(e, x, y); ++i)
            if (vals[search.var(e, x, y, i)] != m.labels[e][D.pair(x, y)][i]) {
              same = false;
              break;
            }
    if (same) ++factoring;
  });
  if (factoring == 1)
    out.pass("FACTOR-UNIQUE");
  else
    out.fail("FACTOR-UNIQUE", std::to_string(factoring) + " factorizations");
  out.note("CANDIDATES", std::to_string(total) + " graded functors, " + std::to_string(factoring) + " factor M");
  return out;
}

}  // namespace gmc
