#include "gmc/convolution.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <boost/pending/disjoint_sets.hpp>
#include <json.hpp>

#include "gmc/model_io.hpp"

namespace gmc {

namespace {

[[noreturn]] void ill(const std::string& msg) { throw Error(Errc::IllFormed, msg); }

std::string tuple_of(const std::vector<std::string>& xs) {
  std::string out = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + xs[i];
  return out + ")";
}

bool below(const GradeAlgebra& g, std::size_t a, std::size_t b, std::size_t c) {
  auto s = g.add(a, b);
  return s && g.leq(*s, c);
}

}  // namespace

BoolPromonoidal promonoidal_from_pcm(const Pcm& p) {
  BoolPromonoidal b{p, GradeAlgebra(p), {}, {}};
  const std::size_t n = b.size();
  b.P.assign(n * n * n, 0);
  b.I.assign(n, 1);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t c = 0; c < n; ++c) b.P[(a * n + x) * n + c] = below(b.alg, a, x, c) ? 1 : 0;
  return b;
}

Report check_promonoidal_laws(const BoolPromonoidal& b) {
  const std::size_t n = b.size();
  const auto& g = b.alg;
  auto nm = [&](std::initializer_list<std::size_t> es) {
    std::vector<std::string> s;
    for (auto e : es) s.push_back(b.pcm.show(b.pcm.element(e)));
    return tuple_of(s);
  };
  LawTally assoc("PROMONOIDAL-ASSOC"), ul("PROMONOIDAL-UNIT-LEFT"), ur("PROMONOIDAL-UNIT-RIGHT"),
      pf("P-FUNCTORIAL"), jf("I-FUNCTORIAL");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) {
          assoc.count();
          bool l = false, r = false;
          for (std::size_t u = 0; u < n && !l; ++u) l = b.p(a, x, u) && b.p(u, c, d);
          for (std::size_t v = 0; v < n && !r; ++v) r = b.p(x, c, v) && b.p(a, v, d);
          if (l != r) assoc.failure(nm({a, x, c, d}));
        }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = 0; c < n; ++c) {
      bool l = false, r = false;
      for (std::size_t e = 0; e < n; ++e) {
        l = l || (b.i(e) && b.p(e, a, c));
        r = r || (b.i(e) && b.p(a, e, c));
      }
      ul.count();
      ur.count();
      if (l != g.leq(a, c)) ul.failure(nm({a, c}));
      if (r != g.leq(a, c)) ur.failure(nm({a, c}));
    }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t c = 0; c < n; ++c) {
        if (!b.p(a, x, c)) continue;
        for (std::size_t e = 0; e < n; ++e) {
          pf.count();
          if (g.leq(e, a) && !b.p(e, x, c)) pf.failure(nm({a, x, c}) + " lower " + nm({e}));
          if (g.leq(e, x) && !b.p(a, e, c)) pf.failure(nm({a, x, c}) + " lower " + nm({e}));
          if (g.leq(c, e) && !b.p(a, x, e)) pf.failure(nm({a, x, c}) + " raise " + nm({e}));
        }
      }
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t e = 0; e < n; ++e) {
      jf.count();
      if (b.i(c) && g.leq(c, e) && !b.i(e)) jf.failure(nm({c, e}));
    }
  Report r;
  for (auto* t : {&assoc, &ul, &ur, &pf, &jf}) t->into(r);
  return r;
}

// ---------------------------------------------------------------- copresheaves

std::vector<std::pair<std::size_t, std::size_t>> covering_pairs(const GradeAlgebra& alg) {
  const std::size_t n = alg.size();
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !alg.leq(a, b)) continue;
      bool cover = true;
      for (std::size_t m = 0; m < n && cover; ++m)
        if (m != a && m != b && alg.leq(a, m) && alg.leq(m, b)) cover = false;
      if (cover) out.emplace_back(a, b);
    }
  return out;
}

Copresheaf make_copresheaf(const Pcm& p, std::vector<std::vector<std::string>> sets,
                           const std::vector<GeneratingMap>& maps) {
  Copresheaf f{p, GradeAlgebra(p), std::move(sets), {}};
  const std::size_t n = f.grades();
  auto gname = [&](std::size_t e) { return p.show(p.element(e)); };
  if (f.sets.size() != n) ill("expected one set per grade");
  for (std::size_t e = 0; e < n; ++e) {
    std::set<std::string> seen;
    for (const auto& s : f.sets[e])
      if (!seen.insert(s).second) ill("element '" + s + "' repeats in the set at " + gname(e));
  }
  std::vector<std::optional<std::vector<std::size_t>>> known(n * n);
  auto settle = [&](std::size_t a, std::size_t b, std::vector<std::size_t> m) {
    auto& k = known[a * n + b];
    if (!k) {
      k = std::move(m);
      return true;
    }
    if (*k != m) ill("maps disagree on " + gname(a) + " <= " + gname(b));
    return false;
  };
  for (std::size_t e = 0; e < n; ++e) {
    std::vector<std::size_t> id(f.sets[e].size());
    for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
    settle(e, e, id);
  }
  for (const auto& gm : maps) {
    if (gm.from >= n || gm.to >= n || !f.alg.leq(gm.from, gm.to)) ill("a map is given on a pair that is not ordered");
    if (gm.map.size() != f.sets[gm.from].size())
      ill("the map " + gname(gm.from) + " <= " + gname(gm.to) + " is not total");
    for (auto v : gm.map)
      if (v >= f.sets[gm.to].size()) ill("the map " + gname(gm.from) + " <= " + gname(gm.to) + " leaves its codomain");
    settle(gm.from, gm.to, gm.map);
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t a = 0; a < n; ++a)
      for (const auto& gm : maps)
        if (known[a * n + gm.from]) {
          const auto& k = *known[a * n + gm.from];
          std::vector<std::size_t> c(k.size());
          for (std::size_t i = 0; i < k.size(); ++i) c[i] = gm.map[k[i]];
          changed = settle(a, gm.to, std::move(c)) || changed;
        }
  }
  f.maps.assign(n * n, {});
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (!f.alg.leq(a, b)) continue;
      if (!known[a * n + b]) ill("no chain of maps reaches " + gname(a) + " <= " + gname(b));
      f.maps[a * n + b] = *known[a * n + b];
    }
  return f;
}

Copresheaf unit_copresheaf(const Pcm& p) {
  const std::size_t n = p.size();
  std::vector<GeneratingMap> maps;
  GradeAlgebra alg(p);
  for (auto [a, b] : covering_pairs(alg)) maps.push_back({a, b, {0}});
  return make_copresheaf(p, std::vector<std::vector<std::string>>(n, {"*"}), maps);
}

std::vector<Copresheaf> all_copresheaves(const Pcm& p, std::size_t max_size) {
  GradeAlgebra alg(p);
  const std::size_t n = alg.size();
  const auto covers = covering_pairs(alg);
  std::vector<Copresheaf> out;
  std::vector<std::size_t> sizes(n, 0);
  std::vector<std::vector<std::string>> sets(n);
  std::vector<GeneratingMap> maps(covers.size());
  auto next_map = [&](GeneratingMap& m) {
    const std::size_t k = sets[m.to].size();
    for (auto& v : m.map) {
      if (++v < k) return true;
      v = 0;
    }
    return false;
  };
  while (true) {
    bool inhabited = true;
    for (std::size_t e = 0; e < n; ++e) {
      sets[e].clear();
      for (std::size_t i = 0; i < sizes[e]; ++i) sets[e].push_back(std::to_string(i));
    }
    for (std::size_t i = 0; i < covers.size(); ++i) {
      maps[i] = {covers[i].first, covers[i].second, std::vector<std::size_t>(sizes[covers[i].first], 0)};
      if (sizes[covers[i].first] && !sizes[covers[i].second]) inhabited = false;
    }
    while (inhabited) {
      try {
        out.push_back(make_copresheaf(p, sets, maps));
      } catch (const Error& e) {
        if (e.code() != Errc::IllFormed) throw;
      }
      std::size_t i = 0;
      while (i < maps.size() && !next_map(maps[i])) ++i;
      if (i == maps.size()) break;
    }
    std::size_t e = 0;
    while (e < n && ++sizes[e] > max_size) sizes[e++] = 0;
    if (e == n) break;
  }
  return out;
}

Copresheaf load_copresheaf(std::string_view text) {
  using nlohmann::json;
  auto bad = [](const std::string& m) { return Error(Errc::ParseError, m); };
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw bad(e.what());
  }
  try {
    if (doc.at("format") != "gmccopresheaf/1") throw bad("unsupported format, expected gmccopresheaf/1");
    Pcm p = Pcm::parse(doc.at("pcm").get<std::string>());
    if (!p.finite()) throw Error(Errc::InfiniteCarrier, p.descriptor() + " is not finite");
    auto grade = [&](const std::string& s) {
      try {
        return p.index_of(p.parse_grade(s));
      } catch (const Error&) {
        ill("'" + s + "' is not a grade of " + p.descriptor());
      }
    };
    std::vector<std::vector<std::string>> sets(p.size());
    for (auto it = doc.at("sets").begin(); it != doc.at("sets").end(); ++it)
      sets[grade(it.key())] = it.value().get<std::vector<std::string>>();
    std::vector<GeneratingMap> maps;
    if (doc.contains("maps"))
      for (const auto& m : doc.at("maps")) {
        GeneratingMap gm{grade(m.at("from").get<std::string>()), grade(m.at("to").get<std::string>()), {}};
        const auto& src = sets[gm.from];
        const auto& dst = sets[gm.to];
        gm.map.assign(src.size(), dst.size());
        for (auto kv = m.at("map").begin(); kv != m.at("map").end(); ++kv) {
          auto s = std::find(src.begin(), src.end(), kv.key());
          auto d = std::find(dst.begin(), dst.end(), kv.value().get<std::string>());
          if (s == src.end() || d == dst.end())
            ill("map entry " + kv.key() + " -> " + kv.value().get<std::string>() + " names an unknown element");
          gm.map[s - src.begin()] = d - dst.begin();
        }
        for (std::size_t i = 0; i < gm.map.size(); ++i)
          if (gm.map[i] == dst.size()) ill("map " + m.at("from").get<std::string>() + " <= " + m.at("to").get<std::string>() + " misses '" + src[i] + "'");
        maps.push_back(std::move(gm));
      }
    return make_copresheaf(p, std::move(sets), maps);
  } catch (const json::exception& e) {
    throw bad(e.what());
  } catch (const Error& e) {
    if (e.code() == Errc::MalformedSpec) throw bad(e.what());
    throw;
  }
}

namespace {

nlohmann::ordered_json copresheaf_json(const Copresheaf& f) {
  using oj = nlohmann::ordered_json;
  const Pcm& p = f.pcm;
  oj doc;
  doc["format"] = "gmccopresheaf/1";
  doc["pcm"] = p.descriptor();
  oj sets = oj::object();
  for (std::size_t e = 0; e < f.grades(); ++e) sets[p.show(p.element(e))] = f.sets[e];
  doc["sets"] = sets;
  oj maps = oj::array();
  for (auto [a, b] : covering_pairs(f.alg)) {
    oj m = oj::object();
    for (std::size_t i = 0; i < f.sets[a].size(); ++i) m[f.sets[a][i]] = f.sets[b][f.apply(a, b, i)];
    maps.push_back({{"from", p.show(p.element(a))}, {"to", p.show(p.element(b))}, {"map", m}});
  }
  doc["maps"] = maps;
  return doc;
}

}  // namespace

std::string save_copresheaf(const Copresheaf& f) { return layout(copresheaf_json(f)); }

// ---------------------------------------------------------------- convolution

std::size_t Convolution::class_of(std::size_t c, const Tagged& t) const {
  auto it = index.at(c).find(t);
  if (it == index[c].end()) ill("the tagged pair is not part of the convolution at this grade");
  return it->second;
}

std::string Convolution::name_of(const Tagged& t) const {
  const Pcm& p = result.pcm;
  return "(" + p.show(p.element(t.a)) + "," + p.show(p.element(t.b)) + "|" + left[t.a][t.x] + "," + right[t.b][t.y] + ")";
}

Convolution convolve_classes(const Copresheaf& f, const Copresheaf& g) {
  if (f.pcm.descriptor() != g.pcm.descriptor())
    throw Error(Errc::PcmMismatch, f.pcm.descriptor() + " differs from " + g.pcm.descriptor());
  const std::size_t n = f.grades();
  const auto& alg = f.alg;
  const Pcm& p = f.pcm;
  Convolution out{Copresheaf{p, alg, std::vector<std::vector<std::string>>(n), std::vector<std::vector<std::size_t>>(n * n)},
                  std::vector<std::vector<std::vector<Tagged>>>(n), std::vector<std::map<Tagged, std::size_t>>(n), f.sets, g.sets};
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<Tagged> tuples;
    std::map<Tagged, std::size_t> id;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (!below(alg, a, b, c)) continue;
        for (std::size_t x = 0; x < f.sets[a].size(); ++x)
          for (std::size_t y = 0; y < g.sets[b].size(); ++y) {
            id.emplace(Tagged{a, b, x, y}, tuples.size());
            tuples.push_back({a, b, x, y});
          }
      }
    std::vector<std::size_t> rank(tuples.size()), parent(tuples.size());
    boost::disjoint_sets<std::size_t*, std::size_t*> ds(rank.data(), parent.data());
    for (std::size_t i = 0; i < tuples.size(); ++i) ds.make_set(i);
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      const auto& t = tuples[i];
      for (std::size_t a2 = 0; a2 < n; ++a2)
        if (a2 != t.a && alg.leq(t.a, a2) && below(alg, a2, t.b, c))
          ds.union_set(i, id.at({a2, t.b, f.apply(t.a, a2, t.x), t.y}));
      for (std::size_t b2 = 0; b2 < n; ++b2)
        if (b2 != t.b && alg.leq(t.b, b2) && below(alg, t.a, b2, c))
          ds.union_set(i, id.at({t.a, b2, t.x, g.apply(t.b, b2, t.y)}));
    }
    // Tuples are enumerated in increasing order, so the first member seen of
    // each class is its least element.
    std::map<std::size_t, std::size_t> class_by_root;
    auto& classes = out.classes[c];
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      auto [it, fresh] = class_by_root.emplace(ds.find_set(i), classes.size());
      if (fresh) classes.emplace_back();
      classes[it->second].push_back(tuples[i]);
      out.index[c][tuples[i]] = it->second;
    }
    for (const auto& k : classes) out.result.sets[c].push_back(out.name_of(k.front()));
  }
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t c2 = 0; c2 < n; ++c2) {
      if (!alg.leq(c, c2)) continue;
      for (const auto& k : out.classes[c]) out.result.maps[c * n + c2].push_back(out.class_of(c2, k.front()));
    }
  return out;
}

Copresheaf convolve(const Copresheaf& f, const Copresheaf& g) { return convolve_classes(f, g).result; }

std::string save_convolution(const Convolution& c) {
  using oj = nlohmann::ordered_json;
  oj doc = copresheaf_json(c.result);
  const auto& r = c.result;
  oj classes = oj::array();
  for (std::size_t e = 0; e < r.grades(); ++e)
    for (std::size_t k = 0; k < c.classes[e].size(); ++k) {
      oj members = oj::array();
      for (const auto& t : c.classes[e][k]) members.push_back(c.name_of(t));
      classes.push_back({{"grade", r.pcm.show(r.pcm.element(e))}, {"members", members}});
    }
  doc["classes"] = classes;
  return layout(doc);
}

namespace {

// Checks a family of maps phi[c] : S(c) -> T(c) for bijectivity and
// naturality; `where` has already recorded any well-definedness failure.
void check_iso(const Copresheaf& s, const Copresheaf& t, const std::vector<std::vector<std::size_t>>& phi,
               LawTally& tally) {
  const std::size_t n = s.grades();
  const Pcm& p = s.pcm;
  for (std::size_t c = 0; c < n; ++c) {
    tally.count();
    std::vector<char> hit(t.sets[c].size(), 0);
    bool ok = phi[c].size() == t.sets[c].size();
    for (auto v : phi[c]) {
      if (hit[v]) ok = false;
      hit[v] = 1;
    }
    if (!ok) tally.failure("not bijective at grade " + p.show(p.element(c)));
  }
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t c2 = 0; c2 < n; ++c2) {
      if (!s.alg.leq(c, c2)) continue;
      for (std::size_t k = 0; k < phi[c].size(); ++k) {
        tally.count();
        if (phi[c2][s.apply(c, c2, k)] != t.apply(c, c2, phi[c][k]))
          tally.failure("not natural at " + p.show(p.element(c)) + " <= " + p.show(p.element(c2)) + " on " + s.sets[c][k]);
      }
    }
}

}  // namespace

Report check_convolution_coherence(const Copresheaf& f, const Copresheaf& g, const Copresheaf& h) {
  const Pcm& p = f.pcm;
  const std::size_t n = f.grades();
  const auto& alg = f.alg;
  Copresheaf j = unit_copresheaf(p);
  LawTally left("LEFT-UNIT"), right("RIGHT-UNIT"), assoc("ASSOCIATOR");

  auto unit_map = [&](const Convolution& cv, bool on_left, LawTally& tally) {
    std::vector<std::vector<std::size_t>> phi(n);
    for (std::size_t c = 0; c < n; ++c)
      for (const auto& k : cv.classes[c]) {
        auto image = [&](const Tagged& t) { return on_left ? f.apply(t.b, c, t.y) : f.apply(t.a, c, t.x); };
        const std::size_t v = image(k.front());
        for (const auto& t : k)
          if (image(t) != v) tally.failure("not well defined at grade " + p.show(p.element(c)));
        phi[c].push_back(v);
      }
    check_iso(cv.result, f, phi, tally);
  };
  unit_map(convolve_classes(j, f), true, left);
  unit_map(convolve_classes(f, j), false, right);

  Convolution fg = convolve_classes(f, g), gh = convolve_classes(g, h);
  Convolution l = convolve_classes(fg.result, h), r = convolve_classes(f, gh.result);
  std::vector<std::vector<std::size_t>> phi(n);
  for (std::size_t d = 0; d < n; ++d)
    for (const auto& cls : l.classes[d]) {
      std::optional<std::size_t> v;
      for (const auto& outer : cls)
        for (const auto& inner : fg.classes[outer.a][outer.x]) {
          const std::size_t bc = *alg.add(inner.b, outer.b);
          const std::size_t k = gh.class_of(bc, {inner.b, outer.b, inner.y, outer.y});
          const std::size_t w = r.class_of(d, {inner.a, bc, inner.x, k});
          if (v && *v != w) assoc.failure("not well defined at grade " + p.show(p.element(d)));
          v = w;
        }
      phi[d].push_back(*v);
    }
  check_iso(l.result, r.result, phi, assoc);

  Report out;
  for (auto* t : {&left, &right, &assoc}) t->into(out);
  return out;
}

// ---------------------------------------------------------------- lax presentations

LaxPresentation lax_tables(const FiniteGradedModel& m) {
  const std::size_t G = m.grades(), n = m.size(), z = m.zero(), unit = m.objects.unit;
  LaxPresentation p{m.pcm, m.alg, m.objects, m.hom, m.regrade, m.comp, {}, {}, {}, m.braiding};
  p.ids.assign(G, std::vector<Label>(n));
  for (std::size_t e = 0; e < G; ++e)
    for (std::size_t x = 0; x < n; ++x) p.ids[e][x] = m.identity(e, x);
  p.laxator.assign(G * G * G, {});
  for (std::size_t a = 0; a < G; ++a)
    for (std::size_t b = 0; b < G; ++b) {
      auto s = m.alg.add(a, b);
      if (!s) continue;
      for (std::size_t c = 0; c < G; ++c) {
        if (!m.alg.leq(*s, c)) continue;
        auto& t = p.laxator[(a * G + b) * G + c];
        t = m.tensor[a * G + b];
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t y = 0; y < n; ++y)
            for (std::size_t x2 = 0; x2 < n; ++x2)
              for (std::size_t y2 = 0; y2 < n; ++y2)
                for (auto& l : t[m.quad(x, y, x2, y2)]) l = m.regraded(*s, c, m.objects(x, x2), m.objects(y, y2), l);
      }
    }
  for (std::size_t c = 0; c < G; ++c) p.eta.push_back(m.regraded(z, c, unit, unit, m.id[unit]));
  return p;
}

FiniteGradedModel graded_tables(const LaxPresentation& p) {
  FiniteGradedModel m = FiniteGradedModel::blank(p.pcm, p.objects);
  const std::size_t G = p.grades();
  m.hom = p.hom;
  m.comp = p.comp;
  m.regrade = p.regrade;
  m.id = p.ids[m.zero()];
  for (std::size_t a = 0; a < G; ++a)
    for (std::size_t b = 0; b < G; ++b)
      if (auto s = p.alg.add(a, b)) m.tensor[a * G + b] = p.laxator[(a * G + b) * G + *s];
  m.braiding = p.braiding;
  validate(m);
  return m;
}

namespace {

std::string first_failure(const Report& r) {
  for (const auto& c : r.checks())
    if (!c.pass) return c.name + " " + c.detail;
  return "";
}

}  // namespace

LaxPresentation graded_to_lax(const FiniteGradedModel& m) {
  Report r = check_axioms(m);
  if (!r.ok()) throw Error(Errc::AxiomFailure, first_failure(r));
  return lax_tables(m);
}

FiniteGradedModel lax_to_graded(const LaxPresentation& p) {
  Report r = check_lax_presentation(p);
  if (!r.ok()) throw Error(Errc::AxiomFailure, first_failure(r));
  return graded_tables(p);
}

Report check_lax_presentation(const LaxPresentation& p) {
  const std::size_t G = p.grades(), n = p.size(), unit = p.objects.unit;
  const auto& O = p.objects;
  const auto& alg = p.alg;
  auto P = [&](std::size_t a, std::size_t b, std::size_t c) { return below(alg, a, b, c); };
  auto pair = [&](std::size_t x, std::size_t y) { return x * n + y; };
  auto quad = [&](std::size_t x, std::size_t y, std::size_t x2, std::size_t y2) { return ((x * n + y) * n + x2) * n + y2; };
  auto reg = [&](std::size_t a, std::size_t b, std::size_t x, std::size_t y, Label f) { return p.regrade[a * G + b][pair(x, y)][f]; };
  auto cmp = [&](std::size_t e, std::size_t x, std::size_t y, std::size_t z, Label f, Label g) {
    return p.comp[e][pair(x, y) * n + z][f * p.count(e, y, z) + g];
  };
  auto lax = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t x, std::size_t y, std::size_t x2, std::size_t y2,
                 Label f, Label g) { return p.laxator[(a * G + b) * G + c][quad(x, y, x2, y2)][f * p.count(b, x2, y2) + g]; };
  auto gn = [&](std::initializer_list<std::size_t> es) {
    std::vector<std::string> s;
    for (auto e : es) s.push_back(p.pcm.show(p.pcm.element(e)));
    return "grades " + tuple_of(s);
  };
  auto on = [&](std::initializer_list<std::size_t> xs) {
    std::vector<std::string> s;
    for (auto x : xs) s.push_back(O.names[x]);
    return " objects " + tuple_of(s);
  };
  auto lb = [&](std::vector<std::string> ls) { return " labels " + tuple_of(ls); };
  auto L = [&](std::size_t e, std::size_t x, std::size_t y, Label f) { return p.hom[e][pair(x, y)][f]; };

  LawTally regf("LAX-REGRADE-FUNCTOR"), equiv("LAX-EQUIVALENCE"), unat("LAX-UNIT-NATURAL"), lnat("LAX-NATURAL"),
      lassoc("LAX-ASSOC"), lunit("LAX-UNIT"), cnat("LAX-COMP-NATURAL"), cmon("LAX-COMP-MONOIDAL"),
      inat("LAX-ID-NATURAL"), imon("LAX-ID-MONOIDAL"), etaid("LAX-ETA-ID"), cassoc("LAX-COMP-ASSOC"),
      cunit("LAX-COMP-UNIT");

  // Regrading is a functor from the preorder.
  for (std::size_t a = 0; a < G; ++a)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (Label f = 0; f < p.count(a, x, y); ++f) {
          regf.count();
          if (reg(a, a, x, y, f) != f) regf.failure(gn({a, a}) + on({x, y}) + lb({L(a, x, y, f)}));
          for (std::size_t b = 0; b < G; ++b) {
            if (!alg.leq(a, b)) continue;
            for (std::size_t c = 0; c < G; ++c) {
              if (!alg.leq(b, c)) continue;
              regf.count();
              if (reg(b, c, x, y, reg(a, b, x, y, f)) != reg(a, c, x, y, f))
                regf.failure(gn({a, b, c}) + on({x, y}) + lb({L(a, x, y, f)}));
            }
          }
        }

  // Laxators: equivalence compatibility and naturality in the target grade.
  for (std::size_t a = 0; a < G; ++a)
    for (std::size_t b = 0; b < G; ++b)
      for (std::size_t c = 0; c < G; ++c) {
        if (!P(a, b, c)) continue;
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t y = 0; y < n; ++y)
            for (std::size_t x2 = 0; x2 < n; ++x2)
              for (std::size_t y2 = 0; y2 < n; ++y2)
                for (Label f = 0; f < p.count(a, x, y); ++f)
                  for (Label g = 0; g < p.count(b, x2, y2); ++g) {
                    const Label base = lax(a, b, c, x, y, x2, y2, f, g);
                    auto cex = [&](std::initializer_list<std::size_t> es) {
                      return gn(es) + on({x, y, x2, y2}) + lb({L(a, x, y, f), L(b, x2, y2, g)});
                    };
                    for (std::size_t a2 = 0; a2 < G; ++a2) {
                      if (!alg.leq(a, a2)) continue;
                      for (std::size_t b2 = 0; b2 < G; ++b2) {
                        if (!alg.leq(b, b2) || !P(a2, b2, c)) continue;
                        equiv.count();
                        if (lax(a2, b2, c, x, y, x2, y2, reg(a, a2, x, y, f), reg(b, b2, x2, y2, g)) != base)
                          equiv.failure(cex({a, b, a2, b2, c}));
                      }
                    }
                    for (std::size_t d = 0; d < G; ++d) {
                      if (!alg.leq(c, d)) continue;
                      lnat.count();
                      if (reg(c, d, O(x, x2), O(y, y2), base) != lax(a, b, d, x, y, x2, y2, f, g))
                        lnat.failure(cex({a, b, c, d}));
                    }
                  }
      }

  for (std::size_t c = 0; c < G; ++c)
    for (std::size_t c2 = 0; c2 < G; ++c2) {
      if (!alg.leq(c, c2)) continue;
      unat.count();
      if (reg(c, c2, unit, unit, p.eta[c]) != p.eta[c2]) unat.failure(gn({c, c2}));
    }

  // Associativity through every pair of intermediate grades u and v.
  for (std::size_t a = 0; a < G; ++a)
    for (std::size_t b = 0; b < G; ++b)
      for (std::size_t c = 0; c < G; ++c)
        for (std::size_t d = 0; d < G; ++d)
          for (std::size_t u = 0; u < G; ++u) {
            if (!P(a, b, u) || !P(u, c, d)) continue;
            for (std::size_t v = 0; v < G; ++v) {
              if (!P(b, c, v) || !P(a, v, d)) continue;
              for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y) {
                  if (!p.count(a, x, y)) continue;
                  for (std::size_t x2 = 0; x2 < n; ++x2)
                    for (std::size_t y2 = 0; y2 < n; ++y2) {
                      if (!p.count(b, x2, y2)) continue;
                      for (std::size_t x3 = 0; x3 < n; ++x3)
                        for (std::size_t y3 = 0; y3 < n; ++y3)
                          for (Label f = 0; f < p.count(a, x, y); ++f)
                            for (Label g = 0; g < p.count(b, x2, y2); ++g)
                              for (Label h = 0; h < p.count(c, x3, y3); ++h) {
                                lassoc.count();
                                auto l = lax(u, c, d, O(x, x2), O(y, y2), x3, y3, lax(a, b, u, x, y, x2, y2, f, g), h);
                                auto r = lax(a, v, d, x, y, O(x2, x3), O(y2, y3), f, lax(b, c, v, x2, y2, x3, y3, g, h));
                                if (l != r)
                                  lassoc.failure(gn({a, b, c, d, u, v}) + on({x, y, x2, y2, x3, y3}) +
                                                 lb({L(a, x, y, f), L(b, x2, y2, g), L(c, x3, y3, h)}));
                              }
                    }
                }
            }
          }

  for (std::size_t a = 0; a < G; ++a)
    for (std::size_t b = 0; b < G; ++b)
      for (std::size_t c = 0; c < G; ++c) {
        if (!P(a, b, c)) continue;
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t y = 0; y < n; ++y) {
            for (Label f = 0; f < p.count(a, x, y); ++f) {
              lunit.count();
              if (lax(a, b, c, x, y, unit, unit, f, p.eta[b]) != reg(a, c, x, y, f))
                lunit.failure(gn({a, b, c}) + on({x, y}) + lb({L(a, x, y, f)}));
            }
            for (Label f = 0; f < p.count(b, x, y); ++f) {
              lunit.count();
              if (lax(a, b, c, unit, unit, x, y, p.eta[a], f) != reg(b, c, x, y, f))
                lunit.failure(gn({a, b, c}) + on({x, y}) + lb({L(b, x, y, f)}));
            }
          }
      }

  for (std::size_t a = 0; a < G; ++a)
    for (std::size_t b = 0; b < G; ++b) {
      if (!alg.leq(a, b)) continue;
      for (std::size_t x = 0; x < n; ++x) {
        inat.count();
        if (reg(a, b, x, x, p.ids[a][x]) != p.ids[b][x]) inat.failure(gn({a, b}) + on({x}));
        for (std::size_t y = 0; y < n; ++y)
          for (std::size_t z = 0; z < n; ++z)
            for (Label f = 0; f < p.count(a, x, y); ++f)
              for (Label g = 0; g < p.count(a, y, z); ++g) {
                cnat.count();
                if (reg(a, b, x, z, cmp(a, x, y, z, f, g)) != cmp(b, x, y, z, reg(a, b, x, y, f), reg(a, b, y, z, g)))
                  cnat.failure(gn({a, b}) + on({x, y, z}) + lb({L(a, x, y, f), L(a, y, z, g)}));
              }
      }
    }

  for (std::size_t a = 0; a < G; ++a)
    for (std::size_t b = 0; b < G; ++b)
      for (std::size_t c = 0; c < G; ++c) {
        if (!P(a, b, c)) continue;
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t x2 = 0; x2 < n; ++x2) {
            imon.count();
            if (lax(a, b, c, x, x, x2, x2, p.ids[a][x], p.ids[b][x2]) != p.ids[c][O(x, x2)])
              imon.failure(gn({a, b, c}) + on({x, x2}));
          }
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
              for (std::size_t x2 = 0; x2 < n; ++x2)
                for (std::size_t y2 = 0; y2 < n; ++y2)
                  for (std::size_t z2 = 0; z2 < n; ++z2) {
                    const std::size_t nf = p.count(a, x, y), nh = p.count(a, y, z), ng = p.count(b, x2, y2),
                                      nk = p.count(b, y2, z2);
                    if (!nf || !nh || !ng || !nk) continue;
                    for (Label f = 0; f < nf; ++f)
                      for (Label h = 0; h < nh; ++h)
                        for (Label g = 0; g < ng; ++g)
                          for (Label k = 0; k < nk; ++k) {
                            cmon.count();
                            auto l = lax(a, b, c, x, z, x2, z2, cmp(a, x, y, z, f, h), cmp(b, x2, y2, z2, g, k));
                            auto r = cmp(c, O(x, x2), O(y, y2), O(z, z2), lax(a, b, c, x, y, x2, y2, f, g),
                                         lax(a, b, c, y, z, y2, z2, h, k));
                            if (l != r)
                              cmon.failure(gn({a, b, c}) + on({x, y, z, x2, y2, z2}) +
                                           lb({L(a, x, y, f), L(a, y, z, h), L(b, x2, y2, g), L(b, y2, z2, k)}));
                          }
                  }
      }

  for (std::size_t c = 0; c < G; ++c) {
    etaid.count();
    if (p.eta[c] != p.ids[c][unit]) etaid.failure(gn({c}));
  }

  for (std::size_t a = 0; a < G; ++a) {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (Label f = 0; f < p.count(a, x, y); ++f) {
          cunit.count();
          if (cmp(a, x, x, y, p.ids[a][x], f) != f || cmp(a, x, y, y, f, p.ids[a][y]) != f)
            cunit.failure(gn({a}) + on({x, y}) + lb({L(a, x, y, f)}));
        }
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z)
          for (std::size_t w = 0; w < n; ++w)
            for (Label f = 0; f < p.count(a, x, y); ++f)
              for (Label g = 0; g < p.count(a, y, z); ++g)
                for (Label h = 0; h < p.count(a, z, w); ++h) {
                  cassoc.count();
                  if (cmp(a, x, z, w, cmp(a, x, y, z, f, g), h) != cmp(a, x, y, w, f, cmp(a, y, z, w, g, h)))
                    cassoc.failure(gn({a}) + on({x, y, z, w}) + lb({L(a, x, y, f), L(a, y, z, g), L(a, z, w, h)}));
                }
  }

  Report r;
  for (auto* t : {&regf, &equiv, &unat, &lnat, &lassoc, &lunit, &cnat, &cmon, &inat, &imon, &etaid, &cassoc, &cunit})
    t->into(r);
  return r;
}

}  // namespace gmc
