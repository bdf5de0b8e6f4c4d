#include "gmc/fixtures.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace gmc::fixtures {

FiniteGradedModel terminal(const Pcm& p) {
  ModelSpec s{p, ObjectMonoid::trivial(), {}, {}, {}, {}, {}, {}};
  s.hom = [](std::size_t, std::size_t, std::size_t) { return std::vector<std::string>{"*"}; };
  s.id = [](std::size_t) { return std::string("*"); };
  s.comp = [](auto&&...) { return std::string("*"); };
  s.regrade = [](auto&&...) { return std::string("*"); };
  s.tensor = [](auto&&...) { return std::string("*"); };
  s.braiding = [](std::size_t, std::size_t) { return std::string("*"); };
  return tabulate(s);
}

namespace {

struct FiniteMonoid {
  std::vector<std::string> names;
  std::size_t unit;
  std::vector<std::size_t> mult;  // mult[f * n + g] is f ; g
};

FiniteMonoid monoid_named(const std::string& name) {
  if (name == "m3") {
    // id, c0, c1 with c ; x = c for the constants.
    FiniteMonoid m{{"id", "c0", "c1"}, 0, {}};
    for (std::size_t f = 0; f < 3; ++f)
      for (std::size_t g = 0; g < 3; ++g) m.mult.push_back(f == 0 ? g : f);
    return m;
  }
  if (name == "flag") return FiniteMonoid{{"0", "1"}, 0, {0, 1, 1, 1}};
  if (name == "t2") {
    // A self-map of {0,1} is stored as (f(0), f(1)); f ; g applies f first.
    const std::vector<std::pair<int, int>> maps{{0, 1}, {1, 0}, {0, 0}, {1, 1}};
    FiniteMonoid m{{"id", "swap", "c0", "c1"}, 0, {}};
    auto apply = [](std::pair<int, int> f, int i) { return i == 0 ? f.first : f.second; };
    for (auto f : maps)
      for (auto g : maps) {
        std::pair<int, int> h{apply(g, apply(f, 0)), apply(g, apply(f, 1))};
        m.mult.push_back(std::find(maps.begin(), maps.end(), h) - maps.begin());
      }
    return m;
  }
  throw Error(Errc::MalformedSpec, "unknown effectful fixture '" + name + "'");
}

}  // namespace

const std::vector<std::string>& effectful_names() {
  static const std::vector<std::string> names{"m3", "flag", "t2"};
  return names;
}

EffectfulData effectful(const std::string& monoid) {
  const FiniteMonoid M = monoid_named(monoid);
  const std::size_t k = M.names.size(), n = 2;
  ObjectMonoid objects{{"I", "A"}, 0, {0, 1, 1, 1}};
  auto arrow = [](std::size_t x, std::size_t y) { return x <= y; };

  EffectfulData e;
  auto& V = e.pure;
  V.objects = objects;
  V.cat.id = {0, 0};
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) V.cat.hom.push_back(arrow(x, y) ? std::vector<std::string>{"*"} : std::vector<std::string>{});
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        V.cat.comp.emplace_back(V.cat.count(n, x, y) * V.cat.count(n, y, z), 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t x2 = 0; x2 < n; ++x2)
        for (std::size_t y2 = 0; y2 < n; ++y2)
          V.tensor.emplace_back(V.cat.count(n, x, y) * V.cat.count(n, x2, y2), 0);
  V.braiding = std::vector<Label>(n * n, 0);

  auto& C = e.effectful;
  C.objects = objects;
  C.cat.id = {M.unit, M.unit};
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) C.cat.hom.push_back(arrow(x, y) ? M.names : std::vector<std::string>{});
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        std::vector<Label> t;
        if (arrow(x, y) && arrow(y, z)) t = M.mult;
        C.cat.comp.push_back(std::move(t));
      }
  std::vector<std::vector<Label>> same;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      std::vector<Label> ids;
      for (Label i = 0; i < C.cat.count(n, x, y); ++i) ids.push_back(i);
      same.push_back(ids);
      e.eta.push_back(arrow(x, y) ? std::vector<Label>{M.unit} : std::vector<Label>{});
    }
  C.left.assign(n, same);
  C.right.assign(n, same);
  C.braiding = std::vector<Label>(n * n, M.unit);
  (void)k;
  return e;
}

FiniteGradedModel effectful_model(const std::string& monoid) { return from_effectful(effectful(monoid)); }

const std::vector<std::string>& finite_pcms() {
  static const std::vector<std::string> names{
      "singleton",         "two",          "three",         "powerset a",       "powerset a b",
      "powerset a b c",    "powerset a b c d", "rw x",      "rw x y",           "product (two) (two)",
      "product (two) (three)", chain2,     halves,          nat2,               "semilattice 0 a b 1 : 0<a 0<b a<1 b<1"};
  return names;
}

FiniteGradedModel level_model(const Pcm& p) {
  ModelSpec s{p, ObjectMonoid::trivial(), {}, {}, {}, {}, {}, {}};
  auto num = [](const std::string& l) { return std::stoul(l); };
  s.hom = [](std::size_t e, std::size_t, std::size_t) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i <= e; ++i) out.push_back(std::to_string(i));
    return out;
  };
  s.id = [](std::size_t) { return std::string("0"); };
  s.comp = [num](std::size_t, std::size_t, std::size_t, std::size_t, const std::string& f, const std::string& g) {
    return std::to_string(std::max(num(f), num(g)));
  };
  s.regrade = [](std::size_t, std::size_t, std::size_t, std::size_t, const std::string& f) { return f; };
  s.tensor = [num](std::size_t, std::size_t, std::size_t, std::size_t, std::size_t, std::size_t, const std::string& f,
                   const std::string& g) { return std::to_string(std::max(num(f), num(g))); };
  s.braiding = [](std::size_t, std::size_t) { return std::string("0"); };
  return tabulate(s);
}

FiniteGradedModel or_model(const Pcm& p) {
  ModelSpec s{p, ObjectMonoid{{"I", "A"}, 0, {0, 1, 1, 1}}, {}, {}, {}, {}, {}, {}};
  auto bit_or = [](const std::string& f, const std::string& g) { return f == "1" || g == "1" ? "1" : "0"; };
  s.hom = [](std::size_t, std::size_t x, std::size_t y) {
    if (x > y) return std::vector<std::string>{};
    if (y == 0) return std::vector<std::string>{"0"};
    return std::vector<std::string>{"0", "1"};
  };
  s.id = [](std::size_t) { return std::string("0"); };
  s.comp = [bit_or](std::size_t, std::size_t, std::size_t, std::size_t, const std::string& f, const std::string& g) {
    return std::string(bit_or(f, g));
  };
  s.regrade = [](std::size_t, std::size_t, std::size_t, std::size_t, const std::string& f) { return f; };
  s.tensor = [bit_or](std::size_t, std::size_t, std::size_t, std::size_t, std::size_t, std::size_t,
                      const std::string& f, const std::string& g) { return std::string(bit_or(f, g)); };
  s.braiding = [](std::size_t, std::size_t) { return std::string("0"); };
  return tabulate(s);
}

std::vector<Topful> coreflection_fixtures() {
  std::vector<Topful> out;
  auto flag = effectful_model("flag");
  Pcm three = Pcm::three();
  auto to_two = PcmHomomorphism::from_table(three, flag.pcm, {flag.pcm.element(0), flag.pcm.element(0), flag.pcm.element(1)});
  out.push_back({"three", std::make_shared<const FiniteGradedModel>(pullback(flag, to_two))});

  auto m3 = effectful_model("m3");
  Pcm ps = Pcm::powerset({"a", "b"});
  std::vector<Grade> image;
  const Grade a = ps.subset({"a"});
  for (const auto& s : ps.elements()) {
    bool has_a = ps.leq(a, s);
    image.push_back(m3.pcm.element(has_a ? 1 : 0));
  }
  out.push_back({"powerset", std::make_shared<const FiniteGradedModel>(
                                 pullback(m3, PcmHomomorphism::from_table(ps, m3.pcm, std::move(image))))});

  auto chain = level_model(Pcm::parse(chain2));
  Pcm h = Pcm::parse(halves);
  auto squash = PcmHomomorphism::from_table(
      h, chain.pcm, {chain.pcm.named("0"), chain.pcm.named("1"), chain.pcm.named("1")});
  out.push_back({"halves", std::make_shared<const FiniteGradedModel>(pullback(chain, squash))});
  return out;
}

// ---------------------------------------------------------------- truncation

namespace {

std::string word_name(const Word& w) {
  if (w.empty()) return "I";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) out += (i ? "." : "") + w[i];
  return out;
}

std::string slice_label(const FreeMorphism& m) {
  if (m.slices.empty()) return "id";
  std::string out;
  for (std::size_t i = 0; i < m.slices.size(); ++i) {
    const auto& s = m.slices[i];
    out += (i ? " ; " : "") + word_name(s.left) + "|" + s.gen + "|" + word_name(s.right);
  }
  return out;
}

const std::string kOmega = "omega";

}  // namespace

SigPtr truncation_signature() {
  Pcm two = Pcm::two();
  return make_signature(two, {"A"}, {{"f", {"A"}, {"A"}, two.element(1)}, {"p", {"A"}, {"A"}, two.element(0)}});
}

FiniteGradedModel truncation(const SigPtr& sig, std::size_t max_word, std::size_t max_slices) {
  const Pcm& pcm = sig->pcm();
  if (!pcm.finite()) throw Error(Errc::InfiniteCarrier, pcm.descriptor() + " is not finite");
  for (const auto& g : sig->generators())
    if (g.dom.size() != g.cod.size())
      throw Error(Errc::MalformedSpec, "generator " + g.name + " changes the length of words");

  // Objects: words by length, then lexicographically, then Omega.
  std::vector<Word> words{{}};
  for (std::size_t len = 1, from = 0; len <= max_word; ++len) {
    const std::size_t to = words.size();
    for (std::size_t i = from; i < to; ++i)
      for (const auto& o : sig->objects()) {
        Word w = words[i];
        w.push_back(o);
        words.push_back(std::move(w));
      }
    from = to;
  }
  const std::size_t n = words.size() + 1, omega_obj = words.size();
  ObjectMonoid objects;
  for (const auto& w : words) objects.names.push_back(word_name(w));
  objects.names.push_back("Omega");
  objects.unit = 0;
  std::map<Word, std::size_t> index;
  for (std::size_t i = 0; i < words.size(); ++i) index[words[i]] = i;
  objects.mult.assign(n * n, omega_obj);
  for (std::size_t x = 0; x < words.size(); ++x)
    for (std::size_t y = 0; y < words.size(); ++y) {
      Word w = words[x];
      w.insert(w.end(), words[y].begin(), words[y].end());
      if (auto it = index.find(w); it != index.end()) objects.mult[x * n + y] = it->second;
    }

  // Representatives of every class, per grade and object pair.
  const auto& grades = pcm.elements();
  const std::size_t G = grades.size();
  std::vector<std::vector<std::map<std::string, FreeMorphism>>> reps(G, std::vector<std::map<std::string, FreeMorphism>>(n * n));
  std::vector<std::vector<std::vector<std::string>>> homs(G, std::vector<std::vector<std::string>>(n * n));
  for (std::size_t e = 0; e < G; ++e) {
    for (std::size_t x = 0; x < words.size(); ++x) {
      std::vector<FreeMorphism> layer{identity(sig, words[x], grades[e])};
      std::vector<std::pair<std::size_t, FreeMorphism>> found;
      for (std::size_t len = 0;; ++len) {
        for (const auto& m : layer) found.emplace_back(len, m);
        if (len == max_slices) break;
        std::vector<FreeMorphism> next;
        for (const auto& m : layer)
          for (const auto& g : sig->generators()) {
            if (!pcm.leq(g.grade, grades[e])) continue;
            const Word& cur = m.cod;
            for (std::size_t at = 0; at + g.dom.size() <= cur.size(); ++at) {
              if (!std::equal(g.dom.begin(), g.dom.end(), cur.begin() + at)) continue;
              Slice s{Word(cur.begin(), cur.begin() + at), g.name, Word(cur.begin() + at + g.dom.size(), cur.end())};
              auto sl = m.slices;
              sl.push_back(s);
              next.push_back(from_slices(sig, grades[e], m.dom, std::move(sl)));
            }
          }
        layer = std::move(next);
      }
      std::vector<std::vector<std::pair<std::size_t, std::string>>> order(n);
      for (auto& [len, m] : found) {
        auto c = canonical_form(m);
        const std::size_t y = index.at(c.cod);
        auto label = slice_label(c);
        if (reps[e][x * n + y].emplace(label, c).second) order[y].emplace_back(c.slices.size(), label);
      }
      for (std::size_t y = 0; y < words.size(); ++y) {
        if (words[y].size() != words[x].size()) continue;
        std::sort(order[y].begin(), order[y].end());
        for (auto& [len, l] : order[y]) homs[e][x * n + y].push_back(l);
        homs[e][x * n + y].push_back(kOmega);
      }
    }
    homs[e][omega_obj * n + omega_obj] = {kOmega};
  }

  auto rep = [&](std::size_t e, std::size_t x, std::size_t y, const std::string& l) -> const FreeMorphism& {
    return reps[e][x * n + y].at(l);
  };
  auto label_of = [&](const FreeMorphism& m) {
    if (m.slices.size() > max_slices) return kOmega;
    return slice_label(canonical_form(m));
  };
  ModelSpec s{pcm, objects, {}, {}, {}, {}, {}, {}};
  s.hom = [&](std::size_t e, std::size_t x, std::size_t y) { return homs[e][x * n + y]; };
  s.id = [&](std::size_t x) { return x == omega_obj ? kOmega : std::string("id"); };
  s.comp = [&](std::size_t e, std::size_t x, std::size_t y, std::size_t z, const std::string& f, const std::string& g) {
    if (f == kOmega || g == kOmega) return kOmega;
    return label_of(compose(rep(e, x, y, f), rep(e, y, z, g)));
  };
  s.regrade = [&](std::size_t e, std::size_t e2, std::size_t x, std::size_t y, const std::string& f) {
    if (f == kOmega) return kOmega;
    return label_of(regrade(rep(e, x, y, f), grades[e2]));
  };
  s.tensor = [&](std::size_t e, std::size_t e2, std::size_t x, std::size_t y, std::size_t x2, std::size_t y2,
                 const std::string& f, const std::string& g) {
    if (f == kOmega || g == kOmega || objects(x, x2) == omega_obj) return kOmega;
    return label_of(tensor(rep(e, x, y, f), rep(e2, x2, y2, g)));
  };
  return tabulate(s);
}

// ---------------------------------------------------------------- mutants

namespace {

FiniteGradedModel with_comp(FiniteGradedModel m, std::size_t e, std::size_t x, std::size_t y, std::size_t z,
                            std::size_t entry, Label value) {
  m.comp[e][m.triple(x, y, z)].at(entry) = value;
  return m;
}

}  // namespace

std::vector<Mutant> mutants() {
  std::vector<Mutant> out;
  {
    // In the flag model, make c ; c at grade 1 on A lose the flag when it is
    // raised on the left.
    auto m = effectful_model("flag");
    const std::size_t one = m.zero() == 0 ? 1 : 0, A = 1;
    out.push_back({"flag-comp", with_comp(m, one, A, A, A, 2, 0), "INTER"});
  }
  {
    // sigma_{A,A} := 1 no longer commutes with A (x) I -> A (x) A.
    auto m = or_model(Pcm::two());
    (*m.braiding)[m.pair(1, 1)] = 1;
    out.push_back({"or-braid", m, "BRAID-NATURALITY"});
  }
  return out;
}

std::vector<LaxMutant> lax_mutants() {
  std::vector<LaxMutant> out;
  const auto flag = lax_tables(effectful_model("flag"));
  const std::size_t G = flag.grades(), I = flag.objects.unit, A = 1 - I, n = flag.size();

  // Over two: the laxator 0,1;1 on I,I,I,I sends (*, 1) somewhere else.
  auto p = flag;
  auto& entry = p.laxator[(0 * G + 1) * G + 1][((I * n + I) * n + I) * n + I][1];
  entry = 1 - entry;
  out.push_back({"lax-assoc", p, "LAX-ASSOC"});

  p = flag;
  p.eta[1] = 1 - p.eta[1];
  out.push_back({"lax-eta", p, "LAX-ETA-ID"});

  p = flag;
  p.ids[1][A] = 1 - p.ids[1][A];
  out.push_back({"lax-ids", p, "LAX-ID-NATURAL"});

  // Over nat2: regrading 0 from grade 1 to grade 2 lands on 1.
  p = lax_tables(level_model(Pcm::parse(nat2)));
  p.regrade[1 * p.grades() + 2][0][0] = 1;
  out.push_back({"lax-regrade", p, "LAX-REGRADE-FUNCTOR"});

  out.push_back({"lax-of-flag-comp", lax_tables(mutants()[0].model), "LAX-COMP-ASSOC"});
  return out;
}

}  // namespace gmc::fixtures
