#include "gmc/testkit.hpp"

namespace gmc::testkit {

namespace {

struct Shape {
  const char* prefix;
  Word dom;
  Word cod;
};

const std::vector<Shape>& shapes(bool with_degenerate) {
  static const std::vector<Shape> full{
      {"a", {"A"}, {"A"}},      {"b", {"B"}, {"B"}},     {"m", {"A", "B"}, {"A"}},
      {"s", {"A"}, {"A", "B"}}, {"u", {}, {"A"}},        {"k", {"B"}, {}},
      {"z", {}, {}},
  };
  static const std::vector<Shape> plain(full.begin(), full.begin() + 4);
  return with_degenerate ? full : plain;
}

constexpr std::size_t kMaxWidth = 6;

template <class Pred>
FreeMorphism random_with(const SigPtr& sig, const Grade& ambient, const Word& dom, std::size_t len,
                         std::mt19937_64& rng, Pred allowed) {
  std::vector<Slice> slices;
  Word cur = dom;
  for (std::size_t k = 0; k < len; ++k) {
    std::vector<std::pair<const GeneratorDecl*, std::size_t>> options;
    for (const auto& g : sig->generators()) {
      if (!allowed(g)) continue;
      if (cur.size() - std::min(cur.size(), g.dom.size()) + g.cod.size() > kMaxWidth) continue;
      for (std::size_t p = 0; p + g.dom.size() <= cur.size(); ++p)
        if (std::equal(g.dom.begin(), g.dom.end(), cur.begin() + static_cast<std::ptrdiff_t>(p)))
          options.emplace_back(&g, p);
    }
    if (options.empty()) break;
    std::uniform_int_distribution<std::size_t> d(0, options.size() - 1);
    auto [g, p] = options[d(rng)];
    Slice s;
    s.left.assign(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(p));
    s.gen = g->name;
    s.right.assign(cur.begin() + static_cast<std::ptrdiff_t>(p + g->dom.size()), cur.end());
    Word next = s.left;
    next.insert(next.end(), g->cod.begin(), g->cod.end());
    next.insert(next.end(), s.right.begin(), s.right.end());
    cur = std::move(next);
    slices.push_back(std::move(s));
  }
  return from_slices(sig, ambient, dom, std::move(slices));
}

}  // namespace

SigPtr shaped_signature(const Pcm& p, const std::vector<Grade>& grades, bool with_degenerate) {
  std::vector<GeneratorDecl> gens;
  for (const auto& sh : shapes(with_degenerate))
    for (std::size_t i = 0; i < grades.size(); ++i)
      gens.push_back(GeneratorDecl{std::string(sh.prefix) + std::to_string(i), sh.dom, sh.cod, grades[i]});
  return make_signature(p, {"A", "B"}, std::move(gens));
}

Word random_word(const Signature& sig, std::size_t max_len, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> dl(0, max_len);
  std::uniform_int_distribution<std::size_t> dobj(0, sig.objects().size() - 1);
  Word w(dl(rng));
  for (auto& o : w) o = sig.objects()[dobj(rng)];
  return w;
}

FreeMorphism random_morphism(const SigPtr& sig, const Grade& ambient, const Word& dom, std::size_t len,
                             std::mt19937_64& rng) {
  const Pcm& p = sig->pcm();
  return random_with(sig, ambient, dom, len, rng,
                     [&](const GeneratorDecl& g) { return p.leq(g.grade, ambient); });
}

FreeMorphism random_morphism_graded(const SigPtr& sig, const Grade& ambient, const Grade& gen_grade,
                                    const Word& dom, std::size_t len, std::mt19937_64& rng) {
  return random_with(sig, ambient, dom, len, rng,
                     [&](const GeneratorDecl& g) { return g.grade == gen_grade; });
}

FreeMorphism random_walk(const FreeMorphism& m, std::size_t moves, std::mt19937_64& rng) {
  FreeMorphism cur = m;
  for (std::size_t i = 0; i < moves; ++i) {
    auto ns = exchange_neighbours(cur);
    if (ns.empty()) break;
    std::uniform_int_distribution<std::size_t> d(0, ns.size() - 1);
    cur = ns[d(rng)];
  }
  return cur;
}

FreeMorphism random_geometric_walk(const FreeMorphism& m, std::size_t moves, std::mt19937_64& rng) {
  const Pcm& p = m.sig->pcm();
  std::vector<GeneratorDecl> flat = m.sig->generators();
  for (auto& g : flat) g.grade = p.zero();
  auto twin = make_signature(p, m.sig->objects(), std::move(flat));
  FreeMorphism t{twin, p.zero(), m.dom, m.cod, m.slices};
  t = random_walk(t, moves, rng);
  return from_slices(m.sig, m.grade, m.dom, t.slices);
}

Grade random_above(const Pcm& p, const Grade& lo, std::mt19937_64& rng) {
  for (int i = 0; i < 20; ++i) {
    auto s = p.add(lo, p.sample(rng));
    if (s) return *s;
  }
  return lo;
}

}  // namespace gmc::testkit
