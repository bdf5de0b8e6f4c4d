#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gmc/freecat.hpp"
#include "gmc/testkit.hpp"

using namespace gmc;

namespace {

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::MalformedSpec;
}

struct TwoSig {
  Pcm p = Pcm::two();
  Grade z = p.zero(), one = p.element(1);
  SigPtr sig = make_signature(p, {"A", "B"},
                              {{"f", {"A"}, {"A"}, one},
                               {"g", {"B"}, {"B"}, one},
                               {"h", {"A"}, {"A"}, z},
                               {"k", {"B"}, {"B"}, z},
                               {"u", {}, {"B"}, z}});
  FreeMorphism gen(const std::string& n) const { return generator(sig, n); }
};

struct NatSig {
  Pcm p = Pcm::nat_plus();
  SigPtr sig = make_signature(p, {"A", "B"},
                              {{"f", {"A"}, {"A"}, p.nat(1)}, {"g", {"B"}, {"B"}, p.nat(1)}});
};

}  // namespace

TEST_CASE("identities and generators") {
  TwoSig s;
  auto idA = identity(s.sig, {"A"}, s.z);
  CHECK(idA.slices.empty());
  auto idI = identity(s.sig, {}, s.z);
  CHECK(idI.dom.empty());
  CHECK(idI.cod.empty());
  CHECK(identity(s.sig, {"A"}, s.one) == regrade(idA, s.one));
  auto f = s.gen("f");
  CHECK(f.slices.size() == 1);
  CHECK(f.grade == s.one);
  CHECK(s.gen("u").dom.empty());
  CHECK(code_of([&] { s.gen("missing"); }) == Errc::UnknownGenerator);
}

TEST_CASE("regrading") {
  Pcm p = Pcm::three();
  auto sig = make_signature(p, {"A"}, {{"f", {"A"}, {"A"}, p.element(1)}});
  auto f = generator(sig, "f");
  CHECK(regrade(f, f.grade) == f);
  CHECK(regrade(regrade(f, p.element(1)), p.element(2)) == regrade(f, p.element(2)));
  CHECK(code_of([&] { regrade(f, p.zero()); }) == Errc::NotLeq);
}

TEST_CASE("composition typing") {
  TwoSig s;
  auto f = s.gen("f");
  CHECK(compose(identity(s.sig, {"A"}, s.one), f) == f);
  auto ff = compose(f, f);
  CHECK(ff.slices.size() == 2);
  CHECK(code_of([&] { compose(f, s.gen("h")); }) == Errc::GradeMismatch);
  CHECK(code_of([&] { compose(f, regrade(s.gen("k"), s.one)); }) == Errc::TypeMismatch);
  try {
    compose(f, s.gen("h"));
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("gcompose") != std::string::npos);
  }
}

TEST_CASE("tensor and non-interference") {
  TwoSig s;
  CHECK(code_of([&] { tensor(s.gen("f"), s.gen("g")); }) == Errc::NonOrthogonalGrades);
  auto f = s.gen("f");
  CHECK(tensor(f, identity(s.sig, {}, s.z)) == f);

  Pcm ps = Pcm::powerset({"a", "b"});
  auto sig = make_signature(ps, {"A", "B"},
                            {{"f", {"A"}, {"A"}, ps.subset({"a"})}, {"g", {"B"}, {"B"}, ps.subset({"b"})}});
  auto t = tensor(generator(sig, "f"), generator(sig, "g"));
  CHECK(t.grade == ps.subset({"a", "b"}));
  CHECK(t.dom == Word{"A", "B"});
}

TEST_CASE("staircases over two are distinct at grade 1") {
  TwoSig s;
  auto f = s.gen("f"), g = s.gen("g");
  auto idA = identity(s.sig, {"A"}, s.z), idB = identity(s.sig, {"B"}, s.z);
  auto s1 = compose(tensor(f, idB), tensor(idA, g));
  auto s2 = compose(tensor(idA, g), tensor(f, idB));
  CHECK_FALSE(equal_at(s1, s2, s.one));
  CHECK_FALSE(equal_oracle(s1, s2, s.one));
  CHECK(canonical_form(s1) == s1);
  CHECK(canonical_form(s2) == s2);
}

TEST_CASE("pure slices slide past effectful ones") {
  TwoSig s;
  auto f = s.gen("f"), k = s.gen("k");
  auto idA1 = identity(s.sig, {"A"}, s.z), idB = identity(s.sig, {"B"}, s.z);
  auto s1 = compose(tensor(f, idB), regrade(tensor(idA1, k), s.one));
  auto s2 = compose(regrade(tensor(idA1, k), s.one), tensor(f, idB));
  CHECK(equal_at(s1, s2, s.one));
  CHECK(equal_oracle(s1, s2, s.one));
  CHECK(canonical_form(s1) == canonical_form(s2));
}

TEST_CASE("nat_plus: exchange needs ambient 2") {
  NatSig s;
  auto f = generator(s.sig, "f"), g = generator(s.sig, "g");
  auto one = s.p.nat(1);
  auto idA = identity(s.sig, {"A"}, s.p.zero()), idB = identity(s.sig, {"B"}, s.p.zero());
  auto fl = from_slices(s.sig, one, {"A", "B"}, {{{}, "f", {"B"}}, {{"A"}, "g", {}}});
  auto gl = from_slices(s.sig, one, {"A", "B"}, {{{"A"}, "g", {}}, {{}, "f", {"B"}}});
  CHECK_FALSE(equal_at(fl, gl, one));
  CHECK_FALSE(equal_oracle(fl, gl, one));
  CHECK(equal_at(fl, gl, s.p.nat(2)));
  CHECK(equal_oracle(fl, gl, s.p.nat(2)));
  CHECK(equal_at(tensor(f, g), compose(tensor(idA, g), tensor(f, idB)), s.p.nat(2)));
}

TEST_CASE("valid grades") {
  TwoSig s;
  auto v = valid_grades(s.gen("f"));
  REQUIRE(v.size() == 1);
  CHECK(v[0] == s.one);
  CHECK(valid_grades(identity(s.sig, {"A"}, s.z)).size() == 2);

  Pcm ps = Pcm::powerset({"a", "b"});
  auto sig = make_signature(ps, {"A", "B"},
                            {{"f", {"A"}, {"A"}, ps.subset({"a"})}, {"g", {"B"}, {"B"}, ps.subset({"b"})}});
  auto t = tensor(generator(sig, "f"), generator(sig, "g"));
  // Independent scan: S is valid iff it contains both a and b.
  std::vector<Grade> expect;
  for (const auto& S : ps.elements())
    if ((S.n & 3u) == 3u) expect.push_back(S);
  CHECK(valid_grades(t) == expect);
  CHECK_FALSE(admissible_at(t, ps.subset({"a"})));
  NatSig n;
  CHECK_THROWS_AS(valid_grades(generator(n.sig, "f")), Error);
}

TEST_CASE("slice printing") {
  TwoSig s;
  auto t = tensor(s.gen("f"), identity(s.sig, {"B"}, s.z));
  CHECK(show_slices(t) == "I | f@1 | B\n");
  CHECK(show_word({}) == "I");
}

TEST_CASE("effectful view") {
  TwoSig s;
  EffectfulView v(s.sig);
  CHECK(v.top() == s.one);
  CHECK(v.is_pure(s.gen("h")));
  CHECK(v.is_effectful(s.gen("f")));
  CHECK(code_of([&] { v.tensor_effectful(s.gen("f"), s.gen("g")); }) == Errc::NonOrthogonalGrades);
  auto m = v.tensor_mixed(s.gen("h"), s.gen("g"));
  CHECK(m.grade == s.one);
  // Inclusion commutes with tensor of pure morphisms.
  auto hk = tensor(s.gen("h"), s.gen("k"));
  CHECK(equal_at(v.include(hk), tensor(v.include(s.gen("h")), s.gen("k")), s.one));

  Pcm iv = Pcm::interval(Rational(1));
  auto isig = make_signature(iv, {"A"}, {{"f", {"A"}, {"A"}, iv.rational(Rational(1))}});
  EffectfulView vi(isig);
  CHECK(code_of([&] { vi.tensor_effectful(generator(isig, "f"), generator(isig, "f")); }) ==
        Errc::NonOrthogonalGrades);
  NatSig n;
  CHECK(code_of([&] { EffectfulView{n.sig}; }) == Errc::NoTop);
}

TEST_CASE("witness proposition: regrading is tensoring with a graded unit") {
  Pcm p = Pcm::powerset({"a", "b", "c"});
  auto sig = testkit::shaped_signature(p, {p.subset({"a"}), p.subset({"b"})});
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    auto m = testkit::random_morphism(sig, p.subset({"a", "b"}), {"A"}, 4, rng);
    for (const auto& b : p.elements()) {
      if (!p.leq(m.grade, b)) continue;
      for (const auto& c : p.witnesses(m.grade, b))
        CHECK(equal_at(regrade(m, b), tensor(m, identity(sig, {}, c)), b));
    }
  }
}

TEST_CASE("interchange lemma for pure against effectful") {
  for (Pcm p : {Pcm::two(), Pcm::three(), Pcm::nat_plus()}) {
    Grade a = p.kind() == PcmKind::nat_plus ? p.nat(3) : *p.top();
    auto sig = testkit::shaped_signature(p, {p.zero(), a});
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
      auto x = testkit::random_word(*sig, 2, rng), y = testkit::random_word(*sig, 2, rng);
      auto f = testkit::random_morphism_graded(sig, p.zero(), p.zero(), x, 3, rng);
      auto g = testkit::random_morphism_graded(sig, a, a, y, 3, rng);
      // (f * id);(id * g) = (id * g);(f * id) = f * g
      auto f_then = compose(regrade(tensor(f, identity(sig, g.dom, p.zero())), a),
                            tensor(identity(sig, f.cod, p.zero()), g));
      auto g_then = compose(tensor(identity(sig, f.dom, p.zero()), g),
                            regrade(tensor(f, identity(sig, g.cod, p.zero())), a));
      auto both = tensor(f, g);
      CHECK(equal_at(f_then, both, a));
      CHECK(equal_at(g_then, both, a));
    }
  }
}

TEST_CASE("canonical form: idempotent, oracle-equivalent, monotone under coarsening") {
  Pcm p = Pcm::three();
  auto sig = testkit::shaped_signature(p, p.elements());
  std::mt19937_64 rng(17);
  for (int i = 0; i < 300; ++i) {
    auto dom = testkit::random_word(*sig, 3, rng);
    auto m = testkit::random_morphism(sig, p.element(1), dom, 5, rng);
    auto n = testkit::random_geometric_walk(m, 6, rng);
    auto cf = canonical_form(m);
    CHECK(canonical_form(cf) == cf);
    CHECK(equal_oracle(m, cf, m.grade));
    bool eq1 = equal_at(m, n, p.element(1));
    CHECK(eq1 == equal_oracle(m, n, p.element(1)));
    if (eq1) CHECK(equal_at(m, n, p.element(2)));
  }
}

TEST_CASE("equality is a congruence") {
  Pcm p = Pcm::powerset({"a", "b"});
  auto sig = testkit::shaped_signature(p, {p.zero(), p.subset({"a"}), p.subset({"b"})});
  std::mt19937_64 rng(23);
  const Grade top = *p.top();
  for (int i = 0; i < 200; ++i) {
    auto dom = testkit::random_word(*sig, 3, rng);
    auto m = testkit::random_morphism(sig, top, dom, 4, rng);
    auto m2 = testkit::random_walk(m, 5, rng);
    auto k = testkit::random_morphism(sig, top, m.cod, 3, rng);
    auto k2 = testkit::random_walk(k, 5, rng);
    CHECK(equal_at(compose(m, k), compose(m2, k2), top));
    auto z = testkit::random_morphism(sig, p.zero(), {"B"}, 2, rng);
    CHECK(equal_at(tensor(m, z), tensor(m2, testkit::random_walk(z, 3, rng)), top));
  }
}

TEST_CASE("a state may pass an effect on either side") {
  Pcm p = Pcm::two();
  auto sig = make_signature(p, {"A", "B"},
                            {{"k", {"B"}, {}, p.zero()}, {"u", {}, {"A"}, p.element(1)}});
  auto k = generator(sig, "k"), u = generator(sig, "u");
  auto one = p.element(1);
  auto idA = identity(sig, {"A"}, p.zero()), idB = identity(sig, {"B"}, p.zero());
  auto seq = compose(regrade(k, one), u);
  auto right = compose(tensor(idB, u), regrade(tensor(k, idA), one));
  auto left = compose(tensor(u, idB), regrade(tensor(idA, k), one));
  CHECK(equal_at(seq, right, one));
  CHECK(equal_at(seq, left, one));
  CHECK(equal_oracle(left, right, one));
  CHECK(exchange_neighbours(seq).size() == 2);
}
