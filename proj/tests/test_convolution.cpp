#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gmc/convolution.hpp"
#include "gmc/fixtures.hpp"

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

std::size_t at(const Pcm& p, const std::string& g) { return p.index_of(p.parse_grade(g)); }

// Independent oracle for P: search the carrier for a sum and an extension.
bool oracle_p(const Pcm& p, std::size_t a, std::size_t b, std::size_t c) {
  auto s = p.add(p.element(a), p.element(b));
  if (!s) return false;
  for (const auto& w : p.elements()) {
    auto t = p.add(*s, w);
    if (t && *t == p.element(c)) return true;
  }
  return false;
}

// F(0) = {x}, F(1) = {x'} over two.
Copresheaf lift(const Pcm& two) { return make_copresheaf(two, {{"x"}, {"x'"}}, {{0, 1, {0}}}); }

std::vector<std::pair<std::string, FiniteGradedModel>> valid_models() {
  std::vector<std::pair<std::string, FiniteGradedModel>> ms{
      {"terminal two", fixtures::terminal(Pcm::two())},
      {"terminal three", fixtures::terminal(Pcm::three())},
      {"or powerset", fixtures::or_model(Pcm::powerset({"a", "b"}))},
      {"level nat2", fixtures::level_model(Pcm::parse(fixtures::nat2))},
      {"truncation", fixtures::truncation(fixtures::truncation_signature(), 2, 2)}};
  for (const auto& n : fixtures::effectful_names()) ms.emplace_back(n, fixtures::effectful_model(n));
  for (const auto& t : fixtures::coreflection_fixtures()) ms.emplace_back(t.name, *t.model);
  return ms;
}

}  // namespace

TEST_CASE("P matches the sum-then-extend oracle and I is everywhere true") {
  for (const auto& d : fixtures::finite_pcms()) {
    Pcm p = Pcm::parse(d);
    auto b = promonoidal_from_pcm(p);
    for (std::size_t a = 0; a < b.size(); ++a) {
      CHECK(b.i(a));
      for (std::size_t x = 0; x < b.size(); ++x)
        for (std::size_t c = 0; c < b.size(); ++c) CHECK(b.p(a, x, c) == oracle_p(p, a, x, c));
    }
  }
}

TEST_CASE("sample values of P") {
  Pcm two = Pcm::two();
  auto b = promonoidal_from_pcm(two);
  for (std::size_t c = 0; c < 2; ++c) CHECK_FALSE(b.p(at(two, "1"), at(two, "1"), c));
  CHECK(b.p(at(two, "0"), at(two, "1"), at(two, "1")));
  Pcm three = Pcm::three();
  CHECK(promonoidal_from_pcm(three).p(at(three, "1"), at(three, "1"), at(three, "1")));
  CHECK(code_of([] { promonoidal_from_pcm(Pcm::nat_plus()); }) == Errc::InfiniteCarrier);
}

TEST_CASE("promonoidal laws hold on every finite fixture") {
  for (const auto& d : fixtures::finite_pcms()) {
    CAPTURE(d);
    auto r = check_promonoidal_laws(promonoidal_from_pcm(Pcm::parse(d)));
    CHECK(r.ok());
    CHECK(r.checks().size() == 5);
  }
}

TEST_CASE("a flipped P entry breaks associativity with a witness") {
  auto b = promonoidal_from_pcm(Pcm::three());
  // Entries are indexed (a*3+b)*3+c over the grades 0, 1, 2.
  auto broken = b;
  broken.P[(1 * 3 + 1) * 3 + 2] = 0;
  auto r = check_promonoidal_laws(broken);
  CHECK_FALSE(r.passed("P-FUNCTORIAL"));
  broken = b;
  broken.P[(1 * 3 + 1) * 3 + 1] = 0;
  r = check_promonoidal_laws(broken);
  REQUIRE_FALSE(r.passed("PROMONOIDAL-ASSOC"));
  CHECK(r.find("PROMONOIDAL-ASSOC")->detail == "(1,1,2,2)");
  CHECK(r.passed("PROMONOIDAL-UNIT-LEFT"));
}

TEST_CASE("copresheaf closure and its errors") {
  Pcm three = Pcm::three();
  auto f = make_copresheaf(three, {{"a", "b"}, {"c"}, {"d", "e"}}, {{0, 1, {0, 0}}, {1, 2, {1}}});
  CHECK(f.apply(0, 2, 0) == 1);
  CHECK(f.apply(0, 2, 1) == 1);
  CHECK(f.apply(2, 2, 0) == 0);
  CHECK(f.maps[2 * 3 + 0].empty());

  CHECK(code_of([&] { make_copresheaf(three, {{"a"}, {"c"}, {"d"}}, {{0, 1, {0}}}); }) == Errc::IllFormed);
  CHECK(code_of([&] { make_copresheaf(three, {{"a"}, {"c"}, {"d"}}, {{0, 1, {1}}, {1, 2, {0}}}); }) == Errc::IllFormed);
  CHECK(code_of([&] { make_copresheaf(three, {{"a"}, {"a", "a"}, {"d"}}, {}); }) == Errc::IllFormed);
  CHECK(code_of([&] {
          make_copresheaf(three, {{"a"}, {"c"}, {"d", "e"}}, {{0, 1, {0}}, {1, 2, {0}}, {0, 2, {1}}});
        }) == Errc::IllFormed);

  // Two routes around the square of powerset {a, b} must agree.
  Pcm pw = Pcm::powerset({"a", "b"});
  std::vector<std::vector<std::string>> sets(4, {"p", "q"});
  std::vector<GeneratingMap> maps;
  for (auto [e, e2] : covering_pairs(GradeAlgebra(pw))) maps.push_back({e, e2, {0, 1}});
  CHECK_NOTHROW(make_copresheaf(pw, sets, maps));
  maps.back().map = {1, 0};
  CHECK(code_of([&] { make_copresheaf(pw, sets, maps); }) == Errc::IllFormed);
}

TEST_CASE("covering pairs") {
  CHECK(covering_pairs(GradeAlgebra(Pcm::three())).size() == 2);
  CHECK(covering_pairs(GradeAlgebra(Pcm::powerset({"a", "b", "c"}))).size() == 12);
  CHECK(covering_pairs(GradeAlgebra(Pcm::singleton())).empty());
}

TEST_CASE("enumeration counts match a direct count") {
  // Over the chain 0 < 1 a copresheaf is a function F(0) -> F(1).
  std::size_t expect = 0;
  for (std::size_t s0 = 0; s0 <= 3; ++s0)
    for (std::size_t s1 = 0; s1 <= 3; ++s1) {
      std::size_t k = 1;
      for (std::size_t i = 0; i < s0; ++i) k *= s1;
      expect += k;
    }
  CHECK(all_copresheaves(Pcm::two(), 3).size() == expect);
  CHECK(all_copresheaves(Pcm::two(), 3).size() == 60);
  CHECK(all_copresheaves(Pcm::three(), 2).size() == 47);
}

TEST_CASE("copresheaf documents") {
  const std::string doc = R"({"format":"gmccopresheaf/1","pcm":"three",
    "sets":{"0":["a","b"],"1":["c"],"2":["d","e"]},
    "maps":[{"from":"0","to":"1","map":{"a":"c","b":"c"}},{"from":"1","to":"2","map":{"c":"e"}}]})";
  auto f = load_copresheaf(doc);
  CHECK(f.apply(0, 2, 1) == 1);
  auto again = load_copresheaf(save_copresheaf(f));
  CHECK(again.sets == f.sets);
  CHECK(again.maps == f.maps);
  CHECK(save_copresheaf(again) == save_copresheaf(f));

  CHECK(code_of([] { load_copresheaf("{"); }) == Errc::ParseError);
  CHECK(code_of([] { load_copresheaf(R"({"format":"x","pcm":"two","sets":{}})"); }) == Errc::ParseError);
  CHECK(code_of([] { load_copresheaf(R"({"format":"gmccopresheaf/1","pcm":"nat_plus","sets":{}})"); }) ==
        Errc::InfiniteCarrier);
  CHECK(code_of([] {
          load_copresheaf(R"({"format":"gmccopresheaf/1","pcm":"two","sets":{"0":["a"],"1":["b"]},
            "maps":[{"from":"0","to":"1","map":{"a":"z"}}]})");
        }) == Errc::IllFormed);
  CHECK(code_of([] {
          load_copresheaf(R"({"format":"gmccopresheaf/1","pcm":"two","sets":{"0":["a"],"1":["b"]},"maps":[]})");
        }) == Errc::IllFormed);
  CHECK(code_of([] {
          load_copresheaf(R"({"format":"gmccopresheaf/1","pcm":"two","sets":{"7":["a"]}})");
        }) == Errc::IllFormed);
}

TEST_CASE("convolving with J keeps the size at every grade") {
  for (const char* d : {"two", "three", "powerset a b"}) {
    Pcm p = Pcm::parse(d);
    auto j = unit_copresheaf(p);
    for (const auto& g : all_copresheaves(p, d == std::string("powerset a b") ? 1 : 3)) {
      auto left = convolve(j, g), right = convolve(g, j);
      for (std::size_t c = 0; c < p.size(); ++c) {
        CHECK(left.sets[c].size() == g.sets[c].size());
        CHECK(right.sets[c].size() == g.sets[c].size());
      }
    }
  }
}

TEST_CASE("the lifted point collapses to one class at the top") {
  Pcm two = Pcm::two();
  auto f = lift(two);
  auto c = convolve_classes(f, f);
  REQUIRE(c.classes[1].size() == 1);
  CHECK(c.classes[1][0].size() == 3);
  CHECK(c.result.sets[0] == std::vector<std::string>{"(0,0|x,x)"});
  CHECK(c.result.sets[1] == std::vector<std::string>{"(0,0|x,x)"});
  CHECK(c.class_of(1, {1, 0, 0, 0}) == 0);
  CHECK(code_of([&] { c.class_of(1, {1, 1, 0, 0}); }) == Errc::IllFormed);
}

TEST_CASE("at the zero grade the convolution is the plain product") {
  std::mt19937_64 rng(7);
  for (const char* d : {"two", "three", "powerset a b"}) {
    Pcm p = Pcm::parse(d);
    auto all = all_copresheaves(p, 2);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (int i = 0; i < 40; ++i) {
      const auto& f = all[pick(rng)];
      const auto& g = all[pick(rng)];
      auto c = convolve(f, g);
      const std::size_t z = GradeAlgebra(p).zero();
      CHECK(c.sets[z].size() == f.sets[z].size() * g.sets[z].size());
    }
  }
}

TEST_CASE("convolution checks the PCM") {
  CHECK(code_of([] { convolve(unit_copresheaf(Pcm::two()), unit_copresheaf(Pcm::three())); }) == Errc::PcmMismatch);
}

TEST_CASE("convolution documents list classes in order") {
  auto f = lift(Pcm::two());
  const std::string out = save_convolution(convolve_classes(f, f));
  CHECK(out.find(R"j({"grade":"1","members":["(0,0|x,x)","(0,1|x,x')","(1,0|x',x)"]})j") != std::string::npos);
  CHECK(out == save_convolution(convolve_classes(f, f)));
}

TEST_CASE("unit coherence for every small copresheaf over two and three") {
  for (const char* d : {"two", "three"}) {
    Pcm p = Pcm::parse(d);
    auto j = unit_copresheaf(p);
    for (const auto& f : all_copresheaves(p, 3)) {
      auto r = check_convolution_coherence(f, j, j);
      CHECK(r.passed("LEFT-UNIT"));
      CHECK(r.passed("RIGHT-UNIT"));
    }
  }
}

TEST_CASE("associativity coherence") {
  Pcm two = Pcm::two();
  auto j = unit_copresheaf(two);
  CHECK(check_convolution_coherence(j, j, j).ok());
  auto f = lift(two);
  CHECK(check_convolution_coherence(f, f, f).ok());

  auto small = all_copresheaves(two, 2);
  for (const auto& a : small)
    for (const auto& b : small)
      for (const auto& c : small) CHECK(check_convolution_coherence(a, b, c).passed("ASSOCIATOR"));

  std::mt19937_64 rng(11);
  for (const char* d : {"three", "powerset a b"}) {
    auto all = all_copresheaves(Pcm::parse(d), 2);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (int i = 0; i < 150; ++i) CHECK(check_convolution_coherence(all[pick(rng)], all[pick(rng)], all[pick(rng)]).ok());
  }
}

TEST_CASE("lax presentations round trip on valid models") {
  for (const auto& [name, m] : valid_models()) {
    CAPTURE(name);
    auto p = graded_to_lax(m);
    CHECK(check_lax_presentation(p).ok());
    auto back = lax_to_graded(p);
    CHECK(same_tables(back, m));
    CHECK(graded_to_lax(back) == p);
    for (std::size_t c = 0; c < p.grades(); ++c) CHECK(p.eta[c] == m.identity(c, m.objects.unit));
  }
}

TEST_CASE("lax check names every item") {
  auto r = check_lax_presentation(graded_to_lax(fixtures::terminal(Pcm::three())));
  CHECK(r.ok());
  CHECK(r.checks().size() == 13);
  for (const char* item : {"LAX-REGRADE-FUNCTOR", "LAX-EQUIVALENCE", "LAX-UNIT-NATURAL", "LAX-NATURAL", "LAX-ASSOC",
                           "LAX-UNIT", "LAX-COMP-NATURAL", "LAX-COMP-MONOIDAL", "LAX-ID-NATURAL", "LAX-ID-MONOIDAL",
                           "LAX-ETA-ID", "LAX-COMP-ASSOC", "LAX-COMP-UNIT"})
    CHECK(r.find(item) != nullptr);
}

TEST_CASE("translations refuse broken input") {
  for (const auto& mu : fixtures::mutants()) {
    CAPTURE(mu.name);
    const bool axioms = check_axioms(mu.model).ok();
    CHECK(axioms == check_lax_presentation(lax_tables(mu.model)).ok());
    if (!axioms) CHECK(code_of([&] { graded_to_lax(mu.model); }) == Errc::AxiomFailure);
  }
  auto p = graded_to_lax(fixtures::effectful_model("flag"));
  p.eta[1] = p.eta[1] == 0 ? 1 : 0;
  CHECK(code_of([&] { lax_to_graded(p); }) == Errc::AxiomFailure);
}

TEST_CASE("the lax check agrees with the axioms on every single-entry mutant") {
  std::vector<FiniteGradedModel> ms{fixtures::or_model(Pcm::powerset({"a", "b"})),
                                    fixtures::level_model(Pcm::parse(fixtures::nat2))};
  for (const auto& n : fixtures::effectful_names()) ms.push_back(fixtures::effectful_model(n));
  std::size_t probes = 0, survivors = 0;
  for (auto& m : ms) {
    const std::size_t n = m.size(), G = m.grades();
    auto probe = [&](Label& slot, std::size_t range) {
      const Label old = slot;
      for (Label v = 0; v < range; ++v) {
        if (v == old) continue;
        slot = v;
        const bool axioms = check_axioms(m).ok();
        CHECK(axioms == check_lax_presentation(lax_tables(m)).ok());
        ++probes;
        if (axioms) ++survivors;
      }
      slot = old;
    };
    for (std::size_t k = 0; k < m.tensor.size(); ++k) {
      auto s = m.alg.add(k / G, k % G);
      for (std::size_t q = 0; q < m.tensor[k].size(); ++q) {
        const std::size_t x = q / (n * n * n), y = q / (n * n) % n, x2 = q / n % n, y2 = q % n;
        for (auto& l : m.tensor[k][q]) probe(l, m.count(*s, m.objects(x, x2), m.objects(y, y2)));
      }
    }
    for (std::size_t e = 0; e < G; ++e)
      for (std::size_t q = 0; q < m.comp[e].size(); ++q)
        for (auto& l : m.comp[e][q]) probe(l, m.count(e, q / (n * n), q % n));
    for (std::size_t k = 0; k < m.regrade.size(); ++k)
      for (std::size_t q = 0; q < m.regrade[k].size(); ++q)
        for (auto& l : m.regrade[k][q]) probe(l, m.count(k % G, q / n, q % n));
  }
  CHECK(probes > 1000);
  CHECK(survivors > 0);
}

TEST_CASE("a perturbed laxator breaks associativity or compatibility") {
  for (const auto& [name, m] : valid_models()) {
    CAPTURE(name);
    auto p = graded_to_lax(m);
    const std::size_t G = p.grades(), n = p.size();
    bool done = false;
    for (std::size_t k = 0; k < p.laxator.size() && !done; ++k)
      for (std::size_t q = 0; q < p.laxator[k].size() && !done; ++q) {
        const std::size_t x = q / (n * n * n), y = q / (n * n) % n, x2 = q / n % n, y2 = q % n;
        const std::size_t range = p.count(k % G, p.objects(x, x2), p.objects(y, y2));
        if (range < 2 || p.laxator[k][q].empty()) continue;
        auto broken = p;
        auto& slot = broken.laxator[k][q][0];
        slot = (slot + 1) % range;
        auto r = check_lax_presentation(broken);
        CHECK((!r.passed("LAX-ASSOC") || !r.passed("LAX-EQUIVALENCE")));
        done = true;
      }
  }
}
