#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gmc/fixtures.hpp"
#include "gmc/model_io.hpp"

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

std::shared_ptr<const FiniteGradedModel> share(FiniteGradedModel m) {
  return std::make_shared<const FiniteGradedModel>(std::move(m));
}

std::size_t one_of(const FiniteGradedModel& m) { return m.zero() == 0 ? 1 : 0; }

std::vector<FiniteGradedModel> valid_models() {
  std::vector<FiniteGradedModel> ms{fixtures::terminal(Pcm::two()), fixtures::terminal(Pcm::three()),
                                    fixtures::or_model(Pcm::powerset({"a", "b"})),
                                    fixtures::level_model(Pcm::parse(fixtures::nat2)),
                                    fixtures::truncation(fixtures::truncation_signature(), 2, 2)};
  for (const auto& n : fixtures::effectful_names()) ms.push_back(fixtures::effectful_model(n));
  for (const auto& t : fixtures::coreflection_fixtures()) ms.push_back(*t.model);
  return ms;
}

// Replaces the first occurrence of `from` in `text`.
std::string replaced(std::string text, const std::string& from, const std::string& to) {
  auto at = text.find(from);
  REQUIRE(at != std::string::npos);
  return text.replace(at, from.size(), to);
}

}  // namespace

TEST_CASE("loading documents") {
  auto t = fixtures::terminal(Pcm::two());
  auto doc = save_model(t);
  auto back = load_model(doc);
  CHECK(same_tables(back, t));
  CHECK(check_axioms(back).ok());
  CHECK(save_model(back) == doc);

  auto trunc = fixtures::truncation(fixtures::truncation_signature(), 2, 2);
  CHECK(same_tables(load_model(save_model(trunc)), trunc));

  CHECK(code_of([&] { load_model(replaced(doc, "[[\"*\",\"*\",\"*\"]]}", "[[\"*\",\"*\",\"x\"]]}")); }) ==
        Errc::IllFormed);
  CHECK(code_of([&] { load_model(replaced(doc, "\"table\":[[\"*\",\"*\",\"*\"]]", "\"table\":[]")); }) ==
        Errc::IllFormed);
  CHECK(code_of([&] { load_model(replaced(doc, "gmcmodel/1", "gmcmodel/9")); }) == Errc::ParseError);
  CHECK(code_of([&] { load_model("{\"format\": "); }) == Errc::ParseError);
  CHECK(code_of([&] { load_model(replaced(doc, "\"grade\":\"1\"", "\"grade\":\"5\"")); }) == Errc::IllFormed);

  // The message names the coordinates of the missing entry.
  try {
    load_model(replaced(doc, "\"table\":[[\"*\",\"*\",\"*\"]]", "\"table\":[]"));
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("comp at grade 0 objects (I,I,I) labels (*,*) is missing") != std::string::npos);
  }
}

TEST_CASE("object tables must form a monoid") {
  auto m = fixtures::or_model(Pcm::two());
  auto doc = save_model(m);
  CHECK(code_of([&] { load_model(replaced(doc, "[\"I\",\"A\",\"A\"]", "[\"I\",\"A\",\"I\"]")); }) == Errc::IllFormed);
}

TEST_CASE("axioms hold on every fixture model") {
  for (const auto& m : valid_models()) {
    INFO(m.pcm.descriptor());
    CHECK(check_axioms(m).ok());
    CHECK(check_interchange_lemma(m).ok());
    CHECK(check_regrade_witness(m).ok());
  }
}

TEST_CASE("a perturbed composition breaks interchange") {
  for (const auto& mu : fixtures::mutants()) {
    if (mu.breaks != "INTER") continue;
    Report r = check_axioms(mu.model);
    CHECK_FALSE(r.passed("INTER"));
    CHECK(r.find("INTER")->detail == "grades (0,1) objects (A,A,A,I,I,I) labels (*,1,*,0)");
  }
}

TEST_CASE("symmetric structure") {
  CHECK(check_symmetric(fixtures::terminal(Pcm::three())).ok());
  for (const auto& n : fixtures::effectful_names()) CHECK(check_symmetric(fixtures::effectful_model(n)).ok());
  for (const auto& mu : fixtures::mutants()) {
    if (mu.breaks != "BRAID-NATURALITY") continue;
    CHECK_FALSE(check_symmetric(mu.model).passed("BRAID-NATURALITY"));
  }
  auto nb = fixtures::level_model(Pcm::parse(fixtures::nat2));
  nb.braiding.reset();
  CHECK(code_of([&] { check_symmetric(nb); }) == Errc::NoBraiding);
}

TEST_CASE("monoidal and premonoidal views") {
  auto m = fixtures::effectful_model("t2");
  CHECK(check_monoidal(monoidal_view(m, m.zero())).ok());
  CHECK(code_of([&] { monoidal_view(m, one_of(m)); }) == Errc::NotIdempotent);
  CHECK(check_premonoidal(premonoidal_view(m, one_of(m))).ok());

  auto chain = fixtures::level_model(Pcm::parse(fixtures::chain2));
  CHECK(check_monoidal(monoidal_view(chain, chain.pcm.index_of(chain.pcm.named("1")))).ok());
}

TEST_CASE("graded functors") {
  auto m = share(fixtures::effectful_model("flag"));
  CHECK(check_graded_functor(identity_functor(m)).ok());

  auto t = share(fixtures::terminal(Pcm::two()));
  GradedFunctorData bang{m, t, {0, 0}, {0, 1}, {}};
  for (std::size_t e = 0; e < 2; ++e) {
    bang.labels.emplace_back();
    for (const auto& h : m->hom[e]) bang.labels.back().emplace_back(h.size(), 0);
  }
  CHECK(check_graded_functor(bang).ok());

  auto broken = identity_functor(m);
  const std::size_t one = one_of(*m), A = 1;
  broken.labels[one][m->pair(A, A)][1] = 0;
  Report r = check_graded_functor(broken);
  CHECK_FALSE(r.passed("FUNCTOR-TENSOR"));
  CHECK(r.passed("FUNCTOR-PCM-HOM"));
}

TEST_CASE("pullback") {
  auto m = fixtures::effectful_model("m3");
  CHECK(same_tables(pullback(m, PcmHomomorphism::identity(m.pcm)), m));

  for (const auto& t : fixtures::coreflection_fixtures()) {
    auto pulled = pullback(*t.model, PcmHomomorphism::top_preserving(t.model->pcm));
    CHECK(same_tables(pulled, *coreflect(t.model).model));
    CHECK(check_axioms(pulled).ok());
  }

  // Truncated naturals stand in for (N,+); 1 |-> 1.
  auto lvl = fixtures::level_model(Pcm::parse(fixtures::nat2));
  Pcm two = Pcm::two();
  auto phi = PcmHomomorphism::from_table(two, lvl.pcm, {lvl.pcm.named("0"), lvl.pcm.named("1")});
  auto p = pullback(lvl, phi);
  CHECK(check_axioms(p).ok());
  CHECK(p.count(one_of(p), 0, 0) == 2);

  auto bad = PcmHomomorphism::from_table(two, lvl.pcm, {lvl.pcm.named("1"), lvl.pcm.named("1")});
  CHECK(code_of([&] { pullback(lvl, bad); }) == Errc::InvalidHom);
  CHECK(code_of([&] { pullback(lvl, PcmHomomorphism::identity(two)); }) == Errc::InvalidHom);
}

TEST_CASE("effectful round trip") {
  for (const auto& n : fixtures::effectful_names()) {
    INFO(n);
    auto e = fixtures::effectful(n);
    auto m = from_effectful(e);
    CHECK(check_axioms(m).ok());
    auto back = to_effectful(m);
    CHECK(back == e);
    CHECK(check_effectful(back).ok());
    CHECK(same_tables(from_effectful(back), m));
  }
  auto t = fixtures::terminal(Pcm::two());
  CHECK(same_tables(from_effectful(to_effectful(t)), t));

  // The mixed tensor is rebuilt from whiskerings.
  auto m = fixtures::effectful_model("m3");
  const std::size_t one = one_of(m), A = 1;
  CHECK(m.labels(one, A, A)[m.tensored(m.zero(), one, A, A, A, A, 0, 1)] == "c0");

  CHECK(code_of([] { to_effectful(fixtures::terminal(Pcm::three())); }) == Errc::PcmMismatch);
  for (const auto& mu : fixtures::mutants())
    if (!check_axioms(mu.model).ok()) CHECK(code_of([&] { to_effectful(mu.model); }) == Errc::AxiomFailure);
}

TEST_CASE("the image of eta must be central") {
  auto e = fixtures::effectful("m3");
  // c0 is a left zero, so it does not commute with c1 and cannot be pure.
  e.eta[1 * 2 + 1] = {1};
  Report r = check_effectful(e);
  CHECK_FALSE(r.passed("ETA-CENTRAL"));
  CHECK(code_of([&] { from_effectful(e); }) == Errc::AxiomFailure);

  auto flag = fixtures::effectful("flag");
  flag.eta[1 * 2 + 1] = {1};
  CHECK(check_effectful(flag).passed("ETA-CENTRAL"));
}

TEST_CASE("coreflection") {
  auto two_model = share(fixtures::effectful_model("t2"));
  auto c2 = coreflect(two_model);
  CHECK(same_tables(*c2.model, *two_model));

  auto fx = fixtures::coreflection_fixtures();
  for (const auto& t : fx) {
    INFO(t.name);
    auto c = coreflect(t.model);
    CHECK(check_axioms(*c.model).ok());
    CHECK(check_graded_functor(c.counit).ok());
    CHECK(check_symmetric(*c.model).ok());
    CHECK(check_couniversal(t.model, c.counit).ok());
  }

  // Over three the layers kept are grades 0 and 2.
  const auto& three = *fx[0].model;
  auto c = coreflect(fx[0].model);
  CHECK(c.model->hom[c.model->zero()] == three.hom[0]);
  CHECK(c.model->hom[one_of(*c.model)] == three.hom[2]);
  CHECK(c.counit.grades[one_of(*c.model)] == 2);

  CHECK(code_of([] { coreflect(share(fixtures::or_model(Pcm::rw({"x"})))); }) == Errc::NoTop);
}

TEST_CASE("couniversal property on a two-object model") {
  auto target = fixtures::coreflection_fixtures()[0].model;
  auto source = share(fixtures::effectful_model("flag"));
  // Forget the flag: every effectful morphism goes to 0 at grade 2.
  GradedFunctorData m{source, target, {0, 1}, {0, 2}, {}};
  for (std::size_t e = 0; e < 2; ++e) {
    m.labels.emplace_back();
    for (const auto& h : source->hom[e]) m.labels.back().emplace_back(h.size(), 0);
  }
  CHECK(check_graded_functor(m).ok());
  Report r = check_couniversal(target, m);
  CHECK(r.ok());
  CHECK(r.find("CANDIDATES")->detail == "2 graded functors, 1 factor M");

  auto broken = m;
  broken.grades = {0, 1};
  Report b = check_couniversal(target, broken);
  CHECK_FALSE(b.passed("PRECONDITION"));

  auto big = fixtures::coreflection_fixtures()[1];
  auto c = coreflect(big.model);
  CHECK(code_of([&] { check_couniversal(big.model, c.counit, 2); }) == Errc::EnumerationTooLarge);
  CHECK(code_of([&] { check_couniversal(big.model, c.counit, 3, 3); }) == Errc::EnumerationTooLarge);
}

TEST_CASE("pullback preserves the axioms") {
  Pcm ps = Pcm::powerset({"a", "b"});
  for (const auto& n : fixtures::effectful_names()) {
    auto m = fixtures::effectful_model(n);
    for (const auto& mask : std::vector<std::vector<int>>{{0, 1, 0, 1}, {0, 0, 1, 1}}) {
      std::vector<Grade> image;
      for (int b : mask) image.push_back(m.pcm.element(static_cast<std::size_t>(b)));
      auto p = pullback(m, PcmHomomorphism::from_table(ps, m.pcm, image));
      CHECK(check_axioms(p).ok());
      CHECK(check_interchange_lemma(p).ok());
    }
  }
}

TEST_CASE("truncation requires length-preserving generators") {
  Pcm two = Pcm::two();
  auto sig = make_signature(two, {"A"}, {{"m", {"A", "A"}, {"A"}, two.zero()}});
  CHECK(code_of([&] { fixtures::truncation(sig, 2, 2); }) == Errc::MalformedSpec);
  auto nsig = make_signature(Pcm::nat_plus(), {"A"}, {});
  CHECK(code_of([&] { fixtures::truncation(nsig, 1, 1); }) == Errc::InfiniteCarrier);
}
