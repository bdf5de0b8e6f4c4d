#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "gmc/cli.hpp"
#include "gmc/lang.hpp"
#include "gmc/testkit.hpp"

using namespace gmc;
using lang::DiagnosticError;

namespace {

lang::Diagnostic diagnose(auto&& f) {
  try {
    f();
  } catch (const DiagnosticError& e) {
    return e.diagnostic();
  }
  FAIL("no diagnostic raised");
  return {};
}

const char* kDevices =
    "pcm powerset db lock\n"
    "object Conn Mutex\n"
    "gen query : Conn -> Conn @ {db}\n"
    "gen acquire : Mutex -> Mutex @ {lock}\n"
    "term both = query * acquire\n";

const char* kTwo =
    "pcm two\n"
    "object A B\n"
    "gen f : A -> A @ 1\n"
    "gen g : B -> B @ 1\n"
    "gen p : A -> B @ 0\n";

struct Ran {
  int code;
  std::string out, err;
};

Ran invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("minimal documents parse") {
  auto doc = lang::parse("pcm three\nobject A\ngen f : A -> A @ 1\nterm t = (f@1)*(f@1)\n");
  REQUIRE(doc.terms.size() == 1);
  CHECK(doc.terms[0].term.kind == lang::Term::Kind::tensor);
  CHECK(doc.terms[0].term.args[0].kind == lang::Term::Kind::regrade);

  auto units = lang::parse("pcm two\nobject A\ngen s : I -> A @ 0\ngen e : A -> I @ 1\nterm t = s @ 1 ; e\n");
  auto m = lang::elaborate(units, "t");
  CHECK(m.dom.empty());
  CHECK(m.cod.empty());
  CHECK(units.sig->pcm().show(m.grade) == "1");
}

TEST_CASE("precedence: @ binds tighter than *, which binds tighter than ;") {
  auto doc = lang::parse(std::string(kTwo) + "term t = f * g ; f * g @ 1\n");
  const auto& t = doc.terms[0].term;
  REQUIRE(t.kind == lang::Term::Kind::compose);
  CHECK(t.args[0].kind == lang::Term::Kind::tensor);
  REQUIRE(t.args[1].kind == lang::Term::Kind::tensor);
  CHECK(t.args[1].args[1].kind == lang::Term::Kind::regrade);
}

TEST_CASE("syntax errors carry a span") {
  auto d = diagnose([] { lang::parse("pcm three\nobject A\ngen f : A -> A @ 1\nterm t = (f ; f\n"); });
  CHECK(d.code == "E-PARSE");
  CHECK(d.span.line == 4);
  CHECK(d.span.col > 0);
  CHECK(d.render("x.gmc").rfind("x.gmc:4:", 0) == 0);
  CHECK(diagnose([] { lang::parse("object A\n"); }).code == "E-PARSE");
  CHECK(diagnose([] { lang::parse("pcm three\nobject A\nterm t = id Z\n"); }).code == "E-NAME");
  CHECK(diagnose([] { lang::parse("pcm three\nobject A\nterm t = nope\n"); }).code == "E-NAME");
  CHECK(diagnose([] { lang::parse("pcm three\nobject A\ngen f : A -> A @ 7\n"); }).code == "E-PARSE");
}

TEST_CASE("disjoint footprints tensor; overlapping ones are rejected with both grades") {
  auto doc = lang::parse(kDevices);
  auto m = lang::elaborate(doc, "both");
  const Pcm& p = doc.sig->pcm();
  CHECK(m.grade == p.subset({"db", "lock"}));

  auto race = lang::parse(std::string(kTwo) + "term t = f * g\n");
  auto d = diagnose([&] { lang::elaborate(race, "t"); });
  CHECK(d.code == "E-ORTHO");
  CHECK(d.grades == std::vector<std::string>{"1", "1"});
  CHECK(d.message.find("1 + 1") != std::string::npos);
}

TEST_CASE("type and grade diagnostics") {
  auto doc = lang::parse(std::string(kTwo) +
                         "term wires = p ; p\n"
                         "term mixed = f ; p\n"
                         "term down = f @ 0\n"
                         "term fine = (f ; p @ 1)\n");
  CHECK(diagnose([&] { lang::elaborate(doc, "wires"); }).code == "E-TYPE");
  auto g = diagnose([&] { lang::elaborate(doc, "mixed"); });
  CHECK(g.code == "E-GRADE");
  CHECK(g.message.find("gcompose") != std::string::npos);
  CHECK(diagnose([&] { lang::elaborate(doc, "down"); }).code == "E-GRADE");
  CHECK(doc.sig->pcm().show(lang::elaborate(doc, "fine").grade) == "1");
}

TEST_CASE("printing round-trips through the parser") {
  const std::string src = std::string(kTwo) + "term a = (f * id B) ; (id A * g) @ 1\nterm b = p @ 1 ; id B @ 1\n";
  auto doc = lang::parse(src);
  const std::string once = lang::print(doc);
  const std::string twice = lang::print(lang::parse(once));
  CHECK(once == twice);
  auto again = lang::parse(once);
  for (const char* t : {"a", "b"})
    CHECK(show_slices(canonical_form(lang::elaborate(doc, t))) == show_slices(canonical_form(lang::elaborate(again, t))));
}

TEST_CASE("to_term denotes the original slice list") {
  std::mt19937_64 rng(31);
  for (Pcm p : {Pcm::two(), Pcm::three(), Pcm::powerset({"a", "b"})}) {
    auto sig = testkit::shaped_signature(p, p.elements());
    for (int i = 0; i < 200; ++i) {
      auto m = testkit::random_morphism(sig, p.sample(rng), testkit::random_word(*sig, 2, rng), 4, rng);
      lang::SourceDocument doc{sig, {{"t", {}, lang::to_term(m)}}};
      auto reparsed = lang::parse(lang::print(doc));
      auto back = lang::elaborate(reparsed, "t");
      CHECK(reparsed.sig->pcm().show(back.grade) == p.show(m.grade));
      CHECK(back.dom == m.dom);
      CHECK(back.cod == m.cod);
      CHECK(show_slices(back) == show_slices(m));
    }
  }
}

TEST_CASE("normalize is idempotent and preserves meaning") {
  auto doc = lang::parse(std::string(kTwo) + "term a = (id A * g) ; (p * id B) @ 1\nterm b = (f * id B) ; (id A * g)\n");
  auto n1 = lang::normalize(doc);
  CHECK(lang::print(lang::normalize(n1)) == lang::print(n1));
  for (const char* t : {"a", "b"}) {
    auto before = lang::elaborate(doc, t), after = lang::elaborate(n1, t);
    CHECK(equal_at(before, after, before.grade));
  }
}

TEST_CASE("cli exit codes") {
  auto three = invoke({"lawcheck-pcm", "--kind", "three"});
  CHECK(three.code == 0);
  std::size_t passes = 0;
  for (std::size_t at = three.out.find(" PASS"); at != std::string::npos; at = three.out.find(" PASS", at + 1)) ++passes;
  CHECK(passes == 5);

  CHECK(invoke({"lawcheck-pcm", "--kind", "nonsense"}).code == 2);
  CHECK(invoke({"lawcheck-pcm", "--kind", "table 0 a b c : a+a=b a+b=c b+b=c"}).code == 1);
  CHECK(invoke({"no-such-command"}).code == 2);
  CHECK(invoke({"check", "/nonexistent/file.gmc"}).code == 2);
  CHECK(invoke({}).code == 2);
}
