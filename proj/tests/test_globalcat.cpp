#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gmc/globalcat.hpp"
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

SigPtr nat_sig(const Pcm& p) {
  return make_signature(p, {"A", "B"},
                        {{"f", {"A"}, {"A"}, p.nat(2)},
                         {"g", {"A"}, {"A"}, p.nat(3)},
                         {"h", {"A"}, {"A"}, p.nat(1)},
                         {"k", {"B"}, {"B"}, p.nat(1)}});
}

}  // namespace

TEST_CASE("heterogeneous composition over nat_max with max and plus") {
  Pcm p = Pcm::nat_max();
  auto sig = nat_sig(p);
  auto f = tag(generator(sig, "f")), g = tag(generator(sig, "g"));
  auto mx = global_compose(f, g, UpperBoundingOp::join(p));
  CHECK(mx.grade == p.nat(3));
  auto pl = global_compose(f, g, UpperBoundingOp::sum(p));
  CHECK(pl.grade == p.nat(5));
  CHECK(pl.body.slices.size() == 2);
}

TEST_CASE("identities are units for global composition") {
  Pcm p = Pcm::nat_plus();
  auto sig = nat_sig(p);
  auto f = tag(generator(sig, "f"));
  auto id = global_identity(sig, {"A"});
  auto r = global_compose(id, f, UpperBoundingOp::plus(p));
  CHECK(r.grade == f.grade);
  CHECK(r.body == f.body);
}

TEST_CASE("global composition checks boundaries and the operation") {
  Pcm p = Pcm::nat_plus();
  auto sig = nat_sig(p);
  auto f = tag(generator(sig, "f")), k = tag(generator(sig, "k"));
  CHECK(code_of([&] { global_compose(f, k, UpperBoundingOp::join(p)); }) == Errc::TypeMismatch);
  UpperBoundingOp bad{"zero", [&](const Grade&, const Grade&) -> std::optional<Grade> { return p.zero(); }};
  CHECK(code_of([&] { global_compose(f, f, bad); }) == Errc::OpInvalid);
  CHECK(code_of([] { UpperBoundingOp::plus(Pcm::two()); }) == Errc::NotTotal);
  CHECK(code_of([] { UpperBoundingOp::sum(Pcm::three()); }) == Errc::OpInvalid);
}

TEST_CASE("upper-bounding operation checks") {
  Pcm np = Pcm::nat_plus();
  Report plus = check_upper_bounding(np, UpperBoundingOp::plus(np));
  CHECK(plus.ok());
  CHECK(plus.find("OP-IDEMPOTENT")->detail == "no");

  Pcm ps = Pcm::powerset({"a", "b", "c"});
  Report un = check_upper_bounding(ps, UpperBoundingOp::join(ps));
  CHECK(un.ok());
  CHECK(un.find("OP-IDEMPOTENT")->detail == "yes");

  Pcm nm = Pcm::nat_max();
  CHECK(check_upper_bounding(nm, UpperBoundingOp::sum(nm)).ok());
  CHECK(check_upper_bounding(nm, UpperBoundingOp::join(nm)).ok());

  Pcm two = Pcm::two();
  auto broken = UpperBoundingOp::parse_table(two, "0 0 -> 0\n0 1 -> 1\n1 0 -> 1\n1 1 -> 0\n");
  Report r = check_upper_bounding(two, broken);
  CHECK_FALSE(r.ok());
  CHECK_FALSE(r.passed("OP-UPPER-BOUND-LEFT"));
  CHECK(r.find("OP-UPPER-BOUND-LEFT")->detail == "(1,1) gives 0");

  auto partial = UpperBoundingOp::parse_table(two, "# only units\n0 0 -> 0\n0 1 -> 1\n1 0 -> 1\n");
  CHECK_FALSE(check_upper_bounding(two, partial).passed("OP-TOTAL"));
  CHECK(code_of([&] { UpperBoundingOp::parse_table(two, "0 1 1\n"); }) == Errc::ParseError);
}

TEST_CASE("quotient equality") {
  // Over two, the staircases stay apart even at the top grade.
  Pcm two = Pcm::two();
  auto sig2 = make_signature(two, {"A", "B"},
                             {{"f", {"A"}, {"A"}, two.element(1)}, {"g", {"B"}, {"B"}, two.element(1)}});
  auto one = two.element(1);
  auto s1 = from_slices(sig2, one, {"A", "B"}, {{{}, "f", {"B"}}, {{"A"}, "g", {}}});
  auto s2 = from_slices(sig2, one, {"A", "B"}, {{{"A"}, "g", {}}, {{}, "f", {"B"}}});
  CHECK_FALSE(quotient_equal(tag(s1), tag(s2)));
  CHECK(stabilization_grade(tag(s1), tag(s2)) == one);

  // Over nat_plus the stabilization grade is 2 and the exchange applies.
  Pcm np = Pcm::nat_plus();
  auto sign = make_signature(np, {"A", "B"},
                             {{"f", {"A"}, {"A"}, np.nat(1)}, {"g", {"B"}, {"B"}, np.nat(1)}});
  auto n1 = from_slices(sign, np.nat(1), {"A", "B"}, {{{}, "f", {"B"}}, {{"A"}, "g", {}}});
  auto n2 = from_slices(sign, np.nat(1), {"A", "B"}, {{{"A"}, "g", {}}, {{}, "f", {"B"}}});
  CHECK(stabilization_grade(tag(n1), tag(n2)) == np.nat(2));
  CHECK(quotient_equal(tag(n1), tag(n2)));
  CHECK(equal_oracle(n1, n2, np.nat(2)));

  // Generating pairs: <a,f> and <b, f regraded to b>.
  auto f = generator(sign, "f");
  CHECK(quotient_equal(tag(f), tag(regrade(f, np.nat(7)))));

  Pcm rw = Pcm::rw({"x"});
  auto sigr = make_signature(rw, {"A"}, {{"f", {"A"}, {"A"}, rw.rw_pair({"x"}, {})}});
  CHECK(code_of([&] { quotient_equal(tag(generator(sigr, "f")), tag(generator(sigr, "f"))); }) ==
        Errc::NotDirected);
}

TEST_CASE("top grade isomorphism") {
  Pcm p = Pcm::three();
  auto sig = testkit::shaped_signature(p, p.elements());
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    auto x = tag(testkit::random_morphism(sig, p.element(1), {"A"}, 4, rng));
    CHECK(quotient_equal(from_top(to_top(x)), x));
    auto y = tag(testkit::random_morphism(sig, p.element(1), x.body.cod, 3, rng));
    auto xy = global_compose(x, y, UpperBoundingOp::join(p));
    CHECK(equal_at(to_top(xy), compose(to_top(x), to_top(y)), *p.top()));
  }
  auto idA = global_identity(sig, {"A"});
  CHECK(to_top(idA).slices.empty());
  CHECK(code_of([&] { from_top(generator(sig, "a0")); }) == Errc::GradeMismatch);
  auto nsig = nat_sig(Pcm::nat_plus());
  CHECK(code_of([&] { to_top(tag(generator(nsig, "f"))); }) == Errc::NoTop);
}

TEST_CASE("global tensor") {
  Pcm p = Pcm::nat_plus();
  auto sig = nat_sig(p);
  auto f = tag(generator(sig, "f")), g = tag(generator(sig, "g"));
  CHECK(global_tensor(f, g).grade == p.nat(5));
  auto unit = global_tensor(f, global_identity(sig, {}));
  CHECK(quotient_equal(unit, f));
  Pcm two = Pcm::two();
  auto s2 = make_signature(two, {"A"}, {{"f", {"A"}, {"A"}, two.zero()}});
  CHECK(code_of([&] { global_tensor(tag(generator(s2, "f")), tag(generator(s2, "f"))); }) == Errc::NotTotal);

  // Interchange with op = +: (x;y) * (z;w) ~ (x*z);(y*w).
  auto h = tag(generator(sig, "h")), k = tag(generator(sig, "k"));
  auto op = UpperBoundingOp::plus(p);
  auto lhs = global_tensor(global_compose(f, h, op), global_compose(k, k, op));
  auto rhs = global_compose(global_tensor(f, k), global_tensor(h, k), op);
  CHECK(quotient_equal(lhs, rhs));
}

TEST_CASE("idempotent op agrees with homogeneous composition") {
  Pcm p = Pcm::powerset({"a", "b"});
  auto sig = testkit::shaped_signature(p, {p.zero(), p.subset({"a"}), p.subset({"b"})});
  std::mt19937_64 rng(9);
  auto op = UpperBoundingOp::join(p);
  for (int i = 0; i < 100; ++i) {
    auto g = p.sample(rng);
    auto x = testkit::random_morphism(sig, g, {"A"}, 3, rng);
    auto y = testkit::random_morphism(sig, g, x.cod, 3, rng);
    auto gc = global_compose(tag(x), tag(y), op);
    CHECK(gc.grade == g);
    CHECK(gc.body == compose(x, y));
  }
}

TEST_CASE("global composition is associative up to quotient") {
  for (Pcm p : {Pcm::nat_max(), Pcm::nat_plus()}) {
    auto sig = testkit::shaped_signature(p, {p.zero(), p.nat(1), p.nat(2)}, false);
    std::mt19937_64 rng(13);
    for (const auto& op : {UpperBoundingOp::join(p), UpperBoundingOp::sum(p)}) {
      for (int i = 0; i < 100; ++i) {
        auto x = tag(testkit::random_morphism(sig, p.nat(2), {"A"}, 2, rng));
        auto y = tag(testkit::random_morphism(sig, p.nat(2), x.body.cod, 2, rng));
        auto z = tag(testkit::random_morphism(sig, p.nat(2), y.body.cod, 2, rng));
        auto l = global_compose(global_compose(x, y, op), z, op);
        auto r = global_compose(x, global_compose(y, z, op), op);
        CHECK(l.grade == r.grade);
        CHECK(quotient_equal(l, r));
      }
    }
  }
}
