#include "gmc/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "gmc/cli.hpp"
#include "gmc/convolution.hpp"
#include "gmc/fixtures.hpp"
#include "gmc/globalcat.hpp"
#include "gmc/testkit.hpp"

namespace gmc::acceptance {

namespace {

// Pinned thresholds.
constexpr std::size_t kSampledTriples = 10000;
constexpr std::size_t kAxiomInstances = 1000;
constexpr std::size_t kOraclePairs = 500;
constexpr std::size_t kInterchangePairs = 500;
constexpr std::size_t kGlobalTriples = 500;
constexpr std::size_t kGoldenCases = 12;
constexpr std::size_t kConvolutionMax = 3;
constexpr std::size_t kRandomTriplesOverThree = 2000;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failures; the first few are kept for the detail line.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++count_;
    if (ok) return;
    ++failures_;
    if (first_.empty()) first_ = what;
  }
  void fail(const std::string& what) { check(false, what); }
  std::size_t count() const { return count_; }
  std::size_t failures() const { return failures_; }
  bool ok() const { return failures_ == 0; }
  Outcome outcome(std::string summary) const {
    if (!ok()) summary += "; first failure: " + first_;
    return {ok(), std::move(summary)};
  }

 private:
  std::size_t count_ = 0, failures_ = 0;
  std::string first_;
};

std::string n_of(std::size_t n, const std::string& what) { return std::to_string(n) + " " + what; }

// ---------------------------------------------------------------- 1

Outcome pcm_laws(std::uint64_t seed) {
  Tally t;
  std::size_t exhaustive = 0;
  for (const char* d : {"singleton", "two", "three", "powerset a", "powerset a b", "powerset a b c", "powerset a b c d",
                        "rw x", "rw x y", "product (two) (three)", fixtures::chain2,
                        "semilattice 0 a b 1 : 0<a 0<b a<1 b<1"}) {
    Report r = check_pcm_laws(Pcm::parse(d));
    t.check(r.ok(), std::string(d) + " " + r.render());
    ++exhaustive;
  }
  std::size_t least = kSampledTriples * 10;
  for (const char* d : {"interval 1/1", "nat_plus", "nat_max"}) {
    Report r = check_pcm_laws(Pcm::parse(d), kSampledTriples, seed);
    t.check(r.ok(), std::string(d) + " " + r.render());
    for (const auto& c : r.checks()) {
      least = std::min(least, c.instances);
      t.check(c.instances >= kSampledTriples, std::string(d) + " " + c.name + " ran " + std::to_string(c.instances));
    }
  }
  return t.outcome(n_of(exhaustive, "finite PCMs exhaustive") + ", interval/nat_plus/nat_max sampled (>= " +
                   std::to_string(least) + " instances per law)");
}

// ---------------------------------------------------------------- 2

Outcome classification(std::uint64_t seed) {
  Tally t;
  for (const char* d : {"powerset a", "powerset a b", "powerset a b c", "powerset a b c d"}) {
    Report r = check_separation(Pcm::parse(d));
    t.check(r.ok(), std::string(d) + " not cancellative");
  }
  std::size_t effect = 0;
  std::vector<std::string> names = fixtures::finite_pcms();
  names.push_back("interval 1/1");
  for (const auto& d : names) {
    Pcm p = Pcm::parse(d);
    bool is_effect = false;
    try {
      is_effect = check_effect_algebra(p, kSampledTriples, seed).ok();
    } catch (const Error&) {
    }
    if (!is_effect) continue;
    ++effect;
    t.check(check_separation(p, kSampledTriples, seed).ok(), d + " is an effect algebra but not cancellative");
  }
  for (const char* d : {"two", "powerset a b", "interval 1/1", fixtures::halves}) {
    bool is_effect = check_effect_algebra(Pcm::parse(d), kSampledTriples, seed).ok();
    t.check(is_effect, std::string(d) + " should be an effect algebra");
  }
  Report nm = check_separation(Pcm::nat_max(), kSampledTriples, seed);
  const Check* c = nm.find("CANCELLATIVITY");
  t.check(c && !c->pass && !c->detail.empty(), "nat_max should fail cancellativity with a witness");
  return t.outcome("powersets cancellative, " + n_of(effect, "effect-algebra fixtures") +
                   " all cancellative, nat_max witness " + (c ? c->detail : "?"));
}

// ---------------------------------------------------------------- 3

struct FreeFixture {
  Pcm p;
  SigPtr sig;
};

std::vector<FreeFixture> free_fixtures() {
  std::vector<FreeFixture> out;
  Pcm two = Pcm::two(), three = Pcm::three(), pw = Pcm::powerset({"a", "b"}), nat = Pcm::nat_plus();
  out.push_back({two, testkit::shaped_signature(two, two.elements())});
  out.push_back({three, testkit::shaped_signature(three, three.elements())});
  out.push_back({pw, testkit::shaped_signature(pw, {pw.zero(), pw.subset({"a"}), pw.subset({"b"})})});
  out.push_back({nat, testkit::shaped_signature(nat, {nat.zero(), nat.nat(1), nat.nat(2)})});
  return out;
}

Outcome free_axioms(std::uint64_t seed) {
  Tally t;
  std::mt19937_64 rng(seed);
  std::vector<std::string> per;
  for (const auto& [p, sig] : free_fixtures()) {
    auto word = [&] { return testkit::random_word(*sig, 2, rng); };
    // Canonical forms search whole exchange classes, so instances stay at a
    // handful of slices.
    std::size_t len = 2;
    auto morph = [&](const Grade& g, const Word& dom) { return testkit::random_morphism(sig, g, dom, len, rng); };
    auto orth_pair = [&] {
      for (;;) {
        Grade a = p.sample(rng), b = p.sample(rng);
        if (p.orthogonal(a, b)) return std::pair{a, b};
      }
    };
    const std::string pd = p.descriptor();
    std::size_t counts[5] = {0, 0, 0, 0, 0};

    for (std::size_t i = 0; i < kAxiomInstances; ++i, ++counts[0]) {
      auto m = morph(p.sample(rng), word());
      auto k = morph(m.grade, m.cod);
      Grade b = testkit::random_above(p, m.grade, rng), c = testkit::random_above(p, b, rng);
      bool ok = equal_at(regrade(regrade(m, b), c), regrade(m, c), c) && equal_at(regrade(m, m.grade), m, m.grade) &&
                equal_at(regrade(compose(m, k), b), compose(regrade(m, b), regrade(k, b)), b);
      t.check(ok, pd + " REG-ACT on " + show_slices(m));

    }
    for (std::size_t i = 0; i < kAxiomInstances; ++i, ++counts[1]) {
      for (;;) {
        auto [a, b] = orth_pair();
        Grade a2 = testkit::random_above(p, a, rng), b2 = testkit::random_above(p, b, rng);
        auto s = p.add(a2, b2);
        if (!s) continue;
        auto f = morph(a, word()), g = morph(b, word());
        t.check(equal_at(tensor(regrade(f, a2), regrade(g, b2)), regrade(tensor(f, g), *s), *s), pd + " REG-TENSOR");
        break;
      }
    }
    for (std::size_t i = 0; i < kAxiomInstances; ++i, ++counts[2]) {
      for (;;) {
        Grade a = p.sample(rng), b = p.sample(rng), c = p.sample(rng);
        auto ab = p.add(a, b);
        if (!ab || !p.add(*ab, c)) continue;
        auto f = morph(a, word()), g = morph(b, word()), h = morph(c, word());
        auto unit = identity(sig, {}, p.zero());
        const Grade all = *p.add(*ab, c);
        bool ok = equal_at(tensor(tensor(f, g), h), tensor(f, tensor(g, h)), all) &&
                  equal_at(tensor(f, unit), f, a) && equal_at(tensor(unit, f), f, a);
        t.check(ok, pd + " TENSOR-UNIT-ASSOC");
        break;
      }
    }
    for (std::size_t i = 0; i < kAxiomInstances; ++i, ++counts[3]) {
      Word x = word(), y = word(), xy = x;
      xy.insert(xy.end(), y.begin(), y.end());
      Grade c = p.sample(rng);
      bool ok = equal_at(tensor(identity(sig, x, p.zero()), identity(sig, y, p.zero())), identity(sig, xy, p.zero()),
                         p.zero()) &&
                equal_at(tensor(identity(sig, x, c), identity(sig, y, p.zero())), identity(sig, xy, c), c);
      t.check(ok, pd + " TENSOR-ID on " + show_word(xy));
    }
    for (std::size_t i = 0; i < kAxiomInstances; ++i, ++counts[4]) {
      auto [a, b] = orth_pair();
      len = 2;
      auto f = morph(a, word()), h = morph(b, word());
      len = 1;
      auto g = morph(a, f.cod), k = morph(b, h.cod);
      const Grade s = *p.add(a, b);
      t.check(equal_at(tensor(compose(f, g), compose(h, k)), compose(tensor(f, h), tensor(g, k)), s), pd + " INTER");
    }
    per.push_back(pd + " " + std::to_string(*std::min_element(std::begin(counts), std::end(counts))));
  }
  std::string detail = "per axiom (REG-ACT, REG-TENSOR, TENSOR-UNIT-ASSOC, TENSOR-ID, INTER): ";
  for (std::size_t i = 0; i < per.size(); ++i) detail += (i ? ", " : "") + per[i];
  return t.outcome(detail + "; " + n_of(t.failures(), "failures"));
}

// ---------------------------------------------------------------- 4

Outcome oracle_agreement(std::uint64_t seed) {
  Tally t;
  std::mt19937_64 rng(seed + 4);
  std::string detail;
  for (const auto& [p, sig] : free_fixtures()) {
    std::size_t equal = 0;
    for (std::size_t i = 0; i < kOraclePairs; ++i) {
      const Grade c = p.sample(rng);
      const std::size_t len = 1 + rng() % 6;
      auto m = testkit::random_morphism(sig, c, testkit::random_word(*sig, 3, rng), len, rng);
      auto n = i % 2 ? testkit::random_walk(m, 1 + rng() % 6, rng)
                     : testkit::random_geometric_walk(m, 1 + rng() % 6, rng);
      const bool fast = equal_at(m, n, c);
      bool slow = false;
      try {
        slow = equal_oracle(m, n, c);
      } catch (const Error& e) {
        t.fail(p.descriptor() + " oracle: " + e.what());
        continue;
      }
      if (fast) ++equal;
      t.check(fast == slow, p.descriptor() + " disagreement on " + show_slices(m) + " vs " + show_slices(n));
    }
    detail += (detail.empty() ? "" : ", ") + p.descriptor() + " " + std::to_string(kOraclePairs) + " pairs (" +
              std::to_string(equal) + " equal)";
  }
  return t.outcome(detail + "; " + n_of(t.failures(), "disagreements"));
}

// ---------------------------------------------------------------- 5

std::vector<std::pair<std::string, FiniteGradedModel>> valid_models() {
  std::vector<std::pair<std::string, FiniteGradedModel>> ms{
      {"terminal two", fixtures::terminal(Pcm::two())},
      {"terminal three", fixtures::terminal(Pcm::three())},
      {"or powerset", fixtures::or_model(Pcm::powerset({"a", "b"}))},
      {"or two", fixtures::or_model(Pcm::two())},
      {"level nat2", fixtures::level_model(Pcm::parse(fixtures::nat2))},
      {"level chain2", fixtures::level_model(Pcm::parse(fixtures::chain2))},
      {"truncation", fixtures::truncation(fixtures::truncation_signature(), 2, 2)}};
  for (const auto& n : fixtures::effectful_names()) ms.emplace_back(n, fixtures::effectful_model(n));
  for (const auto& c : fixtures::coreflection_fixtures()) ms.emplace_back(c.name, *c.model);
  return ms;
}

Outcome interchange(std::uint64_t seed) {
  Tally t;
  std::mt19937_64 rng(seed + 5);
  std::size_t pairs = 0;
  for (Pcm p : {Pcm::two(), Pcm::three(), Pcm::powerset({"a", "b"}), Pcm::nat_plus()}) {
    for (std::size_t i = 0; i < kInterchangePairs; ++i, ++pairs) {
      Grade a = p.kind() == PcmKind::nat_plus ? p.nat(1 + rng() % 3) : p.element(1 + rng() % (p.size() - 1));
      auto sig = testkit::shaped_signature(p, {p.zero(), a});
      auto x = testkit::random_word(*sig, 2, rng), y = testkit::random_word(*sig, 2, rng);
      auto f = testkit::random_morphism_graded(sig, p.zero(), p.zero(), x, 3, rng);
      auto g = testkit::random_morphism_graded(sig, a, a, y, 3, rng);
      const Grade z = p.zero();
      auto f_then = compose(regrade(tensor(f, identity(sig, g.dom, z)), a), tensor(identity(sig, f.cod, z), g));
      auto g_then = compose(tensor(identity(sig, f.dom, z), g), regrade(tensor(f, identity(sig, g.cod, z)), a));
      t.check(equal_at(f_then, g_then, a) && equal_at(f_then, tensor(f, g), a), p.descriptor() + " interchange");
    }
  }
  std::size_t models = 0;
  for (const auto& [name, m] : valid_models()) {
    Report r = check_interchange_lemma(m);
    t.check(r.ok(), name + " " + r.render());
    ++models;
  }
  return t.outcome(n_of(pairs, "random pairs") + ", " + n_of(models, "models exhaustive"));
}

// ---------------------------------------------------------------- 6

// Indices of effectful morphisms that fail to interchange with some other.
std::size_t non_central(const PremonoidalTables& p) {
  const std::size_t n = p.objects.size();
  const auto& O = p.objects;
  std::size_t count = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (Label f = 0; f < p.cat.count(n, x, y); ++f) {
        bool central = true;
        for (std::size_t x2 = 0; x2 < n && central; ++x2)
          for (std::size_t y2 = 0; y2 < n && central; ++y2)
            for (Label g = 0; g < p.cat.count(n, x2, y2) && central; ++g) {
              const Label fx2 = p.right[x2][x * n + y][f], yg = p.left[y][x2 * n + y2][g];
              const Label xg = p.left[x][x2 * n + y2][g], fy2 = p.right[y2][x * n + y][f];
              const Label l = p.cat.compose(n, O(x, x2), O(y, x2), O(y, y2), fx2, yg);
              const Label r = p.cat.compose(n, O(x, x2), O(x, y2), O(y, y2), xg, fy2);
              central = l == r;
            }
        if (!central) ++count;
      }
  return count;
}

Outcome effectful_round_trip() {
  Tally t;
  std::size_t models = 0, noncentral = 0;
  for (const auto& name : fixtures::effectful_names()) {
    const EffectfulData e = fixtures::effectful(name);
    Report re = check_effectful(e);
    t.check(re.ok(), name + " effectful laws " + re.render());
    FiniteGradedModel m = from_effectful(e);
    Report rm = check_axioms(m);
    t.check(rm.ok(), name + " graded laws " + rm.render());
    t.check(to_effectful(m) == e, name + " Eff -> graded -> Eff differs");
    t.check(same_tables(from_effectful(to_effectful(m)), m), name + " graded -> Eff -> graded differs");
    if (name == "m3") noncentral = non_central(e.effectful);
    ++models;
  }
  for (const auto& [name, m] : valid_models()) {
    if (m.pcm.kind() != PcmKind::two) continue;
    EffectfulData e = to_effectful(m);
    t.check(check_effectful(e).ok(), name + " translation fails the effectful laws");
    t.check(same_tables(from_effectful(e), m), name + " round trip differs");
    ++models;
  }
  t.check(noncentral > 0, "m3 should contain a non-central effectful morphism");
  return t.outcome(n_of(models, "models") + " round trip, m3 has " + n_of(noncentral, "non-central morphisms"));
}

// ---------------------------------------------------------------- 7

Outcome coreflection() {
  Tally t;
  std::string detail;
  for (const auto& fx : fixtures::coreflection_fixtures()) {
    auto c = coreflect(fx.model);
    Report f = check_graded_functor(c.counit);
    t.check(f.ok(), fx.name + " counit " + f.render());
    Report u = check_couniversal(fx.model, c.counit);
    t.check(u.ok(), fx.name + " couniversal " + u.render());
    const Check* k = u.find("CANDIDATES");
    detail += (detail.empty() ? "" : ", ") + fx.name + " [" + (k ? k->detail : "?") + "]";
  }
  // A functor from the flag model that forgets the flag.
  auto target = fixtures::coreflection_fixtures()[0].model;
  auto source = std::make_shared<const FiniteGradedModel>(fixtures::effectful_model("flag"));
  GradedFunctorData m{source, target, {0, 1}, {0, 2}, {}};
  for (std::size_t e = 0; e < 2; ++e) {
    m.labels.emplace_back();
    for (const auto& h : source->hom[e]) m.labels.back().emplace_back(h.size(), 0);
  }
  Report u = check_couniversal(target, m);
  t.check(u.ok(), "flag into three " + u.render());
  return t.outcome("counit and unique factorization: " + detail + ", flag into three [" +
                   (u.find("CANDIDATES") ? u.find("CANDIDATES")->detail : "?") + "]");
}

// ---------------------------------------------------------------- 8

Outcome global_categories(std::uint64_t seed) {
  Tally t;
  std::mt19937_64 rng(seed + 8);
  Pcm pw = Pcm::powerset({"a", "b"}), nm = Pcm::nat_max(), np = Pcm::nat_plus();
  struct Case {
    Pcm p;
    UpperBoundingOp op;
    SigPtr sig;
  };
  auto nat_sig = [](const Pcm& p) { return testkit::shaped_signature(p, {p.zero(), p.nat(1), p.nat(2)}, false); };
  std::vector<Case> cases{
      {pw, UpperBoundingOp::join(pw), testkit::shaped_signature(pw, {pw.zero(), pw.subset({"a"}), pw.subset({"b"})})},
      {nm, UpperBoundingOp::join(nm), nat_sig(nm)},
      {nm, UpperBoundingOp::sum(nm), nat_sig(nm)},
      {np, UpperBoundingOp::plus(np), nat_sig(np)}};
  std::size_t triples = 0;
  for (const auto& [p, op, sig] : cases) {
    for (std::size_t i = 0; i < kGlobalTriples; ++i, ++triples) {
      auto grade = [&] { return p.kind() == PcmKind::powerset ? p.sample(rng) : p.nat(rng() % 4); };
      auto x = tag(testkit::random_morphism(sig, grade(), testkit::random_word(*sig, 2, rng), 2, rng));
      auto y = tag(testkit::random_morphism(sig, grade(), x.body.cod, 2, rng));
      auto z = tag(testkit::random_morphism(sig, grade(), y.body.cod, 2, rng));
      auto l = global_compose(global_compose(x, y, op), z, op);
      auto r = global_compose(x, global_compose(y, z, op), op);
      t.check(l.grade == r.grade && quotient_equal(l, r), p.descriptor() + " " + op.name + " associativity");
      auto lu = global_compose(global_identity(sig, x.body.dom), x, op);
      auto ru = global_compose(x, global_identity(sig, x.body.cod), op);
      t.check(quotient_equal(lu, x) && quotient_equal(ru, x), p.descriptor() + " " + op.name + " unitality");
    }
  }
  // Same-grade composition under an idempotent op is the homogeneous one.
  const auto& pws = cases[0].sig;
  for (std::size_t i = 0; i < kGlobalTriples; ++i) {
    Grade g = pw.sample(rng);
    auto x = testkit::random_morphism(pws, g, {"A"}, 3, rng);
    auto y = testkit::random_morphism(pws, g, x.cod, 3, rng);
    auto gc = global_compose(tag(x), tag(y), UpperBoundingOp::join(pw));
    t.check(gc.grade == g && gc.body == compose(x, y), "idempotent op at " + pw.show(g));
  }
  // The top grade carries every global morphism.
  for (Pcm p : {Pcm::two(), Pcm::three(), pw}) {
    auto sig = testkit::shaped_signature(p, p.elements());
    const Grade top = *p.top();
    for (std::size_t i = 0; i < kGlobalTriples / 5; ++i) {
      auto x = tag(testkit::random_morphism(sig, p.sample(rng), {"A"}, 3, rng));
      t.check(quotient_equal(from_top(to_top(x)), x), p.descriptor() + " from_top after to_top");
      auto m = testkit::random_morphism(sig, top, {"A"}, 3, rng);
      t.check(equal_at(to_top(from_top(m)), m, top), p.descriptor() + " to_top after from_top");
    }
  }
  // Tensor interchange for the nat fixtures with their own addition.
  for (const auto& c : {cases[1], cases[3]}) {
    const auto& [p, op0, sig] = c;
    const UpperBoundingOp op = p.kind() == PcmKind::nat_plus ? UpperBoundingOp::plus(p) : UpperBoundingOp::join(p);
    for (std::size_t i = 0; i < kGlobalTriples / 5; ++i) {
      auto g = [&] { return p.nat(rng() % 3); };
      auto f = tag(testkit::random_morphism(sig, g(), {"A"}, 2, rng));
      auto h = tag(testkit::random_morphism(sig, g(), f.body.cod, 2, rng));
      auto k = tag(testkit::random_morphism(sig, g(), {"B"}, 2, rng));
      auto w = tag(testkit::random_morphism(sig, g(), k.body.cod, 2, rng));
      auto lhs = global_tensor(global_compose(f, h, op), global_compose(k, w, op));
      auto rhs = global_compose(global_tensor(f, k), global_tensor(h, w), op);
      t.check(quotient_equal(lhs, rhs), p.descriptor() + " tensor interchange");
    }
  }
  return t.outcome(n_of(triples, "associativity/unit triples over 4 (PCM, op) pairs") +
                   ", idempotent-op, top-grade and interchange checks; " + n_of(t.failures(), "failures"));
}

// ---------------------------------------------------------------- 9

Outcome convolution_suite(std::uint64_t seed) {
  Tally t;
  std::size_t pcms = 0;
  for (const auto& d : fixtures::finite_pcms()) {
    Pcm p = Pcm::parse(d);
    if (p.size() > 16) continue;
    Report r = check_promonoidal_laws(promonoidal_from_pcm(p));
    t.check(r.ok(), d + " " + r.render());
    ++pcms;
  }

  std::size_t units = 0, assoc = 0;
  for (const char* d : {"two", "three"}) {
    Pcm p = Pcm::parse(d);
    const auto all = all_copresheaves(p, kConvolutionMax);
    const auto j = unit_copresheaf(p);
    for (const auto& f : all) {
      Report r = check_convolution_coherence(f, j, j);
      t.check(r.ok(), std::string(d) + " unit " + r.render());
      ++units;
    }
    if (p.kind() == PcmKind::two) {
      for (const auto& f : all)
        for (const auto& g : all)
          for (const auto& h : all) {
            t.check(check_convolution_coherence(f, g, h).passed("ASSOCIATOR"), "associator over two");
            ++assoc;
          }
    } else {
      const auto small = all_copresheaves(p, 2);
      for (const auto& f : small)
        for (const auto& g : small)
          for (const auto& h : small) {
            t.check(check_convolution_coherence(f, g, h).passed("ASSOCIATOR"), "associator over three");
            ++assoc;
          }
      for (const auto& f : all) {
        t.check(check_convolution_coherence(f, f, f).passed("ASSOCIATOR"), "associator over three, diagonal");
        ++assoc;
      }
      std::mt19937_64 rng(seed + 9);
      std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
      for (std::size_t i = 0; i < kRandomTriplesOverThree; ++i, ++assoc)
        t.check(check_convolution_coherence(all[pick(rng)], all[pick(rng)], all[pick(rng)]).passed("ASSOCIATOR"),
                "associator over three, random");
    }
  }

  std::size_t models = 0;
  for (const auto& [name, m] : valid_models()) {
    auto p = graded_to_lax(m);
    Report r = check_lax_presentation(p);
    t.check(r.ok(), name + " checklist " + r.render());
    auto back = lax_to_graded(p);
    t.check(same_tables(back, m), name + " graded -> lax -> graded differs");
    t.check(graded_to_lax(back) == p, name + " lax -> graded -> lax differs");
    ++models;
  }
  std::size_t mutants = 0;
  for (const auto& mu : fixtures::lax_mutants()) {
    Report r = check_lax_presentation(mu.presentation);
    t.check(!r.passed(mu.breaks), mu.name + " should fail " + mu.breaks);
    ++mutants;
  }
  for (const auto& mu : fixtures::mutants()) {
    const bool axioms = check_axioms(mu.model).ok();
    t.check(axioms == check_lax_presentation(lax_tables(mu.model)).ok(), mu.name + " axioms and checklist disagree");
  }
  return t.outcome(n_of(pcms, "PCMs") + ", " + n_of(units, "unit") + " and " + n_of(assoc, "associator") +
                   " coherence checks, " + n_of(models, "model round trips") + ", " +
                   n_of(mutants, "checklist mutants caught"));
}

// ---------------------------------------------------------------- 10

std::vector<std::string> split_args(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false, any = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
      any = true;
    } else if (!quoted && (c == ' ' || c == '\t')) {
      if (any) out.push_back(cur);
      cur.clear();
      any = false;
    } else {
      cur += c;
      any = true;
    }
  }
  if (any) out.push_back(cur);
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome golden(const std::string& dir) {
  namespace fs = std::filesystem;
  Tally t;
  if (dir.empty() || !fs::is_directory(dir)) return {false, "no golden directory at '" + dir + "'"};
  std::vector<fs::path> cases;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".cmd") cases.push_back(e.path());
  std::sort(cases.begin(), cases.end());
  const fs::path here = fs::current_path();
  std::size_t demos = 0;
  fs::current_path(dir);
  for (const auto& c : cases) {
    std::string line;
    std::istringstream lines(slurp(c));
    while (std::getline(lines, line) && (line.empty() || line[0] == '#')) {
    }
    const auto args = split_args(line);
    std::string runs[2];
    for (auto& run : runs) {
      std::ostringstream out, err;
      const int code = cli::run(args, out, err);
      run = out.str() + "--- stderr\n" + err.str() + "--- exit " + std::to_string(code) + "\n";
    }
    const std::string name = c.stem().string();
    fs::path expected = c;
    expected.replace_extension(".expected");
    t.check(runs[0] == runs[1], name + " differs between runs");
    t.check(fs::exists(expected) && slurp(expected) == runs[0], name + " differs from its recording");
    if (name.rfind("noninterference", 0) == 0) ++demos;
  }
  fs::current_path(here);
  t.check(cases.size() >= kGoldenCases, "only " + n_of(cases.size(), "recorded cases"));
  t.check(demos >= 2, "missing non-interference demo cases");
  return t.outcome(n_of(cases.size(), "recorded invocations") + " (" + n_of(demos, "non-interference demos") +
                   ") byte-identical across two runs");
}

}  // namespace

std::vector<Result> run(const Options& opt, const std::function<void(const Result&)>& each) {
  struct Criterion {
    int id;
    const char* name;
    double limit;
    std::function<Outcome()> body;
  };
  const std::uint64_t seed = opt.seed;
  const std::vector<Criterion> all{
      {1, "pcm-laws", 30, [&] { return pcm_laws(seed); }},
      {2, "separation-classification", 0, [&] { return classification(seed); }},
      {3, "free-category-axioms", 60, [&] { return free_axioms(seed); }},
      {4, "oracle-agreement", 0, [&] { return oracle_agreement(seed); }},
      {5, "interchange-lemma", 0, [&] { return interchange(seed); }},
      {6, "effectful-round-trip", 0, [&] { return effectful_round_trip(); }},
      {7, "coreflection", 120, [&] { return coreflection(); }},
      {8, "global-categories", 0, [&] { return global_categories(seed); }},
      {9, "convolution", 120, [&] { return convolution_suite(seed); }},
      {10, "cli-golden", 0, [&] { return golden(opt.golden_dir); }},
  };
  std::vector<Result> out;
  for (const auto& c : all) {
    if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), c.id) == opt.only.end()) continue;
    Result r{c.id, c.name, false, "", 0, c.limit};
    const auto start = std::chrono::steady_clock::now();
    try {
      Outcome o = c.body();
      r.pass = o.pass;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit > 0 && r.seconds >= c.limit) {
      r.pass = false;
      r.detail += "; over the time limit";
    }
    if (each) each(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string render(const Result& r, bool timing) {
  std::string s = "CRITERION " + std::to_string(r.id) + " " + (r.pass ? "PASS" : "FAIL") + " " + r.name + ": " + r.detail;
  if (timing) {
    std::ostringstream t;
    t.setf(std::ios::fixed);
    t.precision(1);
    t << " (" << r.seconds << "s";
    if (r.limit > 0) t << " < " << r.limit << "s";
    t << ")";
    s += t.str();
  }
  return s;
}

}  // namespace gmc::acceptance
