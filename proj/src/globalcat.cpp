#include "gmc/globalcat.hpp"

#include <map>
#include <sstream>

#include "text.hpp"

namespace gmc {

GlobalMorphism tag(const FreeMorphism& m) { return GlobalMorphism{m.grade, m}; }

GlobalMorphism global_identity(const SigPtr& sig, const Word& w) {
  return tag(identity(sig, w, sig->pcm().zero()));
}

UpperBoundingOp UpperBoundingOp::join(const Pcm& p) {
  return UpperBoundingOp{"join", [p](const Grade& a, const Grade& b) { return p.join(a, b); }};
}

UpperBoundingOp UpperBoundingOp::plus(const Pcm& p) {
  if (!p.total()) throw Error(Errc::NotTotal, "addition of " + p.descriptor() + " is partial");
  return UpperBoundingOp{"plus", [p](const Grade& a, const Grade& b) { return p.add(a, b); }};
}

UpperBoundingOp UpperBoundingOp::sum(const Pcm& p) {
  if (p.kind() != PcmKind::nat_plus && p.kind() != PcmKind::nat_max)
    throw Error(Errc::OpInvalid, "sum is only defined on natural-number grades");
  return UpperBoundingOp{"sum", [p](const Grade& a, const Grade& b) -> std::optional<Grade> {
                           return p.nat(a.n + b.n);
                         }};
}

UpperBoundingOp UpperBoundingOp::table(const Pcm& p, std::vector<std::tuple<Grade, Grade, Grade>> entries) {
  auto t = std::make_shared<std::map<std::pair<Grade, Grade>, Grade>>();
  for (auto& [a, b, c] : entries) {
    if (!p.owns(a) || !p.owns(b) || !p.owns(c)) throw Error(Errc::OwnerMismatch, "table entry outside the PCM");
    (*t)[{a, b}] = c;
  }
  return UpperBoundingOp{"table", [t](const Grade& a, const Grade& b) -> std::optional<Grade> {
                           auto it = t->find({a, b});
                           if (it == t->end()) return std::nullopt;
                           return it->second;
                         }};
}

UpperBoundingOp UpperBoundingOp::parse_table(const Pcm& p, std::string_view text) {
  std::vector<std::tuple<Grade, Grade, Grade>> entries;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    auto body = text::trim(line);
    if (body.empty()) continue;
    auto arrow = body.find("->");
    if (arrow == std::string_view::npos)
      throw Error(Errc::ParseError, "line " + std::to_string(lineno) + ": expected '<a> <b> -> <c>'");
    auto lhs = text::split_top(text::trim(body.substr(0, arrow)), ' ');
    std::vector<std::string_view> args;
    for (auto a : lhs)
      if (!text::trim(a).empty()) args.push_back(a);
    if (args.size() != 2)
      throw Error(Errc::ParseError, "line " + std::to_string(lineno) + ": expected two grades before '->'");
    entries.emplace_back(p.parse_grade(args[0]), p.parse_grade(args[1]), p.parse_grade(body.substr(arrow + 2)));
  }
  return table(p, std::move(entries));
}

namespace {

template <std::size_t Arity, class F>
void each_tuple(const Pcm& p, std::size_t budget, std::uint64_t seed, F&& f) {
  const auto base = p.probe();
  if constexpr (Arity == 1) {
    for (const auto& a : base) f(a, a, a);
  } else if constexpr (Arity == 2) {
    for (const auto& a : base)
      for (const auto& b : base) f(a, b, b);
  } else {
    for (const auto& a : base)
      for (const auto& b : base)
        for (const auto& c : base) f(a, b, c);
  }
  if (p.finite()) return;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < budget; ++i) {
    Grade a = p.sample(rng), b = p.sample(rng), c = p.sample(rng);
    f(a, b, c);
  }
}

}  // namespace

Report check_upper_bounding(const Pcm& p, const UpperBoundingOp& op, std::size_t budget, std::uint64_t seed) {
  LawTally total("OP-TOTAL"), assoc("OP-ASSOCIATIVITY"), unit("OP-UNIT"), left("OP-UPPER-BOUND-LEFT"),
      right("OP-UPPER-BOUND-RIGHT");
  bool idempotent = true;
  auto show2 = [&](const Grade& a, const Grade& b) { return "(" + p.show(a) + "," + p.show(b) + ")"; };
  const Grade z = p.zero();
  each_tuple<1>(p, budget, seed, [&](const Grade& a, const Grade&, const Grade&) {
    unit.count();
    auto l = op.apply(a, z);
    auto r = op.apply(z, a);
    if (!l || !r || *l != a || *r != a) unit.failure("(" + p.show(a) + ")");
    auto aa = op.apply(a, a);
    if (!aa || *aa != a) idempotent = false;
  });
  each_tuple<2>(p, budget, seed + 1, [&](const Grade& a, const Grade& b, const Grade&) {
    total.count();
    auto ab = op.apply(a, b);
    if (!ab) {
      total.failure(show2(a, b));
      return;
    }
    left.count();
    right.count();
    if (!p.leq(a, *ab)) left.failure(show2(a, b) + " gives " + p.show(*ab));
    if (!p.leq(b, *ab)) right.failure(show2(a, b) + " gives " + p.show(*ab));
  });
  each_tuple<3>(p, budget, seed + 2, [&](const Grade& a, const Grade& b, const Grade& c) {
    auto ab = op.apply(a, b);
    auto bc = op.apply(b, c);
    if (!ab || !bc) return;
    assoc.count();
    auto l = op.apply(*ab, c);
    auto r = op.apply(a, *bc);
    if (!l || !r || *l != *r) assoc.failure("(" + p.show(a) + "," + p.show(b) + "," + p.show(c) + ")");
  });
  Report r;
  total.into(r);
  assoc.into(r);
  unit.into(r);
  left.into(r);
  right.into(r);
  r.note("OP-IDEMPOTENT", idempotent ? "yes" : "no");
  return r;
}

GlobalMorphism global_compose(const GlobalMorphism& x, const GlobalMorphism& y, const UpperBoundingOp& op) {
  const Pcm& p = x.body.sig->pcm();
  if (x.body.cod != y.body.dom)
    throw Error(Errc::TypeMismatch, "codomain " + show_word(x.body.cod) + " does not match domain " +
                                        show_word(y.body.dom));
  auto g = op.apply(x.grade, y.grade);
  if (!g) throw Error(Errc::OpInvalid, op.name + " is undefined at (" + p.show(x.grade) + "," + p.show(y.grade) + ")");
  if (!p.leq(x.grade, *g) || !p.leq(y.grade, *g))
    throw Error(Errc::OpInvalid, op.name + " result " + p.show(*g) + " is not an upper bound");
  return GlobalMorphism{*g, compose(regrade(x.body, *g), regrade(y.body, *g))};
}

Grade stabilization_grade(const GlobalMorphism& x, const GlobalMorphism& y) {
  const Signature& sig = *x.body.sig;
  const Pcm& p = sig.pcm();
  if (auto t = p.top()) return *t;
  if (p.finite()) throw Error(Errc::NotDirected, p.descriptor() + " has no common upper bound for all grades");
  std::vector<Grade> gs;
  for (const auto* m : {&x.body, &y.body})
    for (const auto& s : m->slices) gs.push_back(sig.generator(s.gen).grade);
  Grade c = x.grade;
  auto fold = [&](const Grade& g) {
    auto j = p.join(c, g);
    if (!j) throw Error(Errc::NotDirected, "no join of " + p.show(c) + " and " + p.show(g));
    c = *j;
  };
  fold(y.grade);
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t j = i + 1; j < gs.size(); ++j)
      if (auto s = p.add(gs[i], gs[j])) fold(*s);
  return c;
}

bool quotient_equal(const GlobalMorphism& x, const GlobalMorphism& y) {
  if (x.body.sig != y.body.sig) throw Error(Errc::TypeMismatch, "morphisms come from different signatures");
  if (x.body.dom != y.body.dom || x.body.cod != y.body.cod) return false;
  return equal_at(x.body, y.body, stabilization_grade(x, y));
}

FreeMorphism to_top(const GlobalMorphism& x) {
  auto t = x.body.sig->pcm().top();
  if (!t) throw Error(Errc::NoTop, "the PCM has no top element");
  return regrade(x.body, *t);
}

GlobalMorphism from_top(const FreeMorphism& m) {
  auto t = m.sig->pcm().top();
  if (!t) throw Error(Errc::NoTop, "the PCM has no top element");
  if (m.grade != *t) throw Error(Errc::GradeMismatch, "expected a morphism at the top grade");
  return tag(m);
}

GlobalMorphism global_tensor(const GlobalMorphism& x, const GlobalMorphism& y) {
  const Pcm& p = x.body.sig->pcm();
  if (!p.total()) throw Error(Errc::NotTotal, p.descriptor() + " is not total");
  return tag(tensor(x.body, y.body));
}

}  // namespace gmc
