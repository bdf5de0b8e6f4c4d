#include "gmc/freecat.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_set>

namespace gmc {

std::string show_word(const Word& w) {
  if (w.empty()) return "I";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += w[i];
  }
  return out;
}

Signature::Signature(Pcm pcm, std::vector<std::string> objects, std::vector<GeneratorDecl> generators)
    : pcm_(std::move(pcm)), objects_(std::move(objects)), gens_(std::move(generators)) {
  std::set<std::string> seen;
  for (const auto& o : objects_) {
    if (o.empty() || o == "I" || !seen.insert(o).second)
      throw Error(Errc::MalformedSpec, "object generator '" + o + "' is reserved or duplicated");
  }
  std::set<std::string> gseen;
  for (const auto& g : gens_) {
    if (!gseen.insert(g.name).second) throw Error(Errc::MalformedSpec, "duplicate generator '" + g.name + "'");
    if (!pcm_.owns(g.grade)) throw Error(Errc::OwnerMismatch, "generator '" + g.name + "' has a foreign grade");
    for (const Word* w : {&g.dom, &g.cod})
      for (const auto& o : *w)
        if (!has_object(o))
          throw Error(Errc::MalformedSpec, "generator '" + g.name + "' uses undeclared object '" + o + "'");
  }
}

bool Signature::has_object(const std::string& name) const {
  return std::find(objects_.begin(), objects_.end(), name) != objects_.end();
}

const GeneratorDecl* Signature::find(const std::string& name) const {
  for (const auto& g : gens_)
    if (g.name == name) return &g;
  return nullptr;
}

const GeneratorDecl& Signature::generator(const std::string& name) const {
  const GeneratorDecl* g = find(name);
  if (!g) throw Error(Errc::UnknownGenerator, "no generator named '" + name + "'");
  return *g;
}

SigPtr make_signature(Pcm pcm, std::vector<std::string> objects, std::vector<GeneratorDecl> generators) {
  return std::make_shared<const Signature>(std::move(pcm), std::move(objects), std::move(generators));
}

// ---------------------------------------------------------------- positional form

namespace {

// A slice seen as "generator applied at wire offset pos".
struct Step {
  std::size_t pos;
  const GeneratorDecl* g;
  friend bool operator==(const Step& a, const Step& b) { return a.pos == b.pos && a.g == b.g; }
};

bool key_less(const Step& a, const Step& b) {
  if (a.pos != b.pos) return a.pos < b.pos;
  return a.g->name < b.g->name;
}

bool seq_less(const std::vector<Step>& a, const std::vector<Step>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), key_less);
}

std::vector<Step> to_steps(const Signature& sig, const std::vector<Slice>& slices) {
  std::vector<Step> out;
  out.reserve(slices.size());
  for (const auto& s : slices) out.push_back(Step{s.left.size(), &sig.generator(s.gen)});
  return out;
}

Word apply_step(const Word& w, const Step& s) {
  Word out(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(s.pos));
  out.insert(out.end(), s.g->cod.begin(), s.g->cod.end());
  out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(s.pos + s.g->dom.size()), w.end());
  return out;
}

std::vector<Slice> to_slices(const Word& dom, const std::vector<Step>& steps) {
  std::vector<Slice> out;
  Word cur = dom;
  for (const auto& s : steps) {
    Slice sl;
    sl.left.assign(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(s.pos));
    sl.gen = s.g->name;
    sl.right.assign(cur.begin() + static_cast<std::ptrdiff_t>(s.pos + s.g->dom.size()), cur.end());
    out.push_back(std::move(sl));
    cur = apply_step(cur, s);
  }
  return out;
}

struct Mover {
  const Pcm& pcm;
  const Grade& ambient;

  bool grades_commute(const GeneratorDecl* a, const GeneratorDecl* b) const {
    auto s = pcm.add(a->grade, b->grade);
    return s && pcm.leq(*s, ambient);
  }

  // Every exchange of two adjacent steps. There are two results exactly when
  // an effect (empty codomain) is followed by a state (empty domain) at the
  // same wire offset: the state may land on either side of the effect's input.
  std::vector<std::pair<Step, Step>> swaps(const Step& s1, const Step& s2) const {
    std::vector<std::pair<Step, Step>> out;
    const std::size_t d1 = s1.g->dom.size(), c1 = s1.g->cod.size();
    const std::size_t d2 = s2.g->dom.size(), c2 = s2.g->cod.size();
    const bool left = s2.pos + d2 <= s1.pos, right = s1.pos + c1 <= s2.pos;
    if ((!left && !right) || !grades_commute(s1.g, s2.g)) return out;
    if (left) out.emplace_back(Step{s2.pos, s2.g}, Step{s1.pos + c2 - d2, s1.g});
    if (right) {
      std::pair<Step, Step> r{Step{s2.pos + d1 - c1, s2.g}, Step{s1.pos, s1.g}};
      if (out.empty() || !(out[0].first == r.first && out[0].second == r.second)) out.push_back(r);
    }
    return out;
  }
};

void require_same_sig(const FreeMorphism& a, const FreeMorphism& b) {
  if (a.sig != b.sig) throw Error(Errc::TypeMismatch, "morphisms come from different signatures");
}

}  // namespace

// ---------------------------------------------------------------- constructors

FreeMorphism identity(const SigPtr& sig, const Word& w, const Grade& c) {
  if (!sig->pcm().owns(c)) throw Error(Errc::OwnerMismatch, "identity grade is foreign to the signature");
  for (const auto& o : w)
    if (!sig->has_object(o)) throw Error(Errc::TypeMismatch, "undeclared object '" + o + "'");
  return FreeMorphism{sig, c, w, w, {}};
}

FreeMorphism generator(const SigPtr& sig, const std::string& name) {
  const auto& g = sig->generator(name);
  return FreeMorphism{sig, g.grade, g.dom, g.cod, {Slice{{}, g.name, {}}}};
}

FreeMorphism from_slices(const SigPtr& sig, const Grade& c, const Word& dom, std::vector<Slice> slices) {
  const Pcm& pcm = sig->pcm();
  if (!pcm.owns(c)) throw Error(Errc::OwnerMismatch, "ambient grade is foreign to the signature");
  Word cur = dom;
  for (std::size_t i = 0; i < slices.size(); ++i) {
    const auto& s = slices[i];
    const auto& g = sig->generator(s.gen);
    Word expect = s.left;
    expect.insert(expect.end(), g.dom.begin(), g.dom.end());
    expect.insert(expect.end(), s.right.begin(), s.right.end());
    if (expect != cur)
      throw Error(Errc::TypeMismatch, "slice " + std::to_string(i + 1) + " expects " + show_word(expect) +
                                          " but receives " + show_word(cur));
    if (!pcm.leq(g.grade, c))
      throw Error(Errc::NotLeq, "generator " + g.name + "@" + pcm.show(g.grade) + " is not admissible at " +
                                    pcm.show(c));
    cur = s.left;
    cur.insert(cur.end(), g.cod.begin(), g.cod.end());
    cur.insert(cur.end(), s.right.begin(), s.right.end());
  }
  return FreeMorphism{sig, c, dom, cur, std::move(slices)};
}

FreeMorphism regrade(const FreeMorphism& m, const Grade& c) {
  const Pcm& pcm = m.sig->pcm();
  if (!pcm.leq(m.grade, c))
    throw Error(Errc::NotLeq, pcm.show(m.grade) + " is not below " + pcm.show(c));
  FreeMorphism out = m;
  out.grade = c;
  return out;
}

FreeMorphism compose(const FreeMorphism& m1, const FreeMorphism& m2) {
  require_same_sig(m1, m2);
  const Pcm& pcm = m1.sig->pcm();
  if (m1.cod != m2.dom)
    throw Error(Errc::TypeMismatch, "codomain " + show_word(m1.cod) + " does not match domain " + show_word(m2.dom));
  if (m1.grade != m2.grade)
    throw Error(Errc::GradeMismatch, "grades " + pcm.show(m1.grade) + " and " + pcm.show(m2.grade) +
                                         " differ; use global composition (gcompose) for mixed grades");
  FreeMorphism out{m1.sig, m1.grade, m1.dom, m2.cod, m1.slices};
  out.slices.insert(out.slices.end(), m2.slices.begin(), m2.slices.end());
  return out;
}

FreeMorphism tensor(const FreeMorphism& m1, const FreeMorphism& m2) {
  require_same_sig(m1, m2);
  const Pcm& pcm = m1.sig->pcm();
  auto sum = pcm.add(m1.grade, m2.grade);
  if (!sum)
    throw Error(Errc::NonOrthogonalGrades,
                "grades " + pcm.show(m1.grade) + " and " + pcm.show(m2.grade) + " are not orthogonal");
  FreeMorphism out;
  out.sig = m1.sig;
  out.grade = *sum;
  out.dom = m1.dom;
  out.dom.insert(out.dom.end(), m2.dom.begin(), m2.dom.end());
  out.cod = m1.cod;
  out.cod.insert(out.cod.end(), m2.cod.begin(), m2.cod.end());
  for (auto s : m1.slices) {
    s.right.insert(s.right.end(), m2.dom.begin(), m2.dom.end());
    out.slices.push_back(std::move(s));
  }
  for (auto s : m2.slices) {
    s.left.insert(s.left.begin(), m1.cod.begin(), m1.cod.end());
    out.slices.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------- normal forms

namespace {

std::string state_key(const std::vector<Step>& s) {
  std::string k;
  k.reserve(s.size() * (sizeof(std::size_t) + sizeof(void*)));
  for (const auto& st : s) {
    k.append(reinterpret_cast<const char*>(&st.pos), sizeof st.pos);
    k.append(reinterpret_cast<const char*>(&st.g), sizeof st.g);
  }
  return k;
}

// Every list obtained by moving rest[j] to the front through successive
// exchanges with its predecessors. Ambiguous exchanges branch.
std::vector<std::vector<Step>> bubble(const Mover& mv, const std::vector<Step>& rest, std::size_t j) {
  std::vector<std::vector<Step>> cur{rest};
  for (std::size_t k = j; k > 0 && !cur.empty(); --k) {
    std::vector<std::vector<Step>> next;
    for (const auto& list : cur)
      for (const auto& r : mv.swaps(list[k - 1], list[k])) {
        auto moved = list;
        moved[k - 1] = r.first;
        moved[k] = r.second;
        next.push_back(std::move(moved));
      }
    cur = std::move(next);
  }
  return cur;
}

std::vector<Step> greedy(const Mover& mv, const std::vector<Step>& steps) {
  if (steps.empty()) return {};
  std::vector<std::vector<Step>> best_moves;
  std::unordered_set<std::string> seen;
  for (std::size_t j = 0; j < steps.size(); ++j) {
    for (auto& moved : bubble(mv, steps, j)) {
      if (!best_moves.empty() && key_less(best_moves[0][0], moved[0])) continue;
      if (!best_moves.empty() && key_less(moved[0], best_moves[0][0])) {
        best_moves.clear();
        seen.clear();
      }
      if (seen.insert(state_key(moved)).second) best_moves.push_back(std::move(moved));
    }
  }
  // Ties on the key come from slices with empty wire intervals or from
  // ambiguous exchanges; each tied choice is completed and the least full
  // sequence wins.
  std::optional<std::vector<Step>> best;
  for (const auto& moved : best_moves) {
    std::vector<Step> tail(moved.begin() + 1, moved.end());
    std::vector<Step> seq{moved[0]};
    auto rest = greedy(mv, tail);
    seq.insert(seq.end(), rest.begin(), rest.end());
    if (!best || seq_less(seq, *best)) best = std::move(seq);
  }
  return *best;
}


void check_comparable(const FreeMorphism& m1, const FreeMorphism& m2) {
  require_same_sig(m1, m2);
  if (m1.dom != m2.dom || m1.cod != m2.cod)
    throw Error(Errc::TypeMismatch, "boundaries differ: " + show_word(m1.dom) + " -> " + show_word(m1.cod) +
                                        " versus " + show_word(m2.dom) + " -> " + show_word(m2.cod));
}

}  // namespace

namespace {

// Ambiguous exchanges need an effect and a distinct state in the same list;
// without them every exchange has a unique result and greedy selection is
// exact.
bool may_be_ambiguous(const std::vector<Step>& steps) {
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (!steps[i].g->cod.empty()) continue;
    for (std::size_t j = 0; j < steps.size(); ++j)
      if (j != i && steps[j].g->dom.empty()) return true;
  }
  return false;
}

std::vector<std::vector<Step>> neighbours(const Mover& mv, const std::vector<Step>& cur) {
  std::vector<std::vector<Step>> out;
  for (std::size_t i = 0; i + 1 < cur.size(); ++i)
    for (const auto& r : mv.swaps(cur[i], cur[i + 1])) {
      auto next = cur;
      next[i] = r.first;
      next[i + 1] = r.second;
      out.push_back(std::move(next));
    }
  return out;
}

// Breadth-first walk over the exchange class of `start`; stops early when
// visit returns true.
template <class Visit>
bool explore(const Mover& mv, const std::vector<Step>& start, std::size_t max_states, Visit visit) {
  std::unordered_set<std::string> seen{state_key(start)};
  std::deque<std::vector<Step>> queue{start};
  while (!queue.empty()) {
    auto cur = std::move(queue.front());
    queue.pop_front();
    if (visit(cur)) return true;
    for (auto& next : neighbours(mv, cur)) {
      if (!seen.insert(state_key(next)).second) continue;
      if (seen.size() > max_states) throw Error(Errc::BudgetExceeded, "exchange search exceeded its state budget");
      queue.push_back(std::move(next));
    }
  }
  return false;
}

constexpr std::size_t kCanonicalBudget = 500000;

}  // namespace

FreeMorphism canonical_form(const FreeMorphism& m) {
  Mover mv{m.sig->pcm(), m.grade};
  auto steps = to_steps(*m.sig, m.slices);
  if (may_be_ambiguous(steps)) {
    // Prefix choices do not cancel here, so the whole class is searched.
    std::vector<Step> best = steps;
    explore(mv, steps, kCanonicalBudget, [&](const std::vector<Step>& cur) {
      if (seq_less(cur, best)) best = cur;
      return false;
    });
    steps = std::move(best);
  } else {
    steps = greedy(mv, steps);
  }
  return FreeMorphism{m.sig, m.grade, m.dom, m.cod, to_slices(m.dom, steps)};
}

bool equal_at(const FreeMorphism& m1, const FreeMorphism& m2, const Grade& c) {
  check_comparable(m1, m2);
  return canonical_form(regrade(m1, c)).slices == canonical_form(regrade(m2, c)).slices;
}

bool equal_oracle(const FreeMorphism& m1, const FreeMorphism& m2, const Grade& c, std::size_t max_states) {
  check_comparable(m1, m2);
  FreeMorphism a = regrade(m1, c);
  FreeMorphism b = regrade(m2, c);
  if (a.slices.size() != b.slices.size()) return false;
  Mover mv{a.sig->pcm(), c};
  const std::string target = state_key(to_steps(*b.sig, b.slices));
  return explore(mv, to_steps(*a.sig, a.slices), max_states,
                 [&](const std::vector<Step>& cur) { return state_key(cur) == target; });
}

std::vector<FreeMorphism> exchange_neighbours(const FreeMorphism& m) {
  Mover mv{m.sig->pcm(), m.grade};
  std::vector<FreeMorphism> out;
  for (const auto& next : neighbours(mv, to_steps(*m.sig, m.slices)))
    out.push_back(FreeMorphism{m.sig, m.grade, m.dom, m.cod, to_slices(m.dom, next)});
  return out;
}

bool admissible_at(const FreeMorphism& m, const Grade& c) {
  const Pcm& pcm = m.sig->pcm();
  for (const auto& s : m.slices)
    if (!pcm.leq(m.sig->generator(s.gen).grade, c)) return false;
  return true;
}

std::vector<Grade> valid_grades(const FreeMorphism& m) {
  std::vector<Grade> out;
  for (const auto& c : m.sig->pcm().elements())
    if (admissible_at(m, c)) out.push_back(c);
  return out;
}

std::string show_slice(const Signature& sig, const Slice& s) {
  const auto& g = sig.generator(s.gen);
  return show_word(s.left) + " | " + g.name + "@" + sig.pcm().show(g.grade) + " | " + show_word(s.right);
}

std::string show_slices(const FreeMorphism& m) {
  std::string out;
  for (const auto& s : m.slices) out += show_slice(*m.sig, s) + "\n";
  return out;
}

// ---------------------------------------------------------------- effectful view

EffectfulView::EffectfulView(SigPtr sig) : sig_(std::move(sig)) {
  auto t = sig_->pcm().top();
  if (!t) throw Error(Errc::NoTop, "the signature's PCM has no top element");
  top_ = *t;
}

bool EffectfulView::is_pure(const FreeMorphism& m) const { return m.grade == sig_->pcm().zero(); }
bool EffectfulView::is_effectful(const FreeMorphism& m) const { return m.grade == top_; }

FreeMorphism EffectfulView::pure_identity(const Word& w) const { return identity(sig_, w, sig_->pcm().zero()); }

FreeMorphism EffectfulView::include(const FreeMorphism& pure) const {
  if (!is_pure(pure)) throw Error(Errc::GradeMismatch, "only grade-0 morphisms are pure");
  return regrade(pure, top_);
}

FreeMorphism EffectfulView::compose_effectful(const FreeMorphism& a, const FreeMorphism& b) const {
  if (!is_effectful(a) || !is_effectful(b)) throw Error(Errc::GradeMismatch, "expected top-graded morphisms");
  return compose(a, b);
}

FreeMorphism EffectfulView::tensor_effectful(const FreeMorphism& a, const FreeMorphism& b) const {
  if (!is_effectful(a) || !is_effectful(b)) throw Error(Errc::GradeMismatch, "expected top-graded morphisms");
  return tensor(a, b);
}

FreeMorphism EffectfulView::tensor_mixed(const FreeMorphism& pure, const FreeMorphism& effectful) const {
  if (!is_pure(pure) || !is_effectful(effectful)) throw Error(Errc::GradeMismatch, "expected a pure and an effectful morphism");
  return tensor(pure, effectful);
}

}  // namespace gmc
