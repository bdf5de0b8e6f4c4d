#include "gmc/lang.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <set>

#include "text.hpp"

namespace gmc::lang {

namespace {

Errc errc_for(const std::string& code) {
  if (code == "E-NAME") return Errc::UnknownGenerator;
  if (code == "E-TYPE") return Errc::TypeMismatch;
  if (code == "E-GRADE") return Errc::GradeMismatch;
  if (code == "E-ORTHO") return Errc::NonOrthogonalGrades;
  return Errc::ParseError;
}

[[noreturn]] void fail(Span at, std::string code, std::string message, std::vector<std::string> grades = {}) {
  throw DiagnosticError(Diagnostic{"error", at, std::move(code), std::move(message), std::move(grades)});
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

// Cursor over one source line; columns are 1-based.
class Line {
 public:
  Line(std::string_view s, std::size_t line) : s_(s), line_(line) {}

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip();
    return i_ >= s_.size();
  }
  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  Span here() {
    skip();
    return {line_, i_ + 1};
  }
  bool eat(char c) {
    if (peek() != c) return false;
    ++i_;
    return true;
  }
  void expect(char c, const char* what) {
    if (!eat(c)) fail(here(), "E-PARSE", std::string("expected ") + what);
  }
  bool at_ident() { return ident_start(peek()); }
  std::string ident(const char* what) {
    if (!at_ident()) fail(here(), "E-PARSE", std::string("expected ") + what);
    std::size_t b = i_;
    while (i_ < s_.size() && ident_char(s_[i_])) ++i_;
    return std::string(s_.substr(b, i_ - b));
  }
  bool at_arrow() {
    skip();
    return s_.substr(i_, 2) == "->";
  }
  void arrow() {
    if (!at_arrow()) fail(here(), "E-PARSE", "expected '->'");
    i_ += 2;
  }
  std::string rest() {
    skip();
    auto r = text::trim(s_.substr(i_));
    i_ = s_.size();
    return std::string(r);
  }
  // A grade literal inside an expression: a bracketed group or a run of
  // characters up to whitespace, an operator or a closing parenthesis.
  std::string grade_literal() {
    skip();
    std::size_t b = i_;
    if (i_ < s_.size() && (s_[i_] == '{' || s_[i_] == '(')) {
      auto close = text::matching(s_, i_);
      if (close == std::string_view::npos) fail({line_, i_ + 1}, "E-PARSE", "unbalanced bracket in grade");
      i_ = close + 1;
    } else {
      while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != ';' && s_[i_] != '*' &&
             s_[i_] != ')' && s_[i_] != '(')
        ++i_;
    }
    if (b == i_) fail({line_, b + 1}, "E-PARSE", "expected a grade");
    return std::string(s_.substr(b, i_ - b));
  }

 private:
  std::string_view s_;
  std::size_t line_;
  std::size_t i_ = 0;
};

class Parser {
 public:
  SourceDocument run(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      auto end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      ++line_no;
      std::string_view raw = text.substr(start, end - start);
      if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
      Line line(raw, line_no);
      if (!line.done()) statement(line);
      start = end + 1;
    }
    if (!pcm_) fail({1, 1}, "E-PARSE", "missing pcm declaration");
    finish_signature({line_no, 1});
    return std::move(doc_);
  }

 private:
  void statement(Line& l) {
    Span at = l.here();
    std::string kw = l.ident("a declaration");
    if (kw == "pcm") {
      if (pcm_) fail(at, "E-PARSE", "second pcm declaration");
      std::string desc = l.rest();
      try {
        pcm_ = Pcm::parse(desc);
      } catch (const Error& e) {
        fail(at, "E-PARSE", "bad pcm '" + desc + "': " + e.what());
      }
      return;
    }
    if (!pcm_) fail(at, "E-PARSE", "the pcm must be declared first");
    if (kw == "object") {
      if (doc_.sig) fail(at, "E-PARSE", "objects must be declared before terms");
      if (l.done()) fail(l.here(), "E-PARSE", "expected an object name");
      while (!l.done()) {
        Span os = l.here();
        std::string o = l.ident("an object name");
        if (o == "I" || o == "id" || !objects_.insert(o).second) fail(os, "E-NAME", "object '" + o + "' is reserved or repeated");
        object_order_.push_back(o);
      }
    } else if (kw == "gen") {
      if (doc_.sig) fail(at, "E-PARSE", "generators must be declared before terms");
      GeneratorDecl g;
      Span gs = l.here();
      g.name = l.ident("a generator name");
      if (g.name == "id" || g.name == "I" || objects_.count(g.name) || gens_.count(g.name))
        fail(gs, "E-NAME", "name '" + g.name + "' is reserved or already used");
      l.expect(':', "':'");
      g.dom = word(l, true);
      l.arrow();
      g.cod = word(l, true);
      l.expect('@', "'@'");
      Span grs = l.here();
      g.grade = grade(grs, l.rest());
      gens_.insert(g.name);
      gen_decls_.push_back(std::move(g));
    } else if (kw == "term") {
      finish_signature(at);
      Binding b;
      b.span = l.here();
      b.name = l.ident("a term name");
      if (b.name == "id" || b.name == "I" || gens_.count(b.name) || doc_.find(b.name))
        fail(b.span, "E-NAME", "name '" + b.name + "' is reserved or already used");
      l.expect('=', "'='");
      b.term = expr(l);
      if (!l.done()) fail(l.here(), "E-PARSE", "unexpected input after the term");
      doc_.terms.push_back(std::move(b));
    } else {
      fail(at, "E-PARSE", "unknown declaration '" + kw + "'");
    }
  }

  void finish_signature(Span at) {
    if (doc_.sig) return;
    try {
      doc_.sig = make_signature(*pcm_, object_order_, gen_decls_);
    } catch (const Error& e) {
      fail(at, "E-NAME", e.what());
    }
  }

  Grade grade(Span at, const std::string& lit) {
    try {
      return pcm_->parse_grade(lit);
    } catch (const Error& e) {
      fail(at, "E-PARSE", "bad grade '" + lit + "' for " + pcm_->descriptor());
    }
  }

  // Object names up to the next non-identifier; a lone I is the empty word.
  Word word(Line& l, bool allow_empty_line) {
    Word w;
    Span at = l.here();
    while (l.at_ident()) {
      Span os = l.here();
      std::string o = l.ident("an object");
      if (o == "I") {
        if (!w.empty()) fail(os, "E-PARSE", "I cannot appear inside a longer word");
        if (l.at_ident()) fail(l.here(), "E-PARSE", "I cannot appear inside a longer word");
        return w;
      }
      if (!objects_.count(o)) fail(os, "E-NAME", "undeclared object '" + o + "'");
      w.push_back(o);
    }
    if (w.empty() && allow_empty_line) fail(at, "E-PARSE", "expected a word (use I for the unit)");
    return w;
  }

  Term expr(Line& l) {
    Term left = tensor(l);
    while (l.peek() == ';') {
      Span at = l.here();
      l.eat(';');
      Term right = tensor(l);
      left = binary(Term::Kind::compose, at, std::move(left), std::move(right));
    }
    return left;
  }

  Term tensor(Line& l) {
    Term left = postfix(l);
    while (l.peek() == '*') {
      Span at = l.here();
      l.eat('*');
      Term right = postfix(l);
      left = binary(Term::Kind::tensor, at, std::move(left), std::move(right));
    }
    return left;
  }

  static Term binary(Term::Kind k, Span at, Term a, Term b) {
    Term t;
    t.kind = k;
    t.span = at;
    t.args.push_back(std::move(a));
    t.args.push_back(std::move(b));
    return t;
  }

  Term postfix(Line& l) {
    Term t = atom(l);
    while (l.peek() == '@') {
      Term r;
      r.kind = Term::Kind::regrade;
      r.span = l.here();
      l.eat('@');
      Span gs = l.here();
      r.grade = pcm_->show(grade(gs, l.grade_literal()));
      r.args.push_back(std::move(t));
      t = std::move(r);
    }
    return t;
  }

  Term atom(Line& l) {
    Span at = l.here();
    if (l.eat('(')) {
      Term t = expr(l);
      if (!l.eat(')')) fail(l.here(), "E-PARSE", "expected ')' to close the '(' at column " + std::to_string(at.col));
      return t;
    }
    if (!l.at_ident()) fail(at, "E-PARSE", "expected a term");
    std::string n = l.ident("a term");
    Term t;
    t.span = at;
    if (n == "id") {
      t.kind = Term::Kind::id;
      if (!l.at_ident()) fail(l.here(), "E-PARSE", "id needs a word (use I for the unit)");
      t.word = word(l, false);
      return t;
    }
    if (!gens_.count(n) && !doc_.find(n)) fail(at, "E-NAME", "unknown generator or term '" + n + "'");
    t.kind = Term::Kind::name;
    t.name = n;
    return t;
  }

  std::optional<Pcm> pcm_;
  std::set<std::string> objects_;
  std::vector<std::string> object_order_;
  std::set<std::string> gens_;
  std::vector<GeneratorDecl> gen_decls_;
  SourceDocument doc_;
};

std::string show_grade(const Pcm& p, const Grade& g) { return p.show(g); }

FreeMorphism elab(const SourceDocument& doc, const Term& t) {
  const Signature& sig = *doc.sig;
  const Pcm& p = sig.pcm();
  switch (t.kind) {
    case Term::Kind::id: return identity(doc.sig, t.word, p.zero());
    case Term::Kind::name: {
      if (sig.find(t.name)) return generator(doc.sig, t.name);
      if (const Binding* b = doc.find(t.name)) return elab(doc, b->term);
      fail(t.span, "E-NAME", "unknown generator or term '" + t.name + "'");
    }
    case Term::Kind::regrade: {
      FreeMorphism m = elab(doc, t.args[0]);
      Grade c = p.parse_grade(t.grade);
      if (!p.leq(m.grade, c))
        fail(t.span, "E-GRADE",
             "cannot regrade from " + show_grade(p, m.grade) + " to " + t.grade + ": the target is not above the source");
      return regrade(m, c);
    }
    case Term::Kind::compose: {
      FreeMorphism a = elab(doc, t.args[0]), b = elab(doc, t.args[1]);
      if (a.cod != b.dom)
        fail(t.span, "E-TYPE", "';' joins codomain " + show_word(a.cod) + " to domain " + show_word(b.dom));
      if (a.grade != b.grade)
        fail(t.span, "E-GRADE",
             "';' needs one grade but got " + show_grade(p, a.grade) + " and " + show_grade(p, b.grade) +
                 "; regrade both sides with '@' or use gcompose");
      return compose(a, b);
    }
    case Term::Kind::tensor: {
      FreeMorphism a = elab(doc, t.args[0]), b = elab(doc, t.args[1]);
      if (!p.orthogonal(a.grade, b.grade)) {
        std::string ga = show_grade(p, a.grade), gb = show_grade(p, b.grade);
        fail(t.span, "E-ORTHO", "'*' needs orthogonal grades but " + ga + " + " + gb + " is undefined", {ga, gb});
      }
      return tensor(a, b);
    }
  }
  fail(t.span, "E-PARSE", "malformed term");
}

int precedence(const Term& t) {
  switch (t.kind) {
    case Term::Kind::compose: return 1;
    case Term::Kind::tensor: return 2;
    case Term::Kind::regrade: return 3;
    default: return 4;
  }
}

std::string wrap(const Term& t, int need) {
  std::string s = print(t);
  return precedence(t) < need ? "(" + s + ")" : s;
}

}  // namespace

std::string Diagnostic::render(std::string_view file) const {
  return std::string(file) + ":" + std::to_string(span.line) + ":" + std::to_string(span.col) + ": " + severity + "[" +
         code + "]: " + message;
}

DiagnosticError::DiagnosticError(Diagnostic d) : Error(errc_for(d.code), d.message), d_(std::move(d)) {}

const Binding* SourceDocument::find(std::string_view name) const {
  for (const auto& b : terms)
    if (b.name == name) return &b;
  return nullptr;
}

SourceDocument parse(std::string_view text) { return Parser().run(text); }

FreeMorphism elaborate(const SourceDocument& doc, const Term& t) { return elab(doc, t); }

FreeMorphism elaborate(const SourceDocument& doc, std::string_view term) {
  const Binding* b = doc.find(term);
  if (!b) fail({0, 0}, "E-NAME", "no term named '" + std::string(term) + "'");
  return elab(doc, b->term);
}

std::string print(const Term& t) {
  switch (t.kind) {
    case Term::Kind::id: return "id " + show_word(t.word);
    case Term::Kind::name: return t.name;
    case Term::Kind::regrade: return wrap(t.args[0], 3) + " @ " + t.grade;
    case Term::Kind::compose: return wrap(t.args[0], 1) + " ; " + wrap(t.args[1], 2);
    case Term::Kind::tensor: return wrap(t.args[0], 2) + " * " + wrap(t.args[1], 3);
  }
  return "";
}

std::string print(const SourceDocument& doc) {
  const Signature& sig = *doc.sig;
  std::string out = "pcm " + sig.pcm().descriptor() + "\n";
  if (!sig.objects().empty()) {
    out += "object";
    for (const auto& o : sig.objects()) out += " " + o;
    out += "\n";
  }
  for (const auto& g : sig.generators())
    out += "gen " + g.name + " : " + show_word(g.dom) + " -> " + show_word(g.cod) + " @ " + sig.pcm().show(g.grade) + "\n";
  for (const auto& b : doc.terms) out += "term " + b.name + " = " + print(b.term) + "\n";
  return out;
}

Term to_term(const FreeMorphism& m) {
  const Pcm& p = m.sig->pcm();
  auto id_of = [](const Word& w) {
    Term t;
    t.kind = Term::Kind::id;
    t.word = w;
    return t;
  };
  auto regraded = [&](Term t, const Grade& from) {
    if (from == m.grade) return t;
    Term r;
    r.kind = Term::Kind::regrade;
    r.grade = p.show(m.grade);
    r.args.push_back(std::move(t));
    return r;
  };
  auto join = [](Term::Kind k, Term a, Term b) {
    Term t;
    t.kind = k;
    t.args.push_back(std::move(a));
    t.args.push_back(std::move(b));
    return t;
  };
  if (m.slices.empty()) return regraded(id_of(m.dom), p.zero());
  std::optional<Term> out;
  for (const auto& s : m.slices) {
    Term g;
    g.kind = Term::Kind::name;
    g.name = s.gen;
    Term slice = std::move(g);
    if (!s.left.empty()) slice = join(Term::Kind::tensor, id_of(s.left), std::move(slice));
    if (!s.right.empty()) slice = join(Term::Kind::tensor, std::move(slice), id_of(s.right));
    slice = regraded(std::move(slice), m.sig->generator(s.gen).grade);
    out = out ? join(Term::Kind::compose, std::move(*out), std::move(slice)) : std::move(slice);
  }
  return *out;
}

SourceDocument normalize(const SourceDocument& doc) {
  SourceDocument out{doc.sig, {}};
  for (const auto& b : doc.terms) out.terms.push_back({b.name, b.span, to_term(canonical_form(elab(doc, b.term)))});
  return out;
}

}  // namespace gmc::lang
