#include "gmc/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gmc/acceptance.hpp"
#include "gmc/convolution.hpp"
#include "gmc/globalcat.hpp"
#include "gmc/lang.hpp"
#include "gmc/model_io.hpp"

namespace gmc::cli {

namespace {

// Thrown to stop a command with a given exit code after its message has
// been written.
struct Exit {
  int code;
};

std::uint64_t default_seed() {
  if (const char* s = std::getenv("GMC_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
    }
  }
  return kDefaultSeed;
}

class Session {
 public:
  Session(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  std::string read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      err_ << "error: cannot read '" << path << "'\n";
      throw Exit{2};
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  lang::SourceDocument source(const std::string& path) {
    std::string text = read(path);
    try {
      return lang::parse(text);
    } catch (const lang::DiagnosticError& e) {
      err_ << e.diagnostic().render(path) << "\n";
      throw Exit{2};
    }
  }

  // Elaboration diagnostics are verdicts on the program: exit 1. Unknown
  // names given on the command line are usage errors.
  FreeMorphism term(const lang::SourceDocument& doc, const std::string& path, const std::string& name) {
    if (!doc.find(name)) {
      err_ << path << ": error[E-NAME]: no term named '" << name << "'\n";
      throw Exit{2};
    }
    try {
      return lang::elaborate(doc, name);
    } catch (const lang::DiagnosticError& e) {
      err_ << e.diagnostic().render(path) << "\n";
      throw Exit{1};
    }
  }

  Grade grade(const Pcm& p, const std::string& text) {
    try {
      return p.parse_grade(text);
    } catch (const Error& e) {
      err_ << "error: " << e.what() << "\n";
      throw Exit{2};
    }
  }

  template <class F>
  auto input(const std::string& path, F&& load) {
    std::string text = read(path);
    try {
      return load(text);
    } catch (const Error& e) {
      err_ << path << ": error: " << e.what() << "\n";
      throw Exit{2};
    }
  }

  int report(const Report& r) {
    out_ << r.render();
    return r.ok() ? 0 : 1;
  }

  std::ostream& out() { return out_; }
  std::ostream& err() { return err_; }

 private:
  std::ostream& out_;
  std::ostream& err_;
};

std::string describe(const FreeMorphism& m) {
  return show_word(m.dom) + " -> " + show_word(m.cod) + " @ " + m.sig->pcm().show(m.grade);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grade checking and law verification for PCM-graded monoidal categories", "gmc"};
  app.require_subcommand(1);
  Session s(out, err);
  std::uint64_t seed = default_seed();
  std::size_t budget = kDefaultBudget;
  int code = 0;

  std::string file, file2, term1, term2, grade_text, op = "join", table_path, via = "lax", out_path, coherence_path,
                                                      golden_dir;
  std::vector<std::string> terms;
  std::vector<int> only;
  bool oracle = false, classify = false, promonoidal = false;

  auto seed_opts = [&](CLI::App* c) {
    c->add_option("--seed", seed, "random seed (default " + std::to_string(kDefaultSeed) + " or $GMC_SEED)");
    c->add_option("--budget", budget, "samples per randomized law (default " + std::to_string(kDefaultBudget) + ")");
  };

  auto* check = app.add_subcommand("check", "parse and elaborate every term, printing its type");
  check->add_option("file", file, ".gmc source")->required();
  check->add_option("--term", terms, "only these terms");
  check->callback([&] {
    auto doc = s.source(file);
    std::vector<std::string> names = terms;
    if (names.empty())
      for (const auto& b : doc.terms) names.push_back(b.name);
    for (const auto& n : names) {
      const auto m = s.term(doc, file, n);
      out << "term " << n << " : " << describe(m) << "\n";
    }
  });

  auto* normalize = app.add_subcommand("normalize", "print the document with every term in canonical form");
  normalize->add_option("file", file, ".gmc source")->required();
  normalize->callback([&] {
    auto doc = s.source(file);
    for (const auto& b : doc.terms) s.term(doc, file, b.name);
    out << lang::print(lang::normalize(doc));
  });

  auto* equal = app.add_subcommand("equal", "decide equality of two terms at a grade");
  equal->add_option("file", file, ".gmc source")->required();
  equal->add_option("t1", term1)->required();
  equal->add_option("t2", term2)->required();
  equal->add_option("--grade", grade_text, "grade to compare at (default: the join of both grades)");
  equal->add_flag("--oracle", oracle, "also run the breadth-first oracle");
  equal->callback([&] {
    auto doc = s.source(file);
    auto a = s.term(doc, file, term1), b = s.term(doc, file, term2);
    const Pcm& p = doc.sig->pcm();
    Grade c;
    if (!grade_text.empty()) {
      c = s.grade(p, grade_text);
    } else if (auto j = p.join(a.grade, b.grade)) {
      c = *j;
    } else {
      err << "error: " << p.show(a.grade) << " and " << p.show(b.grade) << " have no join; pass --grade\n";
      throw Exit{2};
    }
    for (const auto* m : {&a, &b})
      if (!p.leq(m->grade, c)) {
        err << file << ": error[E-GRADE]: a term at grade " << p.show(m->grade) << " is not admissible at " << p.show(c)
            << "\n";
        throw Exit{1};
      }
    const bool eq = equal_at(a, b, c);
    out << (eq ? "EQUAL" : "NOT EQUAL") << " at grade " << p.show(c) << "\n";
    code = eq ? 0 : 1;
    if (oracle) {
      try {
        const bool o = equal_oracle(regrade(a, c), regrade(b, c), c);
        out << "oracle " << (o == eq ? "agrees" : "DISAGREES") << "\n";
        if (o != eq) code = 1;
      } catch (const Error& e) {
        out << "oracle gave up: " << e.what() << "\n";
      }
    }
  });

  auto* grades = app.add_subcommand("grades", "list the grades at which a term is admissible");
  grades->add_option("file", file, ".gmc source")->required();
  grades->add_option("term", term1)->required();
  grades->callback([&] {
    auto doc = s.source(file);
    auto m = s.term(doc, file, term1);
    const Pcm& p = doc.sig->pcm();
    if (!p.finite()) out << "# " << p.descriptor() << " is infinite; scanning a finite prefix\n";
    for (const auto& c : p.finite() ? p.elements() : p.probe())
      if (admissible_at(m, c)) out << p.show(c) << "\n";
  });

  auto* gcompose = app.add_subcommand("gcompose", "compose two terms in the global category");
  gcompose->add_option("file", file, ".gmc source")->required();
  gcompose->add_option("t1", term1)->required();
  gcompose->add_option("t2", term2)->required();
  gcompose->add_option("--op", op, "join, plus or sum")->check(CLI::IsMember({"join", "plus", "sum"}));
  gcompose->add_option("--table", table_path, "upper-bounding table file, one '<a> <b> -> <c>' per line");
  gcompose->callback([&] {
    auto doc = s.source(file);
    auto a = s.term(doc, file, term1), b = s.term(doc, file, term2);
    const Pcm& p = doc.sig->pcm();
    try {
      UpperBoundingOp u = !table_path.empty() ? UpperBoundingOp::parse_table(p, s.read(table_path))
                          : op == "plus"      ? UpperBoundingOp::plus(p)
                          : op == "sum"       ? UpperBoundingOp::sum(p)
                                              : UpperBoundingOp::join(p);
      auto g = global_compose(tag(a), tag(b), u);
      out << "grade " << p.show(g.grade) << " by " << u.name << "\n";
      out << "term = " << lang::print(lang::to_term(canonical_form(g.body))) << "\n";
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      const bool usage = e.code() == Errc::ParseError || e.code() == Errc::MalformedSpec || e.code() == Errc::NotTotal;
      throw Exit{usage ? 2 : 1};
    }
  });

  auto* lawpcm = app.add_subcommand("lawcheck-pcm", "check the PCM laws for a PCM descriptor");
  lawpcm->add_option("--kind", file, "PCM descriptor, e.g. three or \"powerset a b\"")->required();
  lawpcm->add_flag("--classify", classify, "also report separation and effect-algebra structure (informational)");
  lawpcm->add_flag("--promonoidal", promonoidal, "also check the induced thin promonoidal structure");
  seed_opts(lawpcm);
  lawpcm->callback([&] {
    Pcm p = [&] {
      try {
        return Pcm::parse(file);
      } catch (const Error& e) {
        // Tables are law-checked when built; a violation is a verdict, not bad input.
        err << "error: " << e.what() << "\n";
        throw Exit{e.code() == Errc::LawViolation ? 1 : 2};
      }
    }();
    Report r = check_pcm_laws(p, budget, seed);
    r.merge(check_order_laws(p, budget, seed));
    if (promonoidal) {
      if (!p.finite()) {
        err << "error: " << p.descriptor() << " is infinite\n";
        throw Exit{2};
      }
      r.merge(check_promonoidal_laws(promonoidal_from_pcm(p)));
    }
    code = s.report(r);
    if (classify) {
      std::vector<Report> extras{check_separation(p, budget, seed)};
      try {
        extras.push_back(check_effect_algebra(p, budget, seed));
      } catch (const Error& e) {
        if (e.code() != Errc::NoTop) throw;
        out << "TOP INFO fails no top element\n";
      }
      for (const auto& extra : extras)
        for (const auto& c : extra.checks())
          out << c.name << " INFO " << (c.pass ? "holds" : "fails " + c.detail) << "\n";
    }
  });

  auto* lawmodel = app.add_subcommand("lawcheck-model", "check a gmcmodel/1 document against the axioms");
  lawmodel->add_option("file", file, "model document")->required();
  lawmodel->callback([&] {
    auto m = s.input(file, [](const std::string& t) { return load_model(t); });
    Report r = check_axioms(m);
    if (m.braiding) r.merge(check_symmetric(m));
    r.merge(check_interchange_lemma(m));
    code = s.report(r);
  });

  auto* coref = app.add_subcommand("coreflect", "build the two-graded coreflection of a model with a top grade");
  coref->add_option("file", file, "model document")->required();
  coref->add_option("--out", out_path, "write the coreflected model here");
  coref->callback([&] {
    auto m = s.input(file, [](const std::string& t) { return load_model(t); });
    try {
      auto c = coreflect(std::make_shared<const FiniteGradedModel>(std::move(m)));
      Report r = check_axioms(*c.model);
      const Report counit = check_graded_functor(c.counit);
      for (const auto& chk : counit.checks()) {
        Check renamed = chk;
        renamed.name = "COUNIT-" + chk.name;
        r.add(renamed);
      }
      code = s.report(r);
      if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        f << save_model(*c.model);
        if (!f) {
          err << "error: cannot write '" << out_path << "'\n";
          throw Exit{2};
        }
      } else {
        out << save_model(*c.model);
      }
    } catch (const Error& e) {
      err << file << ": error: " << e.what() << "\n";
      throw Exit{1};
    }
  });

  auto* conv = app.add_subcommand("convolve", "Day convolution of two copresheaf documents");
  conv->add_option("f", file, "copresheaf document")->required();
  conv->add_option("g", file2, "copresheaf document")->required();
  conv->add_option("--coherence", coherence_path, "also check the unit and associativity isos with this third factor");
  conv->callback([&] {
    auto load = [](const std::string& t) { return load_copresheaf(t); };
    auto f = s.input(file, load), g = s.input(file2, load);
    try {
      out << save_convolution(convolve_classes(f, g));
      if (!coherence_path.empty()) code = s.report(check_convolution_coherence(f, g, s.input(coherence_path, load)));
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      throw Exit{2};
    }
  });

  auto* round = app.add_subcommand("roundtrip", "translate a model and back, comparing tables");
  round->add_option("file", file, "model document")->required();
  round->add_option("--via", via, "lax, effectful or json")->check(CLI::IsMember({"lax", "effectful", "json"}));
  round->callback([&] {
    const std::string text = s.read(file);
    auto m = s.input(file, [&](const std::string&) { return load_model(text); });
    try {
      bool same = false;
      if (via == "lax") {
        auto p = graded_to_lax(m);
        Report r = check_lax_presentation(p);
        out << r.render();
        auto back = lax_to_graded(p);
        same = same_tables(back, m) && graded_to_lax(back) == p;
      } else if (via == "effectful") {
        auto e = to_effectful(m);
        Report r = check_effectful(e);
        out << r.render();
        auto back = from_effectful(e);
        same = same_tables(back, m) && to_effectful(back) == e;
      } else {
        const std::string once = save_model(m);
        same = save_model(load_model(once)) == once;
      }
      out << "ROUNDTRIP " << via << (same ? " IDENTICAL" : " DIFFERS") << "\n";
      code = same ? 0 : 1;
    } catch (const Error& e) {
      err << file << ": error: " << e.what() << "\n";
      throw Exit{1};
    }
  });

  auto* self = app.add_subcommand("selftest", "run the acceptance suite");
  self->add_option("--seed", seed, "random seed");
  self->add_option("--only", only, "criterion numbers to run");
  self->add_option("--golden", golden_dir, "directory of recorded CLI invocations");
  self->callback([&] {
    acceptance::Options o;
    o.seed = seed;
    o.only = only;
    o.golden_dir = golden_dir.empty() ? std::string(GMC_GOLDEN_DIR) : golden_dir;
    bool all = true;
    acceptance::run(o, [&](const acceptance::Result& r) {
      out << acceptance::render(r) << "\n" << std::flush;
      all = all && r.pass;
    });
    code = all ? 0 : 1;
  });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  } catch (const Exit& e) {
    return e.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return code;
}

}  // namespace gmc::cli
