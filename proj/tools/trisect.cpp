// trisect: command-line front end.
// Exit codes: 0 success, 1 domain error or failed check, 2 usage error.
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "trisect/acceptance.hpp"
#include "trisect/bracket.hpp"
#include "trisect/diagram.hpp"
#include "trisect/errors.hpp"
#include "trisect/io.hpp"
#include "trisect/labelcount.hpp"
#include "trisect/moves.hpp"

using namespace trisect;

namespace {

struct Flags {
  std::string triplet = "kashaev:n=2";
  std::string C, B, M = "point";
  bool json = false;
  double tol = 1e-9;
  std::string backend = "exact";
  std::string evaluator = "element";
  std::string integrals = "normalized";
  bool all_roots = false;
  double cap = 1e7;
  bool lenient = false;
};

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const ojson& j) { std::cout << j.dump(2) << "\n"; }

std::string both(const Scalar& s) {
  if (!s.exact()) return s.decimal();
  std::string e = s.str(), d = s.decimal();
  return e == d ? e : e + "  (" + d + ")";
}

std::string both(const RootScalar& r) {
  std::string e = r.str(), d = decimal_string(r.to_complex());
  return e == d ? e : e + "  (" + d + ")";
}

EmbeddedDiagram diagram_arg(const std::string& name, const Flags& f) { return load_diagram(name, !f.lenient); }

BracketConfig bracket_config(const Flags& f) {
  HopfTriplet t = parse_triplet(f.triplet);
  Evaluator ev = f.evaluator == "rep" ? Evaluator::RepBased : Evaluator::ElementBased;
  BracketConfig cfg = f.integrals == "counting" ? counting_config(t, ev) : default_config(t, ev);
  cfg.cap = f.cap;
  if (f.backend == "float") cfg = to_float(cfg);
  return cfg;
}

WeakConfig weak_config(const Flags& f) {
  if (f.C.empty() || f.B.empty()) throw Usage("--C and --B are required");
  return make_weak_config(parse_group(f.C), parse_group(f.B), f.M);
}

// ------------------------------------------------------------ commands

int cmd_validate(const std::string& name, const Flags& f) {
  EmbeddedDiagram e = diagram_arg(name, f);
  ValidationReport r = validate(e, !f.lenient);
  const auto& d = e.base;
  std::optional<int> chi;
  if (d.declared_k && *d.declared_k >= 0 && *d.declared_k <= d.genus) chi = euler_characteristic(d.genus, *d.declared_k);
  if (f.json) {
    ojson j;
    j["diagram"] = name;
    j["valid"] = r.ok();
    j["violations"] = r.violations;
    j["genus"] = d.genus;
    j["kind"] = d.kind == Kind::Closed ? "closed" : "disc";
    j["k"] = d.declared_k ? ojson(*d.declared_k) : ojson(nullptr);
    j["euler_characteristic"] = chi ? ojson(*chi) : ojson(nullptr);
    j["crossings"] = d.crossings.size();
    j["embedded"] = !e.regions.empty();
    emit(j);
  } else {
    std::cout << name << ": genus " << d.genus << ", " << d.crossings.size() << " crossings";
    if (chi) std::cout << ", k " << *d.declared_k << ", chi " << *chi;
    std::cout << "\n";
    if (r.ok())
      std::cout << "valid\n";
    else
      for (auto& v : r.violations) std::cout << "violation: " << v << "\n";
  }
  return r.ok() ? 0 : 1;
}

int cmd_catalog(const std::string& name, const Flags& f) {
  if (name.empty()) {
    if (f.json)
      emit(ojson(catalog_names()));
    else
      for (auto& n : catalog_names()) std::cout << n << "\n";
    return 0;
  }
  auto e = embedded_catalog(name);
  std::cout << (e ? serialize(*e) : serialize(catalog(name)));
  return 0;
}

int cmd_bracket(const std::string& name, const Flags& f) {
  auto d = diagram_arg(name, f).base;
  BracketConfig cfg = bracket_config(f);
  ContractionStats st;
  Scalar v = trisection_bracket(d, cfg, &st);
  if (f.json) {
    ojson j;
    j["diagram"] = name;
    j["triplet"] = f.triplet;
    j["bracket"] = scalar_to_json(v);
    j["contraction_steps"] = st.steps;
    j["max_intermediate"] = st.max_nnz;
    emit(j);
  } else {
    std::cout << "bracket = " << both(v) << "\n";
  }
  return 0;
}

int cmd_invariant(const std::string& name, const Flags& f) {
  auto d = diagram_arg(name, f).base;
  InvariantResult r = invariant(d, bracket_config(f));
  if (f.json) {
    ojson j;
    j["diagram"] = name;
    j["triplet"] = f.triplet;
    j["genus"] = r.genus;
    j["bracket"] = scalar_to_json(r.bracket);
    j["s4_bracket"] = scalar_to_json(r.s4_bracket);
    j["invariant"] = root_to_json(r.value);
    if (f.all_roots) {
      ojson b = ojson::array();
      for (auto& z : r.branches) b.push_back({{"re", z.real()}, {"im", z.imag()}});
      j["branches"] = b;
    }
    emit(j);
  } else {
    std::cout << "bracket = " << both(r.bracket) << "\n";
    std::cout << "<S4> = xi^3 = " << both(r.s4_bracket) << "\n";
    std::cout << "invariant = " << both(r.value) << "\n";
    if (f.all_roots)
      for (int j = 0; j < 3; ++j) std::cout << "branch " << j << " = " << decimal_string(r.branches[j]) << "\n";
  }
  return 0;
}

int cmd_count(const std::string& name, const Flags& f) {
  EmbeddedDiagram e = diagram_arg(name, f);
  WeakConfig w = weak_config(f);
  mpz_class curves = count_curve_labellings(e.base, w.C, w.B);
  mpz_class l = labelling_count(e.base, w);
  std::optional<mpz_class> admissible;
  if (!e.regions.empty()) admissible = count_admissible(e, w);
  if (admissible && *admissible != l && e.base.kind == Kind::Closed)
    throw InternalConsistency("admissible count " + admissible->get_str() + " differs from |M| |l^{B,C}| = " +
                              l.get_str());
  if (e.base.kind == Kind::Disc) {
    // surfaces with boundary: averaged evaluation instead of an invariant
    Scalar av = averaged_evaluation(e, w);
    if (f.json) {
      ojson j;
      j["diagram"] = name;
      j["l"] = admissible ? admissible->get_str() : std::string();
      j["averaged_evaluation"] = scalar_to_json(av);
      emit(j);
    } else {
      std::cout << "l=" << (admissible ? admissible->get_str() : "?") << ", averaged evaluation=" << both(av) << "\n";
    }
    return 0;
  }
  RootScalar v = group_count_invariant(e.base, w);
  if (f.json) {
    ojson j;
    j["diagram"] = name;
    j["C"] = f.C;
    j["B"] = f.B;
    j["M"] = f.M;
    j["curve_labellings"] = curves.get_str();
    j["l"] = l.get_str();
    j["invariant"] = root_to_json(v);
    emit(j);
  } else {
    std::cout << "l=" << l.get_str() << ", invariant=" << both(v) << "\n";
  }
  return 0;
}

int cmd_moves(const std::string& name, const std::string& spec, const std::string& out, const Flags& f) {
  auto d = diagram_arg(name, f).base;
  std::string text = std::filesystem::exists(spec) ? read_file(spec) : spec;
  auto first = text.find_first_not_of(" \t\r\n");
  std::vector<MoveSpec> moves;
  if (first != std::string::npos && text[first] == '{')
    moves.push_back(move_from_json(text));
  else
    moves = moves_from_json(text);
  for (auto& m : moves) d = apply_move(d, m);
  std::string s = serialize(d);
  if (out.empty()) {
    std::cout << s;
  } else {
    std::ofstream o(out);
    if (!o) throw ParseError("cannot write " + out);
    o << s;
  }
  return 0;
}

int cmd_axioms(const Flags& f, const std::string& hopf_file) {
  std::vector<std::pair<std::string, AxiomReport>> reports;
  double tol = f.backend == "float" ? f.tol : 0;
  if (!hopf_file.empty()) {
    HopfAlgebra h = load_hopf_file(hopf_file);
    reports.push_back({h.name + " axioms", check_hopf_axioms(h)});
    bool exact = std::all_of(h.counit.begin(), h.counit.end(), [](const Scalar& s) { return s.exact(); });
    if (!exact) tol = f.tol;
    if (!h.weak) reports.push_back({h.name + " integral", check_integral(h, compute_integral(h))});
  } else {
    HopfTriplet t = parse_triplet(f.triplet);
    if (f.backend == "float") t = to_float(t);
    for (auto* h : {&t.A, &t.B, &t.C}) reports.push_back({h->name + " axioms", check_hopf_axioms(*h)});
    reports.push_back({"tau_AB", check_skew_pairing(t.A, t.B, t.AB)});
    reports.push_back({"tau_BC", check_skew_pairing(t.B, t.C, t.BC)});
    reports.push_back({"tau_CA", check_skew_pairing(t.C, t.A, t.CA)});
    reports.push_back({"cyclic identity", check_triplet(t)});
  }
  bool ok = true;
  ojson j = ojson::array();
  for (auto& [name, r] : reports) {
    ok = ok && r.ok(tol);
    if (f.json) {
      ojson x;
      x["check"] = name;
      x["ok"] = r.ok(tol);
      x["max_residual"] = r.max();
      ojson rs = ojson::object();
      for (auto& [k, v] : r.residuals) rs[k] = v;
      x["residuals"] = rs;
      j.push_back(x);
    } else {
      std::cout << (r.ok(tol) ? "ok    " : "FAIL  ") << name << "  max residual " << r.max() << "\n";
      if (!r.ok(tol)) std::cout << r.str() << "\n";
    }
  }
  if (f.json) emit(j);
  return ok ? 0 : 1;
}

int cmd_crosscheck(const std::string& name, const Flags& f) {
  auto d = diagram_arg(name, f).base;
  std::vector<std::pair<std::string, CheckReport>> reports;
  if (!f.C.empty() || !f.B.empty()) {
    reports.push_back({"coincidence", coincidence_check(d, weak_config(f))});
  } else {
    Flags fe = f, fr = f;
    fe.evaluator = "element";
    fr.evaluator = "rep";
    reports.push_back({"element vs rep", cross_check(d, bracket_config(fe), bracket_config(fr))});
  }
  bool ok = true;
  ojson j = ojson::array();
  for (auto& [what, r] : reports) {
    ok = ok && r.ok;
    if (f.json)
      j.push_back({{"check", what}, {"ok", r.ok}, {"residual", r.residual}, {"detail", r.detail}});
    else
      std::cout << (r.ok ? "ok    " : "FAIL  ") << what << ": " << r.detail << "\n";
  }
  if (f.json) emit(j);
  return ok ? 0 : 1;
}

int cmd_selftest(const Flags& f, const std::string& fixtures, const std::vector<int>& only) {
  SuiteOptions opt;
  opt.fixture_dir = fixtures;
  opt.only = only;
  int failed = 0;
  ojson j = ojson::array();
  run_suite(opt, [&](const CriterionResult& r) {
    if (!r.ok) ++failed;
    if (f.json) {
      // timings are left out so that the report is reproducible
      j.push_back({{"criterion", r.id}, {"title", r.title}, {"ok", r.ok}, {"residual", r.residual},
                   {"checks", r.checks}, {"detail", r.detail}});
    } else {
      std::printf("criterion %2d  %-4s  %-32s  %7.2fs  residual %.3g  %s\n", r.id, r.ok ? "PASS" : "FAIL",
                  r.title.c_str(), r.seconds, r.residual, r.detail.c_str());
      std::fflush(stdout);
    }
  });
  if (f.json) emit(j);
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trisect: trisection diagrams, moves and Hopf-algebraic invariants"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  app.add_option("--triplet", f.triplet, "kashaev:n=<n>, group:C=<g>,B=<g>, weak:C=..,B=..,M=.., file:<path>");
  app.add_option("--C", f.C, "group C for counting (Z/n, S3, S4, D4, products AxB, or a group file)");
  app.add_option("--B", f.B, "group B for counting");
  app.add_option("--M", f.M, "transitive C x B^op-set: point, cosets:<elements>, or a JSON action table");
  app.add_flag("--json", f.json, "machine-readable output");
  app.add_option("--tol", f.tol, "tolerance for float comparisons")->check(CLI::PositiveNumber);
  app.add_option("--backend", f.backend, "scalar backend")->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--evaluator", f.evaluator, "bracket evaluator")->check(CLI::IsMember({"element", "rep"}));
  app.add_option("--integrals", f.integrals, "normalized (eps(l) = 1) or counting (eps(l') = dim)")
      ->check(CLI::IsMember({"normalized", "counting"}));
  app.add_flag("--all-roots", f.all_roots, "print the invariant for all three cube roots xi");
  app.add_option("--cap", f.cap, "largest intermediate tensor size")->check(CLI::PositiveNumber);
  app.add_flag("--lenient", f.lenient, "accept non-strict diagrams");

  std::string diagram, moves_spec, out, hopf_file, fixtures;
  std::vector<int> only;

  auto* validate_cmd = app.add_subcommand("validate", "check the structural invariants of a diagram");
  validate_cmd->add_option("diagram", diagram, "catalog name or diagram file")->required();

  auto* catalog_cmd = app.add_subcommand("catalog", "list catalog diagrams or print one as JSON");
  catalog_cmd->add_option("name", diagram, "catalog name");

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a diagram");
  eval_cmd->require_subcommand(1);
  auto* bracket_cmd = eval_cmd->add_subcommand("bracket", "trisection bracket");
  auto* invariant_cmd = eval_cmd->add_subcommand("invariant", "normalized invariant");
  auto* count_cmd = eval_cmd->add_subcommand("count", "admissible labelling count");
  for (auto* c : {bracket_cmd, invariant_cmd, count_cmd})
    c->add_option("diagram", diagram, "catalog name or diagram file")->required();

  auto* moves_cmd = app.add_subcommand("moves", "trisection moves");
  moves_cmd->require_subcommand(1);
  auto* apply_cmd = moves_cmd->add_subcommand("apply", "apply a list of moves and print the result");
  apply_cmd->add_option("diagram", diagram, "catalog name or diagram file")->required();
  apply_cmd->add_option("moves", moves_spec, "JSON file or inline JSON with a move or a list of moves")->required();
  apply_cmd->add_option("-o,--output", out, "write the diagram here instead of stdout");

  auto* axioms_cmd = app.add_subcommand("axioms", "check Hopf, pairing and triplet axioms");
  axioms_cmd->add_option("--hopf", hopf_file, "structure-constant file to check instead of a triplet");

  auto* cross_cmd = app.add_subcommand("crosscheck", "compare independent evaluations of a diagram");
  cross_cmd->add_option("diagram", diagram, "catalog name or diagram file")->required();

  auto* self_cmd = app.add_subcommand("selftest", "run the acceptance suite");
  self_cmd->add_option("--fixtures", fixtures, "fixture directory");
  self_cmd->add_option("--criterion", only, "run only these criteria")->check(CLI::Range(1, kCriteria));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*validate_cmd) return cmd_validate(diagram, f);
    if (*catalog_cmd) return cmd_catalog(diagram, f);
    if (*bracket_cmd) return cmd_bracket(diagram, f);
    if (*invariant_cmd) return cmd_invariant(diagram, f);
    if (*count_cmd) return cmd_count(diagram, f);
    if (*apply_cmd) return cmd_moves(diagram, moves_spec, out, f);
    if (*axioms_cmd) return cmd_axioms(f, hopf_file);
    if (*cross_cmd) return cmd_crosscheck(diagram, f);
    if (*self_cmd) return cmd_selftest(f, fixtures, only);
  } catch (const Usage& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
