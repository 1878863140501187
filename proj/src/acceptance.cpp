#include "trisect/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <random>
#include <set>
#include <sstream>

#include "trisect/bracket.hpp"
#include "trisect/errors.hpp"
#include "trisect/io.hpp"
#include "trisect/labelcount.hpp"
#include "trisect/moves.hpp"

namespace trisect {

namespace {

struct Tally {
  int checks = 0;
  bool ok = true;
  double residual = 0;
  int failed = 0;
  std::vector<std::string> fails;

  void expect(bool c, const std::string& what, double res = 0) {
    ++checks;
    if (std::isfinite(res)) residual = std::max(residual, res);
    if (!c) {
      ok = false;
      ++failed;
      if (fails.size() < 6) fails.push_back(what);
    }
  }
  void axioms(const AxiomReport& r, const std::string& what, double tol = 0) {
    std::string worst;
    double m = -1;
    for (auto& [name, v] : r.residuals)
      if (v > m) {
        m = v;
        worst = name;
      }
    expect(r.ok(tol), what + " (" + worst + " residual " + std::to_string(r.max()) + ")", r.max());
  }
  void same(const Scalar& a, const Scalar& b, const std::string& what, double rel = 0) {
    double d = abs_diff(a, b);
    bool good = rel == 0 ? (a.exact() && b.exact() ? a == b : d <= 1e-12)
                         : d <= rel * std::max(1.0, std::abs(a.to_complex()));
    expect(good, what + ": " + a.str() + " vs " + b.str(), d);
  }
};

std::string describe(const Tally& t) {
  std::ostringstream os;
  if (t.ok) {
    os << t.checks << " checks";
  } else {
    os << t.failed << " of " << t.checks << " checks failed";
    for (auto& f : t.fails) os << "\n    " << f;
  }
  return os.str();
}

std::vector<Group> suite_groups() {
  return {cyclic(2), cyclic(3), cyclic(4), cyclic(5), cyclic(6), symmetric(3)};
}

// groups of order at most 6, up to isomorphism
std::vector<Group> small_groups() {
  return {trivial_group(), cyclic(2), cyclic(3), cyclic(4), direct_product(cyclic(2), cyclic(2)),
          cyclic(5),       cyclic(6), symmetric(3)};
}

// subgroups of index at most max_index, as sorted element lists
std::vector<std::vector<int>> subgroups(const Group& K, int max_index) {
  std::set<std::vector<int>> found;
  auto close = [&](std::vector<int> gens) {
    std::set<int> s = {K.e};
    std::vector<int> todo = {K.e};
    while (!todo.empty()) {
      int x = todo.back();
      todo.pop_back();
      for (int g : gens) {
        int y = K.mul(x, g);
        if (s.insert(y).second) todo.push_back(y);
      }
    }
    return std::vector<int>(s.begin(), s.end());
  };
  for (int a = 0; a < K.size(); ++a)
    for (int b = a; b < K.size(); ++b) found.insert(close({a, b}));
  std::vector<std::vector<int>> out;
  for (auto& h : found)
    if (K.size() / int(h.size()) <= max_index) out.push_back(h);
  return out;
}

std::vector<Rep> stabilizer_irreps(const Group& g) {
  if (g.abelian()) return abelian_characters(g);
  auto r = irreps_via_isomorphism(g, {symmetric(3), direct_product(symmetric(3), cyclic(2)), dihedral4()});
  if (!r) throw MissingIrreps("no built-in irreps for stabilizer " + g.name);
  return *r;
}

Scalar bracket(const TrisectionDiagram& d, const BracketConfig& cfg) { return trisection_bracket(d, cfg); }

// ------------------------------------------------------------ 1

void hopf_axioms(Tally& t) {
  for (auto& g : suite_groups()) {
    t.axioms(check_hopf_axioms(group_algebra(g)), "C[" + g.name + "]");
    t.axioms(check_hopf_axioms(function_algebra(g)), "C^" + g.name);
  }
  for (int n = 2; n <= 6; ++n) {
    auto k = kashaev_triplet(n);
    t.axioms(check_hopf_axioms(generalized_double(k.A, k.B, k.AB, false)), "D(A,B) kashaev n=" + std::to_string(n));
    t.axioms(check_hopf_axioms(generalized_double(k.B, k.C, k.BC, false)), "D(B,C) kashaev n=" + std::to_string(n));
    t.axioms(check_hopf_axioms(generalized_double(k.C, k.A, k.CA, false)), "D(C,A) kashaev n=" + std::to_string(n));
  }
}

// ------------------------------------------------------------ 2

void pairings(Tally& t) {
  auto triplet = [&](const HopfTriplet& h) {
    t.axioms(check_skew_pairing(h.A, h.B, h.AB), h.name + " tau_AB");
    t.axioms(check_skew_pairing(h.B, h.C, h.BC), h.name + " tau_BC");
    t.axioms(check_skew_pairing(h.C, h.A, h.CA), h.name + " tau_CA");
    t.axioms(check_triplet(h), h.name + " cyclic identity");
  };
  for (int n = 2; n <= 6; ++n) triplet(kashaev_triplet(n));
  for (auto& C : small_groups())
    for (auto& B : small_groups()) triplet(group_triplet(C, B));
}

// ------------------------------------------------------------ 3

void integrals(Tally& t) {
  std::vector<HopfAlgebra> algebras;
  for (auto& g : suite_groups()) {
    algebras.push_back(group_algebra(g));
    algebras.push_back(function_algebra(g));
  }
  std::vector<std::array<HopfAlgebra, 3>> doubles;
  for (int n = 2; n <= 6; ++n) {
    auto k = kashaev_triplet(n);
    algebras.insert(algebras.end(), {k.A, k.B, k.C});
    doubles.push_back({k.A, k.B, generalized_double(k.A, k.B, k.AB, false)});
    doubles.push_back({k.B, k.C, generalized_double(k.B, k.C, k.BC, false)});
    doubles.push_back({k.C, k.A, generalized_double(k.C, k.A, k.CA, false)});
  }
  auto g = group_triplet(symmetric(3), cyclic(2));
  algebras.insert(algebras.end(), {g.A, g.B, g.C});
  doubles.push_back({g.A, g.B, generalized_double(g.A, g.B, g.AB, false)});
  doubles.push_back({g.C, g.A, generalized_double(g.C, g.A, g.CA, false)});
  for (auto& d : doubles) algebras.push_back(d[2]);

  for (auto& h : algebras) {
    SVec l = compute_integral(h);
    t.axioms(check_integral(h, l), "integral of " + h.name);
    t.same(h_counit(h, l), Scalar(h.dim), "eps(l') = dim for " + h.name);
  }
  for (auto& [a, b, d] : doubles) {
    SVec la = normalized_integral(a), lb = normalized_integral(b), l;
    for (auto& [i, x] : la)
      for (auto& [j, y] : lb) l.push_back({i * b.dim + j, x * y});
    t.axioms(check_integral(d, l), "l_A (x) l_B in " + d.name);
    t.expect(!h_counit(d, l).is_zero(), "l_A (x) l_B normalisable in " + d.name);
  }
}

// ------------------------------------------------------------ 4

void weak(Tally& t) {
  std::vector<Group> gs = {trivial_group(), cyclic(2), cyclic(3), cyclic(4), direct_product(cyclic(2), cyclic(2)),
                           cyclic(6), symmetric(3)};
  for (auto& C : gs)
    for (auto& B : gs) {
      if (C.size() * B.size() > 12) continue;
      Group K = k_group(C, B);
      for (auto& H : subgroups(K, 3)) {
        GSet M = coset_set(K, H);
        std::string name = "K=" + C.name + "x" + B.name + "^op, |M|=" + std::to_string(M.size());
        HopfAlgebra h = weak_smash(M), hd = weak_smash_dual(M);
        t.axioms(check_hopf_axioms(h), name + " weak axioms");
        t.axioms(check_hopf_axioms(hd), name + " dual weak axioms");
        t.axioms(check_weak_integral(h, weak_smash_integral(M)), name + " integral");
        t.axioms(check_weak_integral(hd, weak_dual_integral(M)), name + " dual integral");
        auto reps = weak_simple_reps(M, stabilizer_irreps);
        long total = 0;
        for (auto& r : reps) {
          total += long(r.dim) * r.dim;
          if (h.dim <= 48) t.axioms(check_rep(h, r), name + " simple rep " + r.name);
        }
        t.expect(total == long(M.size()) * M.size() * K.size(),
                 name + ": sum dim^2 = " + std::to_string(total), double(std::labs(total - h.dim)));
      }
    }
}

// ------------------------------------------------------------ 5

struct Moved {
  std::string what;
  TrisectionDiagram before, after;
};

std::vector<Moved> move_cases() {
  std::vector<Moved> out;
  auto add = [&](const std::string& w, const TrisectionDiagram& a, const TrisectionDiagram& b) {
    out.push_back({w, a, b});
  };
  for (auto [name, d] : {std::pair{std::string("s4"), standard_s4()}, std::pair{std::string("cp2"), cp2()}}) {
    for (auto& c : d.curves) {
      if (c.visits.size() > 1) add(name + " shift " + c.id, d, shift_basepoint(d, c.id, 1));
      add(name + " reverse " + c.id, d, reverse_orientation(d, c.id));
    }
    // two-point moves between the first curves of each colour pair
    auto first = [&](Color col) { return d.curves[d.curves_of(col).front()].id; };
    std::vector<std::pair<std::string, std::string>> pairs = {
        {first(Color::Red), first(Color::Blue)}, {first(Color::Blue), first(Color::Green)},
        {first(Color::Green), first(Color::Red)}};
    TrisectionDiagram inserted = d;
    for (auto& [a, b] : pairs)
      for (int sign : {1, -1}) {
        auto i = two_point_insert(d, a, 0, b, 0, sign, "xp", "xq");
        add(name + " insert " + a + "/" + b + " sign " + std::to_string(sign), d, i);
        add(name + " delete " + a + "/" + b + " sign " + std::to_string(sign), i, two_point_delete(i, "xp", "xq"));
        if (sign == 1 && a == pairs.front().first) inserted = i;
      }
    // three-point flips on every triangle of the diagram and of one insertion
    int flips = 0;
    for (auto* base : {&d, &inserted}) {
      auto& xs = base->crossings;
      for (size_t i = 0; i < xs.size(); ++i)
        for (size_t j = 0; j < xs.size(); ++j)
          for (size_t k = 0; k < xs.size(); ++k) {
            if (i == j || j == k || i == k || flips >= 6) continue;
            try {
              auto f = three_point_flip(*base, xs[i].id, xs[j].id, xs[k].id);
              add(name + " flip " + xs[i].id + "," + xs[j].id + "," + xs[k].id, *base, f);
              ++flips;
            } catch (const MoveNotApplicable&) {
            }
          }
    }
  }
  // handle slides need two curves of one colour
  for (auto [name, d] : {std::pair{std::string("s4"), standard_s4()}, std::pair{std::string("s(cp2)"), stabilize(cp2())}}) {
    int slides = 0;
    for (auto& a : d.curves)
      for (auto& b : d.curves) {
        if (a.id == b.id || a.color != b.color || slides >= 8) continue;
        for (int dir : {1, -1}) {
          add(name + " slide " + a.id + " over " + b.id + " dir " + std::to_string(dir), d,
              handle_slide(d, a.id, b.id, 0, 0, dir));
          ++slides;
        }
      }
  }
  return out;
}

void move_invariance(Tally& t) {
  auto cases = move_cases();
  std::set<std::string> kinds;
  for (auto& c : cases) {
    std::istringstream words(c.what);
    std::string diagram, kind;
    words >> diagram >> kind;
    kinds.insert(kind);
  }
  for (auto k : {"shift", "reverse", "insert", "delete", "flip", "slide"})
    t.expect(kinds.count(k) > 0, std::string("no ") + k + " case generated");
  for (auto& tr : {kashaev_triplet(2), kashaev_triplet(3), group_triplet(cyclic(2), cyclic(3))}) {
    auto cfg = default_config(tr);
    auto fcfg = to_float(cfg);
    for (auto& c : cases) {
      t.expect(validate(c.after).ok(), tr.name + " " + c.what + ": invalid result");
      t.same(bracket(c.after, cfg), bracket(c.before, cfg), tr.name + " " + c.what);
      t.same(bracket(c.after, fcfg), bracket(c.before, cfg), tr.name + " float " + c.what, 1e-9);
    }
    for (auto d : {standard_s4(), cp2()}) {
      auto a = invariant(d, cfg).value, b = invariant(stabilize(d), cfg).value;
      t.expect(same_value(a, b), tr.name + " stabilize: " + a.str() + " vs " + b.str(),
               std::abs(a.to_complex() - b.to_complex()));
    }
  }
}

// ------------------------------------------------------------ 6

void multiplicativity(Tally& t) {
  for (auto& tr : {kashaev_triplet(2), kashaev_triplet(3), group_triplet(cyclic(2), cyclic(3))}) {
    auto cfg = default_config(tr);
    for (auto a : {std::string("s4"), std::string("cp2")})
      for (auto b : {std::string("s4"), std::string("cp2")}) {
        auto r = bracket_multiplicativity_check(catalog(a), catalog(b), cfg);
        t.expect(r.ok, tr.name + " " + a + "#" + b + ": " + r.detail, r.residual);
      }
  }
}

// ------------------------------------------------------------ 7

void backends(Tally& t) {
  std::vector<HopfTriplet> ts = {kashaev_triplet(2), kashaev_triplet(3), group_triplet(cyclic(2), cyclic(3)),
                                 group_triplet(cyclic(3), cyclic(2)),
                                 group_triplet(direct_product(cyclic(2), cyclic(2)), cyclic(2))};
  std::array<Scalar, 3> z = {Scalar(2), Scalar(3), Scalar::rational(1, 5)};
  for (auto& tr : ts) {
    auto e = default_config(tr), r = default_config(tr, Evaluator::RepBased);
    for (auto d : {standard_s4(), cp2(), stabilize(cp2())}) {
      auto rep = cross_check(d, e, r);
      t.expect(rep.ok, tr.name + ": " + rep.detail, rep.residual);
    }
    for (auto base : {e, r}) {
      auto scaled = base;
      for (int i = 0; i < 3; ++i) scaled.integrals[i] = svec_scale(base.integrals[i], z[i]);
      for (auto d : {standard_s4(), cp2()}) {
        Scalar f(1);
        for (int g = 0; g < d.genus; ++g) f *= z[0] * z[1] * z[2];
        t.same(bracket(d, scaled), f * bracket(d, base),
               tr.name + (base.evaluator == Evaluator::RepBased ? " rep" : " element") + " rescaling, genus " +
                   std::to_string(d.genus));
      }
    }
  }
}

// ------------------------------------------------------------ 8

// direct check of both admissibility conditions over every labelling
mpz_class naive_admissible(const EmbeddedDiagram& e, const WeakConfig& cfg, std::optional<int> boundary) {
  const auto& d = e.base;
  std::vector<const Curve*> labelled;
  for (auto& c : d.curves)
    if (c.color != Color::Red) labelled.push_back(&c);
  mpz_class count = 0;
  CurveLabels cl;
  std::map<std::string, int> rl;
  std::function<void(size_t)> regions = [&](size_t i) {
    if (i == e.regions.size()) {
      for (auto* c : labelled) {
        int lab = cl[c->id];
        for (auto& [left, right] : e.segment_sides.at(c->id)) {
          int m = rl[left];
          int want = c->color == Color::Green ? cfg.M.act[lab * cfg.B.size() + cfg.B.e][m]
                                              : cfg.M.act[cfg.C.e * cfg.B.size() + lab][m];
          if (rl[right] != want) return;
        }
      }
      ++count;
      return;
    }
    for (int m = 0; m < cfg.M.size(); ++m) {
      if (boundary && e.boundary_region == e.regions[i] && m != *boundary) continue;
      rl[e.regions[i]] = m;
      regions(i + 1);
    }
  };
  std::function<void(size_t)> curves = [&](size_t i) {
    if (i == labelled.size()) {
      for (int r : d.curves_of(Color::Red))
        if (red_product(d, d.curves[r].id, cl, cfg.C, cfg.B) != cfg.K.e) return;
      regions(0);
      return;
    }
    int n = labelled[i]->color == Color::Green ? cfg.C.size() : cfg.B.size();
    for (int v = 0; v < n; ++v) {
      cl[labelled[i]->id] = v;
      curves(i + 1);
    }
  };
  curves(0);
  return count;
}

std::vector<WeakConfig> count_configs() {
  std::vector<WeakConfig> out;
  std::vector<Group> gs = {cyclic(2), cyclic(3)};
  for (auto& C : gs)
    for (auto& B : gs) {
      Group K = k_group(C, B);
      for (auto& H : subgroups(K, 3)) {
        WeakConfig w = make_weak_config(C, B);
        w.M = coset_set(K, H);
        out.push_back(w);
      }
    }
  return out;
}

std::string config_name(const WeakConfig& w) {
  return "C=" + w.C.name + ",B=" + w.B.name + ",|M|=" + std::to_string(w.M.size());
}

void counting(Tally& t) {
  auto sp = *embedded_catalog("s4'");
  auto s4 = embedded_s4(), c = embedded_cp2();
  for (auto& w : count_configs()) {
    std::string name = config_name(w);
    mpz_class bc = w.B.size() * w.C.size();
    for (int m = 0; m < w.M.size(); ++m) {
      mpz_class l = count_admissible(sp, w, m);
      t.expect(l == bc, name + " |l_st| for m=" + std::to_string(m) + " is " + l.get_str(),
               std::abs(mpz_class(l - bc).get_d()));
    }
    for (auto* e : {&s4, &c}) {
      mpz_class naive = naive_admissible(*e, w, std::nullopt);
      mpz_class fast = count_admissible(*e, w);
      mpz_class factor = w.M.size() * count_curve_labellings(e->base, w.C, w.B);
      t.expect(naive == fast && fast == factor,
               name + " factorization: brute " + naive.get_str() + ", count " + fast.get_str() + ", |M| |l^{B,C}| " +
                   factor.get_str(),
               std::abs(mpz_class(naive - factor).get_d()));
    }
    Scalar av = averaged_evaluation(c, w), brute = brute_force_sum(c, w);
    t.same(brute, av, name + " cp2 averaged evaluation");
  }
}

// ------------------------------------------------------------ 9

void invariant_values(Tally& t) {
  std::vector<HopfTriplet> ts;
  for (int n = 2; n <= 6; ++n) ts.push_back(kashaev_triplet(n));
  for (auto& C : {cyclic(2), cyclic(3), symmetric(3)})
    for (auto& B : {cyclic(2), cyclic(3)}) ts.push_back(group_triplet(C, B));
  Group z2 = cyclic(2);
  ts.push_back(weak_triplet(z2, z2, point_set(k_group(z2, z2))));
  for (auto& tr : ts) {
    auto cfg = default_config(tr);
    try {
      auto v = invariant(standard_s4(), cfg).value;
      t.expect(same_value(v, RootScalar(Scalar(1))), tr.name + ": I(S4) = " + v.str(),
               std::abs(v.to_complex() - 1.0));
    } catch (const StabilizationObstruction&) {
      // vanishing <S4> is excluded from the claim
    }
  }
  for (auto& C : {cyclic(2), cyclic(3), symmetric(3)})
    for (auto& B : {cyclic(2), cyclic(3)}) {
      auto w = make_weak_config(C, B);
      w.stab_irreps = stabilizer_irreps;
      auto v = group_count_invariant(standard_s4(), w);
      t.expect(same_value(v, RootScalar(Scalar(1))), config_name(w) + ": |S4| = " + v.str(),
               std::abs(v.to_complex() - 1.0));
      for (auto d : {standard_s4(), cp2(), stabilize(cp2())}) {
        auto r = coincidence_check(d, w);
        t.expect(r.ok, config_name(w) + " coincidence genus " + std::to_string(d.genus) + ": " + r.detail, r.residual);
      }
    }
}

// ------------------------------------------------------------ 10

void euler(Tally& t) {
  t.expect(euler_characteristic(3, 1) == 2, "chi(3,1)");
  t.expect(euler_characteristic(1, 0) == 3, "chi(1,0)");
  auto s = standard_s4(), c = cp2();
  t.expect(s.declared_k && euler_characteristic(s.genus, *s.declared_k) == 2, "s4 metadata gives chi = 2");
  t.expect(c.declared_k && euler_characteristic(c.genus, *c.declared_k) == 3, "cp2 metadata gives chi = 3");
}

// ------------------------------------------------------------ 11

void kashaev_stability(Tally& t, const std::string& dir) {
  std::string path = (std::filesystem::path(dir) / "kashaev_cp2.json").string();
  ojson fx = ojson::parse(read_file(path));
  for (int n = 2; n <= 5; ++n) {
    std::string key = std::to_string(n);
    if (!fx.contains(key)) {
      t.expect(false, path + ": no entry for n=" + key);
      continue;
    }
    Scalar want = scalar_from_json(fx[key]["value"], key + ".value");
    auto cfg = default_config(kashaev_triplet(n));
    RootScalar base = invariant(cp2(), cfg).value;
    t.expect(same_value(base, RootScalar(want)), "n=" + key + ": I(cp2) = " + base.str() + ", fixture " + want.str(),
             std::abs(base.to_complex() - want.to_complex()));
    std::mt19937_64 rng(1000 + n);
    for (int copy = 0; copy < 20; ++copy) {
      TrisectionDiagram d = cp2();
      std::string trail;
      for (int k = 0; k < 5; ++k) {
        MoveSpec m = random_move(d, rng);
        trail += std::string(k ? "," : "") + variant_name(m.variant);
        d = apply_move(d, m);
      }
      RootScalar v = invariant(d, cfg).value;
      bool identical = v.coeff.exact() && base.coeff.exact() ? same_value(v, base, 0.0) : false;
      t.expect(identical, "n=" + key + " copy " + std::to_string(copy) + " [" + trail + "]: " + v.str(),
               std::abs(v.to_complex() - base.to_complex()));
    }
  }
}

}  // namespace

std::string default_fixture_dir() {
#ifdef TRISECT_FIXTURE_DIR
  return TRISECT_FIXTURE_DIR;
#else
  return "tests/fixtures";
#endif
}

const char* criterion_title(int id) {
  switch (id) {
    case 1: return "Hopf axioms";
    case 2: return "skew pairings and triplets";
    case 3: return "integral identities";
    case 4: return "weak Hopf algebras";
    case 5: return "move invariance";
    case 6: return "connected-sum multiplicativity";
    case 7: return "backend agreement";
    case 8: return "counting oracles";
    case 9: return "invariant values";
    case 10: return "Euler metadata";
    case 11: return "Kashaev stability";
  }
  return "unknown";
}

CriterionResult run_criterion(int id, const SuiteOptions& opt) {
  CriterionResult r;
  r.id = id;
  r.title = criterion_title(id);
  Tally t;
  auto t0 = std::chrono::steady_clock::now();
  try {
    switch (id) {
      case 1: hopf_axioms(t); break;
      case 2: pairings(t); break;
      case 3: integrals(t); break;
      case 4: weak(t); break;
      case 5: move_invariance(t); break;
      case 6: multiplicativity(t); break;
      case 7: backends(t); break;
      case 8: counting(t); break;
      case 9: invariant_values(t); break;
      case 10: euler(t); break;
      case 11: kashaev_stability(t, opt.fixture_dir.empty() ? default_fixture_dir() : opt.fixture_dir); break;
      default: throw InvalidInput("no criterion " + std::to_string(id));
    }
  } catch (const std::exception& e) {
    t.expect(false, std::string("error: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.ok = t.ok;
  r.residual = t.residual;
  r.checks = t.checks;
  r.detail = describe(t);
  return r;
}

std::vector<CriterionResult> run_suite(const SuiteOptions& opt,
                                       const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriteria; ++id) {
    if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), id) == opt.only.end()) continue;
    out.push_back(run_criterion(id, opt));
    if (on_result) on_result(out.back());
  }
  return out;
}

}  // namespace trisect
