#include "trisect/labelcount.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <thread>

#include "trisect/errors.hpp"

namespace trisect {

int worker_count() {
  if (const char* s = std::getenv("TRISECT_THREADS")) {
    int n = std::atoi(s);
    if (n >= 1) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

WeakConfig make_weak_config(const Group& C, const Group& B, const std::string& gset_spec, bool strict) {
  WeakConfig cfg;
  cfg.C = C;
  cfg.B = B;
  cfg.K = k_group(C, B);
  cfg.M = parse_gset(cfg.K, gset_spec);
  if (strict && !cfg.M.transitive()) throw InvalidInput("M is not a transitive C x B^op-set");
  return cfg;
}

namespace {

// one factor of a red holonomy: the labelled curve (position in the
// enumeration order) and the sign of the crossing
struct Factor {
  int slot;
  bool green;
  int sign;
};

struct RedCurve {
  std::string id;
  std::vector<Factor> factors;  // in visit order
  int ready = -1;               // depth after which all partners are labelled
};

struct Plan {
  std::vector<int> order;  // curve indices of labelled curves
  std::vector<bool> green;
  std::vector<RedCurve> reds;
  int free_green = 0, free_blue = 0;
};

int k_of(const Group&, const Group& B, int c, int b) { return c * B.size() + b; }

int factor_element(const Group& C, const Group& B, bool green, int label, int sign) {
  if (green) return k_of(C, B, sign > 0 ? C.inv[label] : label, B.e);
  return k_of(C, B, C.e, sign > 0 ? label : B.inv[label]);
}

Plan make_plan(const TrisectionDiagram& d, bool include_free) {
  Plan p;
  std::vector<int> slot(d.curves.size(), -1);
  auto add = [&](int ci) {
    if (slot[ci] >= 0) return;
    slot[ci] = int(p.order.size());
    p.order.push_back(ci);
    p.green.push_back(d.curves[ci].color == Color::Green);
  };
  for (size_t i = 0; i < d.curves.size(); ++i) {
    if (d.curves[i].color != Color::Red) continue;
    for (auto& v : d.curves[i].visits) {
      auto& x = d.crossing(v);
      const auto& other = x.ends[0].curve == d.curves[i].id ? x.ends[1] : x.ends[0];
      add(d.curve_index(other.curve));
    }
  }
  for (size_t i = 0; i < d.curves.size(); ++i) {
    if (d.curves[i].color == Color::Red || slot[i] >= 0) continue;
    if (include_free)
      add(int(i));
    else if (d.curves[i].color == Color::Green)
      ++p.free_green;
    else
      ++p.free_blue;
  }
  for (auto& c : d.curves) {
    if (c.color != Color::Red) continue;
    RedCurve r;
    r.id = c.id;
    for (auto& v : c.visits) {
      auto& x = d.crossing(v);
      const auto& other = x.ends[0].curve == c.id ? x.ends[1] : x.ends[0];
      int s = slot[d.curve_index(other.curve)];
      r.factors.push_back({s, p.green[s], x.sign});
      r.ready = std::max(r.ready, s);
    }
    p.reds.push_back(r);
  }
  return p;
}

int holonomy(const RedCurve& r, const std::vector<int>& labels, const Group& C, const Group& B, const Group& K) {
  int acc = K.e;
  for (auto& f : r.factors) acc = K.mul(factor_element(C, B, f.green, labels[f.slot], f.sign), acc);
  return acc;
}

// depth-first enumeration of labellings with trivial red products; the leaf
// callback returns the weight of a labelling
mpz_class enumerate(const Plan& p, const Group& C, const Group& B,
                    const std::function<mpz_class(const std::vector<int>&)>& leaf) {
  Group K = k_group(C, B);
  int L = int(p.order.size());
  std::vector<std::vector<const RedCurve*>> ready(L + 1);
  for (auto& r : p.reds) ready[r.ready + 1].push_back(&r);
  // red curves without partners
  for (auto* r : ready[0])
    if (holonomy(*r, {}, C, B, K) != K.e) return 0;
  if (L == 0) return leaf({});

  auto run = [&](int first_lo, int first_hi) {
    mpz_class total = 0;
    std::vector<int> labels(L, 0);
    std::function<void(int)> go = [&](int depth) {
      if (depth == L) {
        total += leaf(labels);
        return;
      }
      int n = p.green[depth] ? C.size() : B.size();
      int lo = depth == 0 ? first_lo : 0, hi = depth == 0 ? first_hi : n;
      for (int v = lo; v < hi; ++v) {
        labels[depth] = v;
        bool ok = true;
        for (auto* r : ready[depth + 1])
          if (holonomy(*r, labels, C, B, K) != K.e) {
            ok = false;
            break;
          }
        if (ok) go(depth + 1);
      }
    };
    go(0);
    return total;
  };

  int n0 = p.green[0] ? C.size() : B.size();
  int workers = std::min(worker_count(), n0);
  if (workers <= 1) return run(0, n0);
  std::vector<mpz_class> parts(workers);
  std::vector<std::thread> threads;
  std::exception_ptr err;
  std::mutex mu;
  for (int w = 0; w < workers; ++w)
    threads.emplace_back([&, w] {
      try {
        parts[w] = run(n0 * w / workers, n0 * (w + 1) / workers);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        err = std::current_exception();
      }
    });
  for (auto& t : threads) t.join();
  if (err) std::rethrow_exception(err);
  mpz_class total = 0;
  for (auto& x : parts) total += x;
  return total;
}

mpz_class ipow(long b, long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), b, e);
  return r;
}

// region constraints: right = k . left along green and blue segments
struct Edge {
  int from, to, slot;
  bool green;
};

struct RegionGraph {
  std::vector<std::string> regions;
  std::vector<Edge> edges;
  int boundary = -1;
};

RegionGraph region_graph(const EmbeddedDiagram& e, const Plan& p) {
  if (e.regions.empty()) throw InvalidInput("region data required: use an embedded diagram");
  RegionGraph g;
  g.regions = e.regions;
  auto rid = [&](const std::string& r) {
    auto it = std::find(g.regions.begin(), g.regions.end(), r);
    if (it == g.regions.end()) throw InvalidInput("unknown region '" + r + "'");
    return int(it - g.regions.begin());
  };
  if (e.boundary_region) g.boundary = rid(*e.boundary_region);
  const auto& d = e.base;
  for (size_t s = 0; s < p.order.size(); ++s) {
    auto& c = d.curves[p.order[s]];
    auto it = e.segment_sides.find(c.id);
    if (it == e.segment_sides.end()) throw InvalidInput("curve '" + c.id + "' has no segment sides");
    for (auto& [l, r] : it->second) g.edges.push_back({rid(l), rid(r), int(s), p.green[s]});
  }
  return g;
}

int edge_element(const WeakConfig& cfg, const Edge& e, const std::vector<int>& labels) {
  return e.green ? k_of(cfg.C, cfg.B, labels[e.slot], cfg.B.e) : k_of(cfg.C, cfg.B, cfg.C.e, labels[e.slot]);
}

mpz_class region_count(const RegionGraph& g, const WeakConfig& cfg, const std::vector<int>& labels,
                       std::optional<int> boundary_label) {
  int nr = int(g.regions.size()), nm = cfg.M.size();
  std::vector<std::vector<std::pair<int, int>>> adj(nr);  // (neighbour, k) with label[nb] = k . label[here]
  for (auto& e : g.edges) {
    int k = edge_element(cfg, e, labels);
    adj[e.from].push_back({e.to, k});
    adj[e.to].push_back({e.from, cfg.K.inv[k]});
  }
  std::vector<int> comp(nr, -1);
  mpz_class total = 1;
  for (int root = 0; root < nr; ++root) {
    if (comp[root] >= 0) continue;
    std::vector<int> members;
    std::vector<int> stack = {root};
    comp[root] = root;
    while (!stack.empty()) {
      int r = stack.back();
      stack.pop_back();
      members.push_back(r);
      for (auto [nb, k] : adj[r])
        if (comp[nb] < 0) {
          comp[nb] = root;
          stack.push_back(nb);
        }
    }
    int start = root;
    bool fixed = false;
    if (g.boundary >= 0 && comp[g.boundary] == root && boundary_label) {
      start = g.boundary;
      fixed = true;
    }
    long good = 0;
    for (int m0 = 0; m0 < nm; ++m0) {
      if (fixed && m0 != *boundary_label) continue;
      std::vector<int> lab(nr, -1);
      lab[start] = m0;
      std::vector<int> st = {start};
      bool ok = true;
      while (!st.empty() && ok) {
        int r = st.back();
        st.pop_back();
        for (auto [nb, k] : adj[r]) {
          int want = cfg.M.act[k][lab[r]];
          if (lab[nb] < 0) {
            lab[nb] = want;
            st.push_back(nb);
          } else if (lab[nb] != want) {
            ok = false;
            break;
          }
        }
      }
      if (ok) ++good;
    }
    total *= good;
    if (total == 0) return 0;
  }
  return total;
}

void check_boundary(const WeakConfig& cfg, std::optional<int> boundary_label) {
  if (boundary_label && (*boundary_label < 0 || *boundary_label >= cfg.M.size()))
    throw InvalidInput("boundary label outside M");
}

}  // namespace

int red_product(const TrisectionDiagram& d, const std::string& red_curve, const CurveLabels& labels, const Group& C,
                const Group& B) {
  const Curve& c = d.curve(red_curve);
  if (c.color != Color::Red) throw InvalidInput("red_product: '" + red_curve + "' is not red");
  Group K = k_group(C, B);
  int acc = K.e;
  for (auto& v : c.visits) {
    auto& x = d.crossing(v);
    const auto& other = x.ends[0].curve == c.id ? x.ends[1] : x.ends[0];
    auto it = labels.find(other.curve);
    if (it == labels.end()) throw InvalidInput("red_product: curve '" + other.curve + "' is unlabelled");
    bool green = d.curve(other.curve).color == Color::Green;
    acc = K.mul(factor_element(C, B, green, it->second, x.sign), acc);
  }
  return acc;
}

mpz_class count_curve_labellings(const TrisectionDiagram& d, const Group& C, const Group& B) {
  Plan p = make_plan(d, false);
  mpz_class n = enumerate(p, C, B, [](const std::vector<int>&) { return mpz_class(1); });
  return n * ipow(C.size(), p.free_green) * ipow(B.size(), p.free_blue);
}

mpz_class count_admissible(const EmbeddedDiagram& e, const WeakConfig& cfg, std::optional<int> boundary_label) {
  check_boundary(cfg, boundary_label);
  Plan p = make_plan(e.base, true);
  RegionGraph g = region_graph(e, p);
  return enumerate(p, cfg.C, cfg.B,
                   [&](const std::vector<int>& labels) { return region_count(g, cfg, labels, boundary_label); });
}

Scalar averaged_evaluation(const EmbeddedDiagram& e, const WeakConfig& cfg, std::optional<int> boundary_label) {
  mpz_class l = count_admissible(e, cfg, boundary_label);
  long r = long(e.base.curves_of(Color::Red).size());
  mpz_class v = l * ipow(cfg.B.size(), r) * ipow(cfg.C.size(), r);
  return Scalar(mpq_class(v));
}

namespace {

struct RepCache {
  std::vector<Rep> reps;
  // per rep: rho(1 (x) 1 (x) k) for every k
  std::vector<std::vector<Matrix>> group_part;
};

RepCache rep_cache(const WeakConfig& cfg) {
  RepCache rc;
  rc.reps = weak_simple_reps(cfg.M, cfg.stab_irreps);
  int nm = cfg.M.size();
  for (auto& r : rc.reps) {
    std::vector<Matrix> gp;
    for (int k = 0; k < cfg.K.size(); ++k) {
      Matrix m(size_t(r.dim) * r.dim);
      for (int a = 0; a < nm; ++a)
        for (int b = 0; b < nm; ++b) {
          const Matrix& x = r.mats[weak_index(cfg.M, a, b, k)];
          for (size_t i = 0; i < m.size(); ++i)
            if (!x[i].is_zero()) m[i] += x[i];
        }
      gp.push_back(std::move(m));
    }
    rc.group_part.push_back(std::move(gp));
  }
  return rc;
}

Scalar evaluate_with(const EmbeddedDiagram& e, const WeakConfig& cfg, const FullLabelling& l, const RepCache& rc) {
  const auto& d = e.base;
  auto region = [&](const std::string& r) {
    auto it = l.regions.find(r);
    if (it == l.regions.end()) throw InvalidInput("region '" + r + "' is unlabelled");
    return it->second;
  };
  auto label = [&](const std::string& c) {
    auto it = l.curves.find(c);
    if (it == l.curves.end()) throw InvalidInput("curve '" + c + "' is unlabelled");
    return it->second;
  };
  // step 1-2: delta factors on green and blue segments
  for (auto& c : d.curves) {
    if (c.color == Color::Red) continue;
    auto it = e.segment_sides.find(c.id);
    if (it == e.segment_sides.end()) throw InvalidInput("curve '" + c.id + "' has no segment sides");
    int k = c.color == Color::Green ? k_of(cfg.C, cfg.B, label(c.id), cfg.B.e)
                                    : k_of(cfg.C, cfg.B, cfg.C.e, label(c.id));
    for (auto& [left, right] : it->second)
      if (region(right) != cfg.M.act[k][region(left)]) return Scalar(0);
  }
  // step 3-4: trace of the ordered operator product on each red curve
  Scalar total(1);
  for (auto& c : d.curves) {
    if (c.color != Color::Red) continue;
    std::vector<int> gs;
    for (auto& v : c.visits) {
      auto& x = d.crossing(v);
      const auto& other = x.ends[0].curve == c.id ? x.ends[1] : x.ends[0];
      bool green = d.curve(other.curve).color == Color::Green;
      gs.push_back(factor_element(cfg.C, cfg.B, green, label(other.curve), x.sign));
    }
    auto& sides = e.segment_sides.at(c.id).back();  // basepoint segment
    int m2 = region(sides.first), m1 = region(sides.second);
    Scalar s;
    for (size_t ri = 0; ri < rc.reps.size(); ++ri) {
      const Rep& r = rc.reps[ri];
      Matrix E = r.mats[weak_index(cfg.M, m1, m2, cfg.K.e)];
      for (int g : gs) E = mat_mul(rc.group_part[ri][g], E, r.dim);
      s += Scalar(r.dim) * mat_trace(E, r.dim);
    }
    total *= s;
    if (total.is_zero()) return total;
  }
  return total;
}

}  // namespace

Scalar brute_force_evaluation(const EmbeddedDiagram& e, const WeakConfig& cfg, const FullLabelling& l) {
  return evaluate_with(e, cfg, l, rep_cache(cfg));
}

Scalar brute_force_sum(const EmbeddedDiagram& e, const WeakConfig& cfg, std::optional<int> boundary_label) {
  check_boundary(cfg, boundary_label);
  if (e.regions.empty()) throw InvalidInput("region data required: use an embedded diagram");
  RepCache rc = rep_cache(cfg);
  const auto& d = e.base;
  std::vector<int> labelled;
  for (size_t i = 0; i < d.curves.size(); ++i)
    if (d.curves[i].color != Color::Red) labelled.push_back(int(i));
  int nr = int(e.regions.size());
  double space = std::pow(double(std::max(cfg.C.size(), cfg.B.size())), double(labelled.size())) *
                 std::pow(double(cfg.M.size()), double(nr));
  if (space > 5e6) throw ResourceExceeded("brute force labelling space too large");
  Scalar total;
  FullLabelling l;
  std::function<void(size_t)> regions = [&](size_t i) {
    if (i == size_t(nr)) {
      total += evaluate_with(e, cfg, l, rc);
      return;
    }
    const std::string& r = e.regions[i];
    for (int m = 0; m < cfg.M.size(); ++m) {
      if (boundary_label && e.boundary_region == r && m != *boundary_label) continue;
      l.regions[r] = m;
      regions(i + 1);
    }
  };
  std::function<void(size_t)> curves = [&](size_t i) {
    if (i == labelled.size()) {
      regions(0);
      return;
    }
    auto& c = d.curves[labelled[i]];
    int n = c.color == Color::Green ? cfg.C.size() : cfg.B.size();
    for (int v = 0; v < n; ++v) {
      l.curves[c.id] = v;
      curves(i + 1);
    }
  };
  curves(0);
  return total;
}

mpz_class labelling_count(const TrisectionDiagram& t, const WeakConfig& cfg) {
  return mpz_class(cfg.M.size()) * count_curve_labellings(t, cfg.C, cfg.B);
}

RootScalar group_count_invariant(const TrisectionDiagram& t, const WeakConfig& cfg) {
  RootScalar r = RootScalar::power(Scalar(long(cfg.B.size()) * cfg.C.size()), -t.genus);
  r *= Scalar(mpq_class(labelling_count(t, cfg)));
  return r;
}

CheckReport coincidence_check(const TrisectionDiagram& t, const WeakConfig& cfg) {
  CheckReport rep;
  RootScalar a = group_count_invariant(t, cfg);
  InvariantResult inv = invariant(t, counting_config(group_triplet(cfg.C, cfg.B)));
  RootScalar b = inv.value;
  b *= Scalar(long(cfg.M.size()));
  rep.ok = same_value(a, b);
  rep.residual = std::abs(a.to_complex() - b.to_complex());
  rep.detail = "|T| = " + a.str() + ", |M| I = " + b.str();
  return rep;
}

}  // namespace trisect
