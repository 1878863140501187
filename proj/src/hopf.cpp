#include "trisect/hopf.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "trisect/errors.hpp"

namespace trisect {

namespace {

// sort by index, sum duplicates, drop zeros
SVec combine(std::vector<std::pair<int, Scalar>> terms) {
  std::sort(terms.begin(), terms.end(), [](auto& x, auto& y) { return x.first < y.first; });
  SVec out;
  for (auto& t : terms) {
    if (!out.empty() && out.back().first == t.first)
      out.back().second += t.second;
    else
      out.push_back(std::move(t));
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](auto& t) { return t.second.is_zero(); }), out.end());
  return out;
}

using Key = long long;
using TMap = std::map<Key, Scalar>;

void tadd(TMap& m, Key k, const Scalar& v) {
  auto it = m.find(k);
  if (it == m.end())
    m.emplace(k, v);
  else
    it->second += v;
}

double tmap_residual(const TMap& x, const TMap& y) {
  double r = 0;
  static const Scalar zero;
  for (auto& [k, v] : x) {
    auto it = y.find(k);
    r = std::max(r, abs_diff(v, it == y.end() ? zero : it->second));
  }
  for (auto& [k, v] : y)
    if (!x.count(k)) r = std::max(r, abs_diff(v, zero));
  return r;
}

TMap comul_map(const std::vector<Term2>& t, int n) {
  TMap m;
  for (auto& x : t) tadd(m, Key(x.a) * n + x.b, x.c);
  return m;
}

// (Delta x id) Delta(e_i) as triples
struct Term3 {
  int a, b, c;
  Scalar v;
};

std::vector<Term3> comul2(const HopfAlgebra& h, int i) {
  std::vector<Term3> out;
  for (auto& t : h.comult[i])
    for (auto& u : h.comult[t.a]) out.push_back({u.a, u.b, t.b, t.c * u.c});
  return out;
}

const SVec& basis_mul(const HopfAlgebra& h, int i, int j) { return h.mult[size_t(i) * h.dim + j]; }

}  // namespace

// ------------------------------------------------------------ elements

SVec svec_basis(int i, const Scalar& c) {
  if (c.is_zero()) return {};
  return {{i, c}};
}

SVec svec_add(const SVec& x, const SVec& y) {
  std::vector<std::pair<int, Scalar>> t(x.begin(), x.end());
  t.insert(t.end(), y.begin(), y.end());
  return combine(std::move(t));
}

SVec svec_scale(const SVec& x, const Scalar& s) {
  std::vector<std::pair<int, Scalar>> t;
  for (auto& [i, c] : x) t.push_back({i, c * s});
  return combine(std::move(t));
}

SVec svec_from_dense(const std::vector<Scalar>& d) {
  SVec out;
  for (size_t i = 0; i < d.size(); ++i)
    if (!d[i].is_zero()) out.push_back({int(i), d[i]});
  return out;
}

std::vector<Scalar> svec_to_dense(const SVec& x, int dim) {
  std::vector<Scalar> d(dim);
  for (auto& [i, c] : x) d[i] = c;
  return d;
}

double svec_residual(const SVec& x, const SVec& y) {
  TMap a, b;
  for (auto& [i, c] : x) a[i] = c;
  for (auto& [i, c] : y) b[i] = c;
  return tmap_residual(a, b);
}

SVec h_mul(const HopfAlgebra& h, const SVec& x, const SVec& y) {
  std::vector<std::pair<int, Scalar>> t;
  for (auto& [i, a] : x)
    for (auto& [j, b] : y) {
      Scalar ab = a * b;
      for (auto& [k, c] : basis_mul(h, i, j)) t.push_back({k, ab * c});
    }
  return combine(std::move(t));
}

std::vector<Term2> h_comul(const HopfAlgebra& h, const SVec& x) {
  TMap m;
  for (auto& [i, a] : x)
    for (auto& t : h.comult[i]) tadd(m, Key(t.a) * h.dim + t.b, a * t.c);
  std::vector<Term2> out;
  for (auto& [k, v] : m)
    if (!v.is_zero()) out.push_back({int(k / h.dim), int(k % h.dim), v});
  return out;
}

Scalar h_counit(const HopfAlgebra& h, const SVec& x) {
  Scalar s;
  for (auto& [i, a] : x) s += a * h.counit[i];
  return s;
}

SVec h_antipode(const HopfAlgebra& h, const SVec& x) {
  std::vector<std::pair<int, Scalar>> t;
  for (auto& [i, a] : x)
    for (auto& [k, c] : h.antipode[i]) t.push_back({k, a * c});
  return combine(std::move(t));
}

SVec h_one(const HopfAlgebra& h) { return h.unit; }

// ------------------------------------------------------------ reports

double AxiomReport::max() const {
  double m = 0;
  for (auto& r : residuals) m = std::max(m, r.second);
  return m;
}

void AxiomReport::add(const std::string& name, double r) {
  for (auto& x : residuals)
    if (x.first == name) {
      x.second = std::max(x.second, r);
      return;
    }
  residuals.push_back({name, r});
}

std::string AxiomReport::str() const {
  std::ostringstream os;
  for (auto& [n, r] : residuals) os << "  " << n << ": " << r << "\n";
  return os.str();
}

// ------------------------------------------------------------ axioms

AxiomReport check_hopf_axioms(const HopfAlgebra& h) {
  AxiomReport rep;
  const int n = h.dim;
  SVec one = h.unit;
  std::vector<SVec> e(n);
  for (int i = 0; i < n; ++i) e[i] = svec_basis(i);

  // algebra
  double assoc = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const SVec& ij = basis_mul(h, i, j);
      for (int k = 0; k < n; ++k) {
        SVec l = h_mul(h, ij, e[k]);
        SVec r = h_mul(h, e[i], basis_mul(h, j, k));
        assoc = std::max(assoc, svec_residual(l, r));
      }
    }
  rep.add("associativity", assoc);
  for (int i = 0; i < n; ++i) {
    rep.add("unit", svec_residual(h_mul(h, one, e[i]), e[i]));
    rep.add("unit", svec_residual(h_mul(h, e[i], one), e[i]));
  }

  // coalgebra
  for (int i = 0; i < n; ++i) {
    TMap l, r;
    for (auto& t : h.comult[i]) {
      for (auto& u : h.comult[t.a]) tadd(l, (Key(u.a) * n + u.b) * n + t.b, t.c * u.c);
      for (auto& u : h.comult[t.b]) tadd(r, (Key(t.a) * n + u.a) * n + u.b, t.c * u.c);
    }
    rep.add("coassociativity", tmap_residual(l, r));
    std::vector<std::pair<int, Scalar>> cl, cr;
    for (auto& t : h.comult[i]) {
      cl.push_back({t.b, h.counit[t.a] * t.c});
      cr.push_back({t.a, h.counit[t.b] * t.c});
    }
    rep.add("counit", svec_residual(combine(cl), e[i]));
    rep.add("counit", svec_residual(combine(cr), e[i]));
  }

  // Delta multiplicative
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      TMap l = comul_map(h_comul(h, basis_mul(h, i, j)), n);
      TMap r;
      for (auto& x : h.comult[i])
        for (auto& y : h.comult[j]) {
          Scalar c = x.c * y.c;
          const SVec& p = basis_mul(h, x.a, y.a);
          const SVec& q = basis_mul(h, x.b, y.b);
          for (auto& [pa, pc] : p)
            for (auto& [qa, qc] : q) tadd(r, Key(pa) * n + qa, c * pc * qc);
        }
      rep.add("Delta(hk)=Delta(h)Delta(k)", tmap_residual(l, r));
    }

  auto d1 = h_comul(h, one);
  if (!h.weak) {
    TMap l = comul_map(d1, n), r;
    for (auto& [a, x] : one)
      for (auto& [b, y] : one) tadd(r, Key(a) * n + b, x * y);
    rep.add("Delta(1)=1x1", tmap_residual(l, r));
    rep.add("eps(1)=1", abs_diff(h_counit(h, one), Scalar(1)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        rep.add("eps(hk)=eps(h)eps(k)",
                abs_diff(h_counit(h, basis_mul(h, i, j)), h.counit[i] * h.counit[j]));
    for (int i = 0; i < n; ++i) {
      std::vector<std::pair<int, Scalar>> l1, l2;
      for (auto& t : h.comult[i]) {
        for (auto& [k, c] : h_mul(h, h.antipode[t.a], e[t.b])) l1.push_back({k, c * t.c});
        for (auto& [k, c] : h_mul(h, e[t.a], h.antipode[t.b])) l2.push_back({k, c * t.c});
      }
      SVec r = svec_scale(one, h.counit[i]);
      rep.add("m(S x id)Delta=eta eps", svec_residual(combine(l1), r));
      rep.add("m(id x S)Delta=eta eps", svec_residual(combine(l2), r));
    }
  } else {
    // (Delta x id)Delta(1) = (Delta(1) x 1)(1 x Delta(1)) = (1 x Delta(1))(Delta(1) x 1)
    TMap dd, p1, p2;
    for (auto& t : d1)
      for (auto& u : h.comult[t.a]) tadd(dd, (Key(u.a) * n + u.b) * n + t.b, t.c * u.c);
    for (auto& x : d1)
      for (auto& y : d1) {
        Scalar c = x.c * y.c;
        // (x.a (x) x.b (x) 1)(1 (x) y.a (x) y.b)
        for (auto& [m1, c1] : basis_mul(h, x.b, y.a)) tadd(p1, (Key(x.a) * n + m1) * n + y.b, c * c1);
        // (1 (x) x.a (x) x.b)(y.a (x) y.b (x) 1)
        for (auto& [m1, c1] : basis_mul(h, x.a, y.b)) tadd(p2, (Key(y.a) * n + m1) * n + x.b, c * c1);
      }
    rep.add("(Delta x id)Delta(1)=(Delta(1) x 1)(1 x Delta(1))", tmap_residual(dd, p1));
    rep.add("(Delta x id)Delta(1)=(1 x Delta(1))(Delta(1) x 1)", tmap_residual(dd, p2));

    // eps(ghk) = eps(g h1) eps(h2 k) = eps(g h2) eps(h1 k)
    std::vector<Scalar> E(size_t(n) * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) E[size_t(a) * n + b] = h_counit(h, basis_mul(h, a, b));
    double m1 = 0, m2 = 0;
    for (int g = 0; g < n; ++g)
      for (int x = 0; x < n; ++x) {
        const SVec& gx = basis_mul(h, g, x);
        for (int k = 0; k < n; ++k) {
          Scalar l;
          for (auto& [y, c] : gx) l += c * E[size_t(y) * n + k];
          Scalar r1, r2;
          for (auto& t : h.comult[x]) {
            const Scalar &ga = E[size_t(g) * n + t.a], &bk = E[size_t(t.b) * n + k];
            if (!ga.is_zero() && !bk.is_zero()) r1 += t.c * ga * bk;
            const Scalar &gb = E[size_t(g) * n + t.b], &ak = E[size_t(t.a) * n + k];
            if (!gb.is_zero() && !ak.is_zero()) r2 += t.c * gb * ak;
          }
          m1 = std::max(m1, abs_diff(l, r1));
          m2 = std::max(m2, abs_diff(l, r2));
        }
      }
    rep.add("eps(ghk)=eps(gh1)eps(h2k)", m1);
    rep.add("eps(ghk)=eps(gh2)eps(h1k)", m2);

    for (int i = 0; i < n; ++i) {
      std::vector<std::pair<int, Scalar>> l1, l2, r1, r2;
      for (auto& t : h.comult[i]) {
        for (auto& [k, c] : h_mul(h, e[t.a], h.antipode[t.b])) l1.push_back({k, c * t.c});
        for (auto& [k, c] : h_mul(h, h.antipode[t.a], e[t.b])) l2.push_back({k, c * t.c});
      }
      for (auto& t : d1) {
        // eps(1_1 h) 1_2  and  1_1 eps(h 1_2)
        Scalar a = h_counit(h, basis_mul(h, t.a, i));
        r1.push_back({t.b, t.c * a});
        Scalar b = h_counit(h, basis_mul(h, i, t.b));
        r2.push_back({t.a, t.c * b});
      }
      rep.add("m(id x S)Delta(h)=(eps x id)(Delta(1)(h x 1))", svec_residual(combine(l1), combine(r1)));
      rep.add("m(S x id)Delta(h)=(id x eps)((1 x h)Delta(1))", svec_residual(combine(l2), combine(r2)));
      SVec s3;
      for (auto& t : comul2(h, i)) {
        SVec x = h_mul(h, h_mul(h, h.antipode[t.a], e[t.b]), h.antipode[t.c]);
        s3 = svec_add(s3, svec_scale(x, t.v));
      }
      rep.add("S(h)=S(h1)h2S(h3)", svec_residual(s3, h.antipode[i]));
    }
  }

  for (int i = 0; i < n; ++i) rep.add("S^2=id", svec_residual(h_antipode(h, h.antipode[i]), e[i]));
  return rep;
}

bool same_structure(const HopfAlgebra& a, const HopfAlgebra& b) {
  if (a.dim != b.dim || a.weak != b.weak) return false;
  int n = a.dim;
  for (size_t i = 0; i < a.mult.size(); ++i)
    if (svec_residual(a.mult[i], b.mult[i]) != 0) return false;
  if (svec_residual(a.unit, b.unit) != 0) return false;
  for (int i = 0; i < n; ++i) {
    if (tmap_residual(comul_map(a.comult[i], n), comul_map(b.comult[i], n)) != 0) return false;
    if (abs_diff(a.counit[i], b.counit[i]) != 0) return false;
    if (svec_residual(a.antipode[i], b.antipode[i]) != 0) return false;
  }
  return true;
}

// ------------------------------------------------------------ constructors

namespace {

HopfAlgebra blank(const std::string& name, int n) {
  HopfAlgebra h;
  h.name = name;
  h.dim = n;
  h.mult.assign(size_t(n) * n, {});
  h.comult.assign(n, {});
  h.counit.assign(n, Scalar());
  h.antipode.assign(n, {});
  return h;
}

std::vector<Rep> point_reps(int n, const std::string& prefix, const std::vector<std::string>& names) {
  std::vector<Rep> out;
  for (int p = 0; p < n; ++p) {
    Rep r;
    r.name = prefix + names[p];
    r.dim = 1;
    for (int g = 0; g < n; ++g) r.mats.push_back({Scalar(g == p ? 1 : 0)});
    out.push_back(r);
  }
  return out;
}

}  // namespace

HopfAlgebra group_algebra(const Group& g) {
  int n = g.size();
  HopfAlgebra h = blank("C[" + g.name + "]", n);
  h.basis = g.elems;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) h.mult[size_t(a) * n + b] = svec_basis(g.mul(a, b));
    h.comult[a] = {{a, a, Scalar(1)}};
    h.counit[a] = Scalar(1);
    h.antipode[a] = svec_basis(g.inv[a]);
  }
  h.unit = svec_basis(g.e);
  if (has_group_irreps(g)) h.irreps = group_irreps(g);
  h.dual_irreps = point_reps(n, "ev:", g.elems);
  return h;
}

HopfAlgebra function_algebra(const Group& g) {
  int n = g.size();
  HopfAlgebra h = blank("C^" + g.name, n);
  for (auto& s : g.elems) h.basis.push_back("d_" + s);
  for (int a = 0; a < n; ++a) {
    h.mult[size_t(a) * n + a] = svec_basis(a);
    h.unit.push_back({a, Scalar(1)});
    for (int x = 0; x < n; ++x) h.comult[a].push_back({x, g.mul(g.inv[x], a), Scalar(1)});
    h.counit[a] = Scalar(a == g.e ? 1 : 0);
    h.antipode[a] = svec_basis(g.inv[a]);
  }
  h.irreps = point_reps(n, "ev:", g.elems);
  if (has_group_irreps(g)) h.dual_irreps = group_irreps(g);
  return h;
}

HopfAlgebra dual(const HopfAlgebra& h) {
  int n = h.dim;
  HopfAlgebra d = blank(h.name + "*", n);
  d.weak = h.weak;
  for (auto& b : h.basis) d.basis.push_back(b + "*");
  std::vector<std::vector<std::pair<int, Scalar>>> m(size_t(n) * n);
  for (int k = 0; k < n; ++k)
    for (auto& t : h.comult[k]) m[size_t(t.a) * n + t.b].push_back({k, t.c});
  for (size_t i = 0; i < m.size(); ++i) d.mult[i] = combine(std::move(m[i]));
  d.unit = svec_from_dense(h.counit);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (auto& [k, c] : basis_mul(h, i, j)) d.comult[k].push_back({i, j, c});
  for (auto& [i, c] : h.unit) d.counit[i] = c;
  std::vector<std::vector<std::pair<int, Scalar>>> s(n);
  for (int j = 0; j < n; ++j)
    for (auto& [i, c] : h.antipode[j]) s[i].push_back({j, c});
  for (int i = 0; i < n; ++i) d.antipode[i] = combine(std::move(s[i]));
  d.irreps = h.dual_irreps;
  d.dual_irreps = h.irreps;
  return d;
}

std::vector<SVec> antipode_inverse(const HopfAlgebra& h) {
  int n = h.dim;
  bool involutive = true;
  for (int i = 0; i < n && involutive; ++i)
    involutive = svec_residual(h_antipode(h, h.antipode[i]), svec_basis(i)) == 0;
  if (involutive) return h.antipode;
  // Gauss-Jordan on the matrix with columns S(e_i)
  std::vector<std::vector<Scalar>> a(n, std::vector<Scalar>(2 * n));
  for (int i = 0; i < n; ++i) {
    for (auto& [k, c] : h.antipode[i]) a[k][i] = c;
    a[i][n + i] = Scalar(1);
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n && piv < 0; ++r)
      if (!a[r][col].is_zero()) piv = r;
    if (piv < 0) throw InvalidInput("antipode of " + h.name + " is not invertible");
    std::swap(a[piv], a[col]);
    Scalar inv = a[col][col].inverse();
    for (auto& x : a[col]) x *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      Scalar f = a[r][col];
      for (int c = 0; c < 2 * n; ++c)
        if (!a[col][c].is_zero()) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<SVec> out(n);
  for (int i = 0; i < n; ++i) {
    std::vector<Scalar> col(n);
    for (int k = 0; k < n; ++k) col[k] = a[k][n + i];
    out[i] = svec_from_dense(col);
  }
  return out;
}

HopfAlgebra op(const HopfAlgebra& h) {
  int n = h.dim;
  HopfAlgebra o = h;
  o.name = h.name + "^op";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) o.mult[size_t(i) * n + j] = h.mult[size_t(j) * n + i];
  o.antipode = antipode_inverse(h);
  if (h.irreps) {
    std::vector<Rep> t;
    for (auto& r : *h.irreps) t.push_back(transpose_rep(r));
    o.irreps = t;
  }
  return o;
}

HopfAlgebra cop(const HopfAlgebra& h) {
  HopfAlgebra o = h;
  o.name = h.name + "^cop";
  for (auto& terms : o.comult) {
    for (auto& t : terms) std::swap(t.a, t.b);
    std::sort(terms.begin(), terms.end(), [](auto& x, auto& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
  }
  o.antipode = antipode_inverse(h);
  if (h.dual_irreps) {
    std::vector<Rep> t;
    for (auto& r : *h.dual_irreps) t.push_back(transpose_rep(r));
    o.dual_irreps = t;
  }
  return o;
}

// ------------------------------------------------------------ integrals

namespace {
// zero for exact structure constants, the float tolerance otherwise
double slack(const HopfAlgebra& h) {
  for (auto& c : h.counit)
    if (!c.exact()) return Scalar::default_tol;
  for (auto& m : h.mult)
    for (auto& [i, c] : m)
      if (!c.exact()) return Scalar::default_tol;
  return 0;
}
}  // namespace

SVec compute_integral(const HopfAlgebra& h) {
  double tol = slack(h);
  if (h.weak) throw InvalidInput("compute_integral needs a Hopf algebra, got weak " + h.name);
  for (int i = 0; i < h.dim; ++i)
    if (svec_residual(h_antipode(h, h.antipode[i]), svec_basis(i)) > tol)
      throw NonSemisimple(h.name + ": S^2 != id");
  std::vector<std::pair<int, Scalar>> t;
  for (int i = 0; i < h.dim; ++i)
    for (auto& x : h.comult[i])
      if (x.a == i) t.push_back({x.b, x.c});
  SVec l = combine(std::move(t));
  if (h_counit(h, l).is_zero()) throw NonSemisimple(h.name + ": eps(l') = 0");
  for (int i = 0; i < h.dim; ++i)
    if (svec_residual(h_mul(h, svec_basis(i), l), svec_scale(l, h.counit[i])) > tol)
      throw InternalConsistency(h.name + ": l' fails h.l' = eps(h) l'");
  return l;
}

SVec normalized_integral(const HopfAlgebra& h) {
  SVec l = compute_integral(h);
  return svec_scale(l, h_counit(h, l).inverse());
}

std::vector<Scalar> canonical_dual_integral(const HopfAlgebra& h, const std::vector<Rep>& irreps) {
  int total = 0;
  for (auto& r : irreps) {
    if (int(r.mats.size()) != h.dim) throw InvalidInput("representation " + r.name + " has wrong number of matrices");
    total += r.dim * r.dim;
  }
  if (total != h.dim)
    throw InvalidInput("inconsistent irrep set for " + h.name + ": sum of dim^2 = " + std::to_string(total) +
                       ", dim H = " + std::to_string(h.dim));
  std::vector<Scalar> lam(h.dim);
  for (auto& r : irreps)
    for (int j = 0; j < h.dim; ++j) lam[j] += Scalar(r.dim) * mat_trace(r.mats[j], r.dim);
  return lam;
}

AxiomReport check_integral(const HopfAlgebra& h, const SVec& l) {
  AxiomReport rep;
  for (int i = 0; i < h.dim; ++i) {
    SVec e = svec_basis(i);
    SVec r = svec_scale(l, h.counit[i]);
    rep.add("h.l=eps(h)l", svec_residual(h_mul(h, e, l), r));
    rep.add("l.h=eps(h)l", svec_residual(h_mul(h, l, e), r));
  }
  rep.add("S(l)=l", svec_residual(h_antipode(h, l), l));
  return rep;
}

AxiomReport check_weak_integral(const HopfAlgebra& h, const SVec& l) {
  AxiomReport rep;
  auto d1 = h_comul(h, h.unit);
  for (int i = 0; i < h.dim; ++i) {
    SVec e = svec_basis(i);
    SVec et, es;
    for (auto& t : d1) {
      et = svec_add(et, svec_scale(svec_basis(t.b), t.c * h_counit(h, basis_mul(h, t.a, i))));
      es = svec_add(es, svec_scale(svec_basis(t.a), t.c * h_counit(h, basis_mul(h, i, t.b))));
    }
    rep.add("h.l=eps_t(h).l", svec_residual(h_mul(h, e, l), h_mul(h, et, l)));
    rep.add("l.h=l.eps_s(h)", svec_residual(h_mul(h, l, e), h_mul(h, l, es)));
  }
  rep.add("S(l)=l", svec_residual(h_antipode(h, l), l));
  return rep;
}

AxiomReport check_rep(const HopfAlgebra& h, const Rep& r) {
  AxiomReport rep;
  int d = r.dim;
  auto rho = [&](const SVec& x) {
    Matrix m(size_t(d) * d);
    for (auto& [i, c] : x)
      for (size_t k = 0; k < m.size(); ++k)
        if (!r.mats[i][k].is_zero()) m[k] += c * r.mats[i][k];
    return m;
  };
  auto res = [&](const Matrix& a, const Matrix& b) {
    double x = 0;
    for (size_t k = 0; k < a.size(); ++k) x = std::max(x, abs_diff(a[k], b[k]));
    return x;
  };
  rep.add("rho(1)=id", res(rho(h.unit), mat_identity(d)));
  for (int i = 0; i < h.dim; ++i)
    for (int j = 0; j < h.dim; ++j)
      rep.add("rho(xy)=rho(x)rho(y)", res(rho(basis_mul(h, i, j)), mat_mul(r.mats[i], r.mats[j], d)));
  return rep;
}

// ------------------------------------------------------------ pairings

Scalar Pairing::eval(const SVec& a, const SVec& b) const {
  Scalar s;
  for (auto& [i, x] : a)
    for (auto& [j, y] : b) s += x * y * (*this)(i, j);
  return s;
}

Pairing convolution_inverse(const Pairing& t, const HopfAlgebra& a) {
  Pairing inv(t.rows, t.cols);
  for (int i = 0; i < t.rows; ++i)
    for (auto& [k, c] : a.antipode[i])
      for (int j = 0; j < t.cols; ++j)
        if (!t(k, j).is_zero()) inv(i, j) += c * t(k, j);
  return inv;
}

AxiomReport check_skew_pairing(const HopfAlgebra& a, const HopfAlgebra& b, const Pairing& t) {
  AxiomReport rep;
  if (t.rows != a.dim || t.cols != b.dim) {
    rep.add("shape", 1.0);
    return rep;
  }
  Pairing inv = convolution_inverse(t, a);
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) {
      const SVec& ij = basis_mul(a, i, j);
      for (int k = 0; k < b.dim; ++k) {
        Scalar l, r;
        for (auto& [x, c] : ij) l += c * t(x, k);
        for (auto& u : b.comult[k]) r += u.c * t(i, u.a) * t(j, u.b);
        rep.add("tau(aa',b)=tau(a,b1)tau(a',b2)", abs_diff(l, r));
      }
    }
  for (int j = 0; j < b.dim; ++j)
    for (int k = 0; k < b.dim; ++k) {
      const SVec& jk = basis_mul(b, j, k);
      for (int i = 0; i < a.dim; ++i) {
        Scalar l, r;
        for (auto& [y, c] : jk) l += c * t(i, y);
        for (auto& u : a.comult[i]) r += u.c * t(u.b, j) * t(u.a, k);
        rep.add("tau(a,bb')=tau(a2,b)tau(a1,b')", abs_diff(l, r));
      }
    }
  for (int i = 0; i < a.dim; ++i) rep.add("tau(a,1)=eps(a)", abs_diff(t.eval(svec_basis(i), b.unit), a.counit[i]));
  for (int k = 0; k < b.dim; ++k) rep.add("tau(1,b)=eps(b)", abs_diff(t.eval(a.unit, svec_basis(k)), b.counit[k]));
  for (int i = 0; i < a.dim; ++i)
    for (int k = 0; k < b.dim; ++k) {
      Scalar l, r;
      for (auto& u : a.comult[i])
        for (auto& v : b.comult[k]) {
          l += u.c * v.c * t(u.a, v.a) * inv(u.b, v.b);
          r += u.c * v.c * inv(u.a, v.a) * t(u.b, v.b);
        }
      Scalar ee = a.counit[i] * b.counit[k];
      rep.add("tau(a1,b1)tau^-1(a2,b2)=eps(a)eps(b)", abs_diff(l, ee));
      rep.add("tau^-1(a1,b1)tau(a2,b2)=eps(a)eps(b)", abs_diff(r, ee));
    }
  return rep;
}

Pairing checked_convolution_inverse(const Pairing& t, const HopfAlgebra& a, const HopfAlgebra& b) {
  auto rep = check_skew_pairing(a, b, t);
  if (!rep.ok(1e-9)) throw InvalidInput("not a skew pairing:\n" + rep.str());
  return convolution_inverse(t, a);
}

Pairing trivial_pairing(const HopfAlgebra& a, const HopfAlgebra& b) {
  Pairing t(a.dim, b.dim);
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < b.dim; ++j) t(i, j) = a.counit[i] * b.counit[j];
  return t;
}

// ------------------------------------------------------------ double

HopfAlgebra generalized_double(const HopfAlgebra& a, const HopfAlgebra& b, const Pairing& t, bool verify) {
  if (a.weak || b.weak) throw InvalidInput("generalized_double needs Hopf algebras");
  int na = a.dim, nb = b.dim, n = na * nb;
  Pairing inv = convolution_inverse(t, a);
  HopfAlgebra d = blank("D(" + a.name + "," + b.name + ")", n);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j)
      d.basis.push_back((a.basis.empty() ? std::to_string(i) : a.basis[i]) + "x" +
                        (b.basis.empty() ? std::to_string(j) : b.basis[j]));
  std::vector<std::vector<Term3>> a2(na), b2(nb);
  for (int i = 0; i < na; ++i) a2[i] = comul2(a, i);
  for (int j = 0; j < nb; ++j) b2[j] = comul2(b, j);

  // (a x b)(a' x b') = tau(a'1,b1) tau^-1(a'3,b3) a a'2 x b2 b'
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j)
      for (int i2 = 0; i2 < na; ++i2)
        for (int j2 = 0; j2 < nb; ++j2) {
          std::map<std::pair<int, int>, Scalar> w;  // (a'2, b2) -> weight
          for (auto& x : a2[i2])
            for (auto& u : b2[j]) {
              const Scalar& t1 = t(x.a, u.a);
              if (t1.is_zero()) continue;
              const Scalar& t3 = inv(x.c, u.c);
              if (t3.is_zero()) continue;
              Scalar c = x.v * u.v * t1 * t3;
              auto key = std::make_pair(x.b, u.b);
              auto it = w.find(key);
              if (it == w.end())
                w.emplace(key, c);
              else
                it->second += c;
            }
          std::vector<std::pair<int, Scalar>> terms;
          for (auto& [key, c] : w) {
            if (c.is_zero()) continue;
            for (auto& [p, pc] : basis_mul(a, i, key.first))
              for (auto& [q, qc] : basis_mul(b, key.second, j2)) terms.push_back({p * nb + q, c * pc * qc});
          }
          d.mult[size_t(i * nb + j) * n + (i2 * nb + j2)] = combine(std::move(terms));
        }
  for (auto& [p, pc] : a.unit)
    for (auto& [q, qc] : b.unit) d.unit.push_back({p * nb + q, pc * qc});
  d.unit = combine(d.unit);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      int ij = i * nb + j;
      for (auto& x : a.comult[i])
        for (auto& y : b.comult[j]) d.comult[ij].push_back({x.a * nb + y.a, x.b * nb + y.b, x.c * y.c});
      d.counit[ij] = a.counit[i] * b.counit[j];
    }
  // S(a x b) = (1 x S(b)) (S(a) x 1)
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      std::vector<std::pair<int, Scalar>> l, r;
      for (auto& [p, pc] : a.unit)
        for (auto& [q, qc] : b.antipode[j]) l.push_back({p * nb + q, pc * qc});
      for (auto& [p, pc] : a.antipode[i])
        for (auto& [q, qc] : b.unit) r.push_back({p * nb + q, pc * qc});
      d.antipode[i * nb + j] = h_mul(d, combine(l), combine(r));
    }
  if (verify) {
    auto rep = check_hopf_axioms(d);
    if (!rep.ok(1e-9)) throw InternalConsistency("generalized double fails Hopf axioms:\n" + rep.str());
  }
  return d;
}

// ------------------------------------------------------------ triplets

AxiomReport check_triplet(const HopfTriplet& t) {
  AxiomReport rep;
  const auto &A = t.A, &B = t.B, &C = t.C;
  for (int a = 0; a < A.dim; ++a)
    for (int b = 0; b < B.dim; ++b)
      for (int c = 0; c < C.dim; ++c) {
        Scalar l, r;
        for (auto& x : A.comult[a])
          for (auto& y : B.comult[b]) {
            Scalar ab_l = t.AB(x.a, y.b), ab_r = t.AB(x.b, y.a);
            if (ab_l.is_zero() && ab_r.is_zero()) continue;
            for (auto& z : C.comult[c]) {
              Scalar w = x.c * y.c * z.c;
              if (!ab_l.is_zero()) l += w * ab_l * t.BC(y.a, z.b) * t.CA(z.a, x.b);
              if (!ab_r.is_zero()) r += w * ab_r * t.BC(y.b, z.a) * t.CA(z.b, x.a);
            }
          }
        rep.add("cyclic triplet identity", abs_diff(l, r));
      }
  rep.add("cyclic triplet identity", 0);
  return rep;
}

HopfTriplet kashaev_triplet(int n) {
  if (n < 2) throw InvalidInput("kashaev_triplet needs n >= 2");
  Group z = cyclic(n);
  HopfTriplet t;
  t.name = "kashaev:n=" + std::to_string(n);
  t.A = function_algebra(z);
  t.B = group_algebra(z);
  t.C = function_algebra(z);
  t.AB = Pairing(n, n);
  t.BC = Pairing(n, n);
  t.CA = Pairing(n, n);
  Scalar inv_n = Scalar::rational(1, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      t.AB(a, b) = Scalar(a == b ? 1 : 0);
      t.BC(a, b) = Scalar(a == b ? 1 : 0);
      t.CA(a, b) = inv_n * Scalar(Cyclo::zeta(n, long(a) * b));
    }
  return t;
}

Group k_group(const Group& C, const Group& B) { return direct_product(C, opposite(B)); }

HopfTriplet group_triplet(const Group& C, const Group& B) {
  Group K = k_group(C, B);
  int nc = C.size(), nb = B.size();
  HopfTriplet t;
  t.name = "group:C=" + C.name + ",B=" + B.name;
  t.A = cop(function_algebra(K));
  t.B = group_algebra(opposite(B));
  t.C = op(cop(group_algebra(C)));
  t.AB = Pairing(K.size(), nb);
  t.CA = Pairing(nc, K.size());
  for (int k = 0; k < K.size(); ++k) {
    for (int b = 0; b < nb; ++b) t.AB(k, b) = Scalar(k == C.e * nb + b ? 1 : 0);
    for (int c = 0; c < nc; ++c) t.CA(c, k) = Scalar(k == c * nb + B.e ? 1 : 0);
  }
  t.BC = trivial_pairing(t.B, t.C);
  return t;
}

// ------------------------------------------------------------ weak Hopf

int weak_index(const GSet& m, int a, int b, int k) { return (a * m.size() + b) * m.K.size() + k; }

HopfAlgebra weak_smash(const GSet& M) {
  const Group& K = M.K;
  int nm = M.size(), nk = K.size(), n = nm * nm * nk;
  HopfAlgebra h = blank("C^{MxM}#C[" + K.name + "]", n);
  h.weak = true;
  for (int m = 0; m < nm; ++m)
    for (int q = 0; q < nm; ++q)
      for (int k = 0; k < nk; ++k) h.basis.push_back("d" + M.points[m] + "xd" + M.points[q] + "x" + K.elems[k]);
  for (int m = 0; m < nm; ++m)
    for (int q = 0; q < nm; ++q)
      for (int hh = 0; hh < nk; ++hh) {
        int x = weak_index(M, m, q, hh);
        // (dm dn h)(dp dq k) = d_m(h.p) d_n(h.q) dm dn hk
        for (int p = 0; p < nm; ++p)
          for (int r = 0; r < nm; ++r)
            for (int k = 0; k < nk; ++k)
              if (M.act[hh][p] == m && M.act[hh][r] == q)
                h.mult[size_t(x) * n + weak_index(M, p, r, k)] = svec_basis(weak_index(M, m, q, K.mul(hh, k)));
        for (int p = 0; p < nm; ++p) h.comult[x].push_back({weak_index(M, m, p, hh), weak_index(M, p, q, hh), Scalar(1)});
        h.counit[x] = Scalar(m == q ? 1 : 0);
        int ki = K.inv[hh];
        h.antipode[x] = svec_basis(weak_index(M, M.act[ki][q], M.act[ki][m], ki));
      }
  for (int m = 0; m < nm; ++m)
    for (int q = 0; q < nm; ++q) h.unit.push_back({weak_index(M, m, q, K.e), Scalar(1)});
  h.unit = combine(h.unit);
  return h;
}

HopfAlgebra weak_smash_dual(const GSet& M) {
  const Group& K = M.K;
  int nm = M.size(), nk = K.size(), n = nm * nm * nk;
  HopfAlgebra h = blank("<MxM>xC^" + K.name, n);
  h.weak = true;
  for (int m = 0; m < nm; ++m)
    for (int q = 0; q < nm; ++q)
      for (int k = 0; k < nk; ++k) h.basis.push_back(M.points[m] + "x" + M.points[q] + "xd" + K.elems[k]);
  for (int m = 0; m < nm; ++m)
    for (int q = 0; q < nm; ++q)
      for (int k = 0; k < nk; ++k) {
        int x = weak_index(M, m, q, k);
        // (m n dh)(p q dk) = d_h(k) d_n(p) m q dk
        for (int r = 0; r < nm; ++r) h.mult[size_t(x) * n + weak_index(M, q, r, k)] = svec_basis(weak_index(M, m, r, k));
        for (int a = 0; a < nk; ++a) {
          int b = K.mul(K.inv[a], k);  // a b = k
          int ai = K.inv[a];
          h.comult[x].push_back({weak_index(M, m, q, a), weak_index(M, M.act[ai][m], M.act[ai][q], b), Scalar(1)});
        }
        h.counit[x] = Scalar(k == K.e ? 1 : 0);
        int ki = K.inv[k];
        h.antipode[x] = svec_basis(weak_index(M, M.act[ki][q], M.act[ki][m], ki));
      }
  for (int m = 0; m < nm; ++m)
    for (int k = 0; k < nk; ++k) h.unit.push_back({weak_index(M, m, m, k), Scalar(1)});
  h.unit = combine(h.unit);
  return h;
}

SVec weak_smash_integral(const GSet& M) {
  std::vector<std::pair<int, Scalar>> t;
  for (int m = 0; m < M.size(); ++m)
    for (int k = 0; k < M.K.size(); ++k) t.push_back({weak_index(M, m, m, k), Scalar(1)});
  return combine(std::move(t));
}

SVec weak_dual_integral(const GSet& M) {
  std::vector<std::pair<int, Scalar>> t;
  for (int m = 0; m < M.size(); ++m)
    for (int q = 0; q < M.size(); ++q) t.push_back({weak_index(M, m, q, M.K.e), Scalar(1)});
  return combine(std::move(t));
}

HopfTriplet weak_triplet(const Group& C, const Group& B, const GSet& M, bool strict) {
  Group K = k_group(C, B);
  if (M.K.size() != K.size()) throw InvalidInput("K-set is not over C x B^op");
  if (strict && !M.transitive()) throw InvalidInput("M is not a transitive C x B^op-set");
  int nb = B.size(), nc = C.size(), nm = M.size();
  Group Bop = opposite(B);
  std::vector<int> emb_b(nb), emb_c(nc);
  for (int b = 0; b < nb; ++b) emb_b[b] = C.e * nb + b;
  for (int c = 0; c < nc; ++c) emb_c[c] = c * nb + B.e;
  GSet MB = restrict_set(M, Bop, emb_b);
  GSet MC = restrict_set(M, C, emb_c);
  HopfTriplet t;
  t.name = "weak:C=" + C.name + ",B=" + B.name + ",|M|=" + std::to_string(nm);
  t.allow_weak = true;
  t.A = cop(weak_smash_dual(M));
  t.B = weak_smash(MB);
  t.C = op(cop(weak_smash(MC)));
  t.AB = Pairing(t.A.dim, t.B.dim);
  t.BC = Pairing(t.B.dim, t.C.dim);
  t.CA = Pairing(t.C.dim, t.A.dim);
  for (int m = 0; m < nm; ++m)
    for (int n = 0; n < nm; ++n)
      for (int h = 0; h < K.size(); ++h) {
        int ai = weak_index(M, m, n, h);
        if (h / nb == C.e) t.AB(ai, weak_index(MB, m, n, h % nb)) = Scalar(1);
        if (h % nb == B.e) t.CA(weak_index(MC, m, n, h / nb), ai) = Scalar(1);
      }
  // tau_BC(dp dq b, dm dn c) = d_n(p) d_n(c.q) d_p(m.b)
  for (int p = 0; p < nm; ++p)
    for (int q = 0; q < nm; ++q)
      for (int b = 0; b < nb; ++b)
        for (int m = 0; m < nm; ++m)
          for (int n = 0; n < nm; ++n)
            for (int c = 0; c < nc; ++c) {
              bool v = n == p && n == MC.act[c][q] && p == MB.act[b][m];
              if (v) t.BC(weak_index(MB, p, q, b), weak_index(MC, m, n, c)) = Scalar(1);
            }
  t.integrals = std::array<SVec, 3>{weak_dual_integral(M), weak_smash_integral(MB), weak_smash_integral(MC)};
  return t;
}

std::vector<Rep> weak_simple_reps(const GSet& M, const StabIrreps& provider) {
  const Group& K = M.K;
  int nm = M.size(), nk = K.size(), n = nm * nm * nk;
  std::vector<int> orbit_of(nm * nm, -1);
  std::vector<Rep> out;
  for (int start = 0; start < nm * nm; ++start) {
    if (orbit_of[start] >= 0) continue;
    int m1 = start / nm, m2 = start % nm;
    // orbit with coset representatives h_{p,q}
    std::vector<int> pts, reps;
    std::vector<int> pos(nm * nm, -1);
    for (int k = 0; k < nk; ++k) {
      int pq = M.act[k][m1] * nm + M.act[k][m2];
      if (pos[pq] < 0) {
        pos[pq] = int(pts.size());
        pts.push_back(pq);
        reps.push_back(k);
        orbit_of[pq] = start;
      }
    }
    std::vector<int> stab;
    for (int k = 0; k < nk; ++k)
      if (M.act[k][m1] == m1 && M.act[k][m2] == m2) stab.push_back(k);
    std::vector<int> stab_pos(nk, -1);
    for (size_t i = 0; i < stab.size(); ++i) stab_pos[stab[i]] = int(i);
    std::vector<std::string> sn;
    std::vector<std::vector<int>> st(stab.size(), std::vector<int>(stab.size()));
    for (size_t i = 0; i < stab.size(); ++i) {
      sn.push_back(K.elems[stab[i]]);
      for (size_t j = 0; j < stab.size(); ++j) st[i][j] = stab_pos[K.mul(stab[i], stab[j])];
    }
    Group sg = make_group("Stab(" + M.points[m1] + "," + M.points[m2] + ")", sn, st);
    std::vector<Rep> psi;
    if (provider)
      psi = provider(sg);
    else if (sg.abelian())
      psi = abelian_characters(sg);
    else
      throw MissingIrreps("stabilizer " + sg.name + " is not abelian; supply its irreducible representations");
    int osz = int(pts.size());
    for (auto& ps : psi) {
      Rep r;
      r.name = "(" + M.points[m1] + "," + M.points[m2] + ")/" + ps.name;
      int dp = ps.dim;
      r.dim = osz * dp;
      r.mats.assign(n, Matrix(size_t(r.dim) * r.dim));
      for (int k = 0; k < nk; ++k)
        for (int o = 0; o < osz; ++o) {
          int p = pts[o] / nm, q = pts[o] % nm;
          int kp = M.act[k][p], kq = M.act[k][q];
          int o2 = pos[kp * nm + kq];
          // s = h_{kp,kq}^-1 k h_{p,q} lies in the stabilizer
          int s = K.mul(K.inv[reps[o2]], K.mul(k, reps[o]));
          const Matrix& ms = ps.mats[stab_pos[s]];
          Matrix& target = r.mats[weak_index(M, kp, kq, k)];
          for (int i = 0; i < dp; ++i)
            for (int j = 0; j < dp; ++j) target[size_t(o2 * dp + i) * r.dim + (o * dp + j)] = ms[i * dp + j];
        }
      out.push_back(std::move(r));
    }
  }
  int total = 0;
  for (auto& r : out) total += r.dim * r.dim;
  if (total != n) throw InternalConsistency("weak simple reps: sum of dim^2 != |M|^2|K|");
  return out;
}

}  // namespace trisect
