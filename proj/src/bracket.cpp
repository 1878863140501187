#include "trisect/bracket.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "trisect/errors.hpp"

namespace trisect {

const char* algebra_letter(Color c) {
  switch (c) {
    case Color::Red:
      return "A";
    case Color::Blue:
      return "B";
    case Color::Green:
      return "C";
  }
  return "?";
}

namespace {

int slot(Color c) { return c == Color::Red ? 0 : c == Color::Blue ? 1 : 2; }

const HopfAlgebra& algebra(const HopfTriplet& t, Color c) {
  return c == Color::Red ? t.A : c == Color::Blue ? t.B : t.C;
}

// pairing for a crossing whose first-colour curve has colour c
const Pairing& pairing(const HopfTriplet& t, Color first) {
  return first == Color::Red ? t.AB : first == Color::Blue ? t.BC : t.CA;
}

struct Pairings {
  std::array<Pairing, 3> tau, inv;  // indexed by first colour
  explicit Pairings(const HopfTriplet& t) {
    for (Color c : {Color::Red, Color::Blue, Color::Green}) {
      tau[slot(c)] = pairing(t, c);
      inv[slot(c)] = convolution_inverse(pairing(t, c), algebra(t, c));
    }
  }
};

void check_config(const BracketConfig& cfg) {
  const auto& t = cfg.triplet;
  for (Color c : {Color::Red, Color::Blue, Color::Green})
    if (algebra(t, c).weak && !t.allow_weak)
      throw InvalidInput(std::string("algebra ") + algebra_letter(c) + " is weak but the triplet does not allow it");
}

// Legs: one label per (curve, visit). Crossing tensors are shared by both backends.
struct Network {
  std::vector<SparseTensor> tensors;
  Scalar factor = Scalar(1);
  std::map<std::pair<std::string, int>, int> leg;
  int next_label = 0;
};

void add_crossings(Network& net, const TrisectionDiagram& d, const BracketConfig& cfg, const Pairings& pr) {
  for (auto& x : d.crossings) {
    Color a = d.curve(x.ends[0].curve).color;
    Color b = d.curve(x.ends[1].curve).color;
    if (!color_first(a, b)) throw InvalidInput("crossing '" + x.id + "' is not in colour order");
    const Pairing& p = x.sign > 0 ? pr.tau[slot(a)] : pr.inv[slot(a)];
    SparseTensor t;
    t.labels = {net.leg.at({x.ends[0].curve, x.ends[0].index}), net.leg.at({x.ends[1].curve, x.ends[1].index})};
    t.dims = {algebra(cfg.triplet, a).dim, algebra(cfg.triplet, b).dim};
    for (int i = 0; i < p.rows; ++i)
      for (int j = 0; j < p.cols; ++j) t.push({i, j}, p(i, j));
    net.tensors.push_back(std::move(t));
  }
}

void assign_legs(Network& net, const TrisectionDiagram& d) {
  for (auto& c : d.curves)
    for (size_t i = 0; i < c.visits.size(); ++i) net.leg[{c.id, int(i)}] = net.next_label++;
}

// Delta^{(n-1)}(l) as a chain of coproduct tensors
void add_element_curve(Network& net, const Curve& c, const HopfAlgebra& h, const SVec& l) {
  int n = int(c.visits.size());
  if (n == 0) {
    net.factor *= h_counit(h, l);
    return;
  }
  std::vector<int> legs;
  for (int i = 0; i < n; ++i) legs.push_back(net.leg.at({c.id, i}));
  if (n == 1) {
    SparseTensor t;
    t.labels = {legs[0]};
    t.dims = {h.dim};
    for (auto& [i, v] : l) t.push({i}, v);
    net.tensors.push_back(std::move(t));
    return;
  }
  int inner = n == 2 ? legs[1] : net.next_label++;
  {
    SparseTensor t;
    t.labels = {legs[0], inner};
    t.dims = {h.dim, h.dim};
    for (auto& u : h_comul(h, l)) t.push({u.a, u.b}, u.c);
    net.tensors.push_back(std::move(t));
  }
  for (int j = 1; j <= n - 2; ++j) {
    int next = j == n - 2 ? legs[n - 1] : net.next_label++;
    SparseTensor t;
    t.labels = {inner, legs[j], next};
    t.dims = {h.dim, h.dim, h.dim};
    for (int x = 0; x < h.dim; ++x)
      for (auto& u : h.comult[x]) t.push({x, u.a, u.b}, u.c);
    net.tensors.push_back(std::move(t));
    inner = next;
  }
}

// block-diagonal stack of the given irreps of H*
struct Stack {
  int total = 0;
  std::vector<int> offset, dim;
};

Stack stack_of(const std::vector<const Rep*>& reps) {
  Stack s;
  for (auto* r : reps) {
    s.offset.push_back(s.total);
    s.dim.push_back(r->dim);
    s.total += r->dim;
  }
  return s;
}

// sum_rho dim(rho) tr(rho(e*_{i1}) ... rho(e*_{in})) times eps(l)/dim H
void add_rep_curve(Network& net, const Curve& c, const HopfAlgebra& h, const SVec& l,
                   const std::vector<const Rep*>& reps) {
  Scalar scale = h_counit(h, l) * Scalar::rational(1, h.dim);
  int n = int(c.visits.size());
  Stack st = stack_of(reps);
  if (n == 0) {
    Scalar s;
    for (int d : st.dim) s += Scalar(long(d) * d);
    net.factor *= s * scale;
    return;
  }
  if (n == 1) {
    SparseTensor t;
    t.labels = {net.leg.at({c.id, 0})};
    t.dims = {h.dim};
    for (int u = 0; u < h.dim; ++u) {
      Scalar s;
      for (size_t r = 0; r < reps.size(); ++r) s += Scalar(st.dim[r]) * mat_trace(reps[r]->mats[u], st.dim[r]);
      t.push({u}, s * scale);
    }
    net.tensors.push_back(std::move(t));
    return;
  }
  std::vector<int> ring(n);
  for (int j = 0; j < n; ++j) ring[j] = net.next_label++;
  for (int j = 0; j < n; ++j) {
    SparseTensor t;
    t.labels = {net.leg.at({c.id, j}), ring[j], ring[(j + 1) % n]};
    t.dims = {h.dim, st.total, st.total};
    for (int u = 0; u < h.dim; ++u)
      for (size_t r = 0; r < reps.size(); ++r) {
        int dr = st.dim[r], off = st.offset[r];
        Scalar w = j == 0 ? Scalar(dr) * scale : Scalar(1);
        const Matrix& m = reps[r]->mats[u];
        for (int a = 0; a < dr; ++a)
          for (int b = 0; b < dr; ++b)
            if (!m[a * dr + b].is_zero()) t.push({u, off + a, off + b}, w * m[a * dr + b]);
      }
    net.tensors.push_back(std::move(t));
  }
}

Scalar run(Network& net, const BracketConfig& cfg, ContractionStats* stats) {
  if (net.factor.is_zero()) return net.factor;
  std::mt19937_64 rng(cfg.order_seed.value_or(0));
  Scalar v = contract_network(std::move(net.tensors), cfg.cap, stats, cfg.order_seed ? &rng : nullptr);
  return v * net.factor;
}

const std::vector<Rep>& dual_irreps(const HopfTriplet& t, Color c) {
  const HopfAlgebra& h = algebra(t, c);
  if (!h.dual_irreps)
    throw MissingIrreps(std::string("no irreducible representations known for the dual of ") + algebra_letter(c) +
                        " = " + h.name);
  return *h.dual_irreps;
}

Scalar element_bracket(const TrisectionDiagram& d, const BracketConfig& cfg, ContractionStats* stats) {
  Pairings pr(cfg.triplet);
  Network net;
  assign_legs(net, d);
  for (auto& c : d.curves)
    add_element_curve(net, c, algebra(cfg.triplet, c.color), cfg.integrals[slot(c.color)]);
  add_crossings(net, d, cfg, pr);
  return run(net, cfg, stats);
}

Scalar rep_bracket(const TrisectionDiagram& d, const BracketConfig& cfg, ContractionStats* stats) {
  Pairings pr(cfg.triplet);
  std::array<std::vector<const Rep*>, 3> all;
  for (Color c : {Color::Red, Color::Blue, Color::Green}) {
    bool used = !d.curves_of(c).empty();
    if (!used) continue;
    const auto& irr = dual_irreps(cfg.triplet, c);
    int total = 0;
    for (auto& r : irr) {
      all[slot(c)].push_back(&r);
      total += r.dim * r.dim;
    }
    if (total != algebra(cfg.triplet, c).dim)
      throw MissingIrreps(std::string("irreps of the dual of ") + algebra_letter(c) + " are not exhaustive");
  }
  if (cfg.rep_mode == RepMode::Ring) {
    Network net;
    assign_legs(net, d);
    for (auto& c : d.curves)
      add_rep_curve(net, c, algebra(cfg.triplet, c.color), cfg.integrals[slot(c.color)], all[slot(c.color)]);
    add_crossings(net, d, cfg, pr);
    return run(net, cfg, stats);
  }
  // one network per representation labelling h: curves -> irreps
  double count = 1;
  for (auto& c : d.curves) count *= double(all[slot(c.color)].size());
  if (count > 1e6) throw ResourceExceeded("too many representation labellings: " + std::to_string(count));
  std::vector<size_t> h(d.curves.size(), 0);
  Scalar total;
  while (true) {
    Network net;
    assign_legs(net, d);
    for (size_t i = 0; i < d.curves.size(); ++i) {
      auto& c = d.curves[i];
      add_rep_curve(net, c, algebra(cfg.triplet, c.color), cfg.integrals[slot(c.color)],
                    {all[slot(c.color)][h[i]]});
    }
    add_crossings(net, d, cfg, pr);
    total += run(net, cfg, stats);
    size_t k = 0;
    while (k < h.size() && ++h[k] == all[slot(d.curves[k].color)].size()) h[k++] = 0;
    if (k == h.size()) break;
  }
  return total;
}

}  // namespace

BracketConfig default_config(const HopfTriplet& t, Evaluator ev) {
  BracketConfig cfg;
  cfg.triplet = t;
  cfg.evaluator = ev;
  if (t.integrals) {
    cfg.integrals = *t.integrals;
  } else {
    cfg.integrals = {normalized_integral(t.A), normalized_integral(t.B), normalized_integral(t.C)};
  }
  return cfg;
}

BracketConfig counting_config(const HopfTriplet& t, Evaluator ev) {
  BracketConfig cfg;
  cfg.triplet = t;
  cfg.evaluator = ev;
  if (t.integrals)
    cfg.integrals = *t.integrals;
  else
    cfg.integrals = {compute_integral(t.A), compute_integral(t.B), compute_integral(t.C)};
  return cfg;
}

Scalar trisection_bracket(const TrisectionDiagram& d, const BracketConfig& cfg, ContractionStats* stats) {
  check_config(cfg);
  auto rep = validate(d, false);
  if (!rep.ok()) throw InvalidInput("invalid diagram: " + rep.violations.front());
  if (cfg.evaluator == Evaluator::ElementBased) return element_bracket(d, cfg, stats);
  return rep_bracket(d, cfg, stats);
}

InvariantResult invariant(const TrisectionDiagram& d, const BracketConfig& cfg) {
  InvariantResult r;
  r.s4_bracket = trisection_bracket(standard_s4(), cfg);
  if (r.s4_bracket.is_zero())
    throw StabilizationObstruction("bracket of the standard genus-3 sphere diagram vanishes; no normalization");
  r.bracket = trisection_bracket(d, cfg);
  r.genus = d.genus;
  r.value = RootScalar::power(r.s4_bracket, -d.genus);
  r.value *= r.bracket;
  std::complex<double> xi = principal_cbrt(r.s4_bracket.to_complex());
  std::complex<double> omega = std::polar(1.0, 2 * M_PI / 3);
  for (int j = 0; j < 3; ++j) {
    std::complex<double> x = xi * std::pow(omega, j);
    r.branches[j] = r.bracket.to_complex() * std::pow(x, -d.genus);
  }
  return r;
}

CheckReport bracket_multiplicativity_check(const TrisectionDiagram& a, const TrisectionDiagram& b,
                                           const BracketConfig& cfg) {
  CheckReport rep;
  Scalar ab = trisection_bracket(connected_sum(a, b), cfg);
  Scalar prod = trisection_bracket(a, cfg) * trisection_bracket(b, cfg);
  rep.residual = abs_diff(ab, prod);
  rep.ok = ab == prod;
  rep.detail = "<T#T'> = " + ab.str() + ", <T><T'> = " + prod.str();
  return rep;
}

CheckReport cross_check(const TrisectionDiagram& d, const BracketConfig& elem, const BracketConfig& rep_cfg) {
  CheckReport rep;
  BracketConfig e = elem, r = rep_cfg;
  e.evaluator = Evaluator::ElementBased;
  r.evaluator = Evaluator::RepBased;
  Scalar x = trisection_bracket(d, e), y = trisection_bracket(d, r);
  rep.residual = abs_diff(x, y);
  rep.ok = x == y;
  std::ostringstream os;
  os << "element = " << x.str() << ", representation = " << y.str();
  if (!rep.ok && !y.is_zero() && d.genus > 0) {
    auto ratio = x.to_complex() / y.to_complex();
    os << ", ratio = " << decimal_string(ratio) << ", per-genus factor = "
       << decimal_string(std::pow(ratio, 1.0 / d.genus));
  }
  rep.detail = os.str();
  return rep;
}

}  // namespace trisect
