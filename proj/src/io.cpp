#include "trisect/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "trisect/errors.hpp"

namespace trisect {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

namespace {

ojson parse_file(const std::string& path) {
  try {
    return ojson::parse(read_file(path));
  } catch (const ojson::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string at(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string at(const std::string& path, size_t i) { return path + "[" + std::to_string(i) + "]"; }

const ojson& need(const ojson& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ParseError((path.empty() ? "top level" : path) + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(at(path, key) + ": missing");
  return *it;
}

const ojson& need_array(const ojson& j, size_t n, const std::string& path) {
  if (!j.is_array()) throw ParseError(path + ": expected an array");
  if (n != size_t(-1) && j.size() != n)
    throw ParseError(path + ": expected " + std::to_string(n) + " entries, got " + std::to_string(j.size()));
  return j;
}

std::vector<Scalar> dense(const ojson& j, size_t n, const std::string& path) {
  need_array(j, n, path);
  std::vector<Scalar> v;
  for (size_t i = 0; i < j.size(); ++i) v.push_back(scalar_from_json(j[i], at(path, i)));
  return v;
}

ojson dense_json(const SVec& x, int dim) {
  ojson a = ojson::array();
  for (auto& s : svec_to_dense(x, dim)) {
    if (s.exact() && s.cyclo().is_rational() && s.cyclo().rational().get_den() == 1)
      a.push_back(s.cyclo().rational().get_num().get_si());
    else if (s.exact() && s.cyclo().is_rational())
      a.push_back(s.cyclo().rational().get_str());
    else if (s.exact())
      a.push_back(scalar_to_json(s)["cyclo"]);
    else
      a.push_back({s.to_complex().real(), s.to_complex().imag()});
  }
  return a;
}

Pairing pairing_from_json(const ojson& j, int rows, int cols, const std::string& path) {
  need_array(j, rows, path);
  Pairing p(rows, cols);
  for (int i = 0; i < rows; ++i) {
    auto row = dense(j[i], cols, at(path, i));
    for (int k = 0; k < cols; ++k) p(i, k) = row[k];
  }
  return p;
}

std::string join(const std::string& dir, const std::string& file) {
  if (dir.empty() || std::filesystem::path(file).is_absolute()) return file;
  return (std::filesystem::path(dir) / file).string();
}

}  // namespace

Scalar scalar_from_json(const ojson& j, const std::string& path) {
  auto where = path.empty() ? std::string("scalar") : path;
  if (j.is_number_integer()) return Scalar(j.get<long>());
  if (j.is_number_float()) {
    double v = j.get<double>();
    return Scalar::approx({v, 0.0});
  }
  if (j.is_string()) {
    try {
      mpq_class q(j.get<std::string>());
      if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
      q.canonicalize();
      return Scalar(q);
    } catch (const std::invalid_argument&) {
      throw ParseError(where + ": not a rational number: " + j.get<std::string>());
    }
  }
  if (j.is_array()) {
    if (j.size() != 2 || !j[0].is_number() || !j[1].is_number())
      throw ParseError(where + ": expected [re, im]");
    return Scalar::approx({j[0].get<double>(), j[1].get<double>()});
  }
  if (j.is_object()) {
    const ojson& lv = need(j, "level", where);
    const ojson& cs = need(j, "coeffs", where);
    if (!lv.is_number_integer() || lv.get<int>() < 1) throw ParseError(at(where, "level") + ": expected a positive integer");
    int level = lv.get<int>();
    need_array(cs, size_t(euler_phi(level)), at(where, "coeffs"));
    std::vector<mpq_class> c;
    for (size_t i = 0; i < cs.size(); ++i) {
      Scalar s = scalar_from_json(cs[i], at(at(where, "coeffs"), i));
      if (!s.exact() || !s.cyclo().is_rational()) throw ParseError(at(at(where, "coeffs"), i) + ": expected a rational");
      c.push_back(s.cyclo().rational());
    }
    return Scalar(Cyclo::from_coeffs(level, std::move(c)));
  }
  throw ParseError(where + ": expected a number");
}

ojson scalar_to_json(const Scalar& s) {
  ojson j;
  auto z = s.to_complex();
  if (s.exact()) {
    j["exact"] = s.str();
    ojson c;
    c["level"] = s.cyclo().level();
    ojson cs = ojson::array();
    const auto& co = s.cyclo().coeffs();
    for (int i = 0; i < euler_phi(s.cyclo().level()); ++i)
      cs.push_back(i < int(co.size()) ? co[i].get_str() : std::string("0"));
    c["coeffs"] = cs;
    j["cyclo"] = c;
  } else {
    j["exact"] = nullptr;
  }
  j["re"] = z.real();
  j["im"] = z.imag();
  return j;
}

ojson root_to_json(const RootScalar& r) {
  ojson j;
  j["exact"] = r.str();
  j["coeff"] = scalar_to_json(r.coeff);
  j["cube_root_of"] = scalar_to_json(r.base);
  j["power"] = r.k;
  auto z = r.to_complex();
  j["re"] = z.real();
  j["im"] = z.imag();
  return j;
}

HopfAlgebra hopf_from_json(const ojson& j, const std::string& path) {
  static const std::vector<std::string> keys = {"name", "dim", "mult", "unit", "comult", "counit",
                                                "antipode", "weak", "basis"};
  if (!j.is_object()) throw ParseError((path.empty() ? "algebra" : path) + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(keys.begin(), keys.end(), it.key()) == keys.end())
      throw ParseError(at(path, it.key()) + ": unknown key");
  HopfAlgebra h;
  const ojson& d = need(j, "dim", path);
  if (!d.is_number_integer() || d.get<int>() < 1) throw ParseError(at(path, "dim") + ": expected a positive integer");
  int n = h.dim = d.get<int>();
  h.name = j.value("name", std::string("H"));
  h.weak = j.value("weak", false);
  const ojson& m = need_array(need(j, "mult", path), n, at(path, "mult"));
  h.mult.resize(size_t(n) * n);
  for (int a = 0; a < n; ++a) {
    need_array(m[a], n, at(at(path, "mult"), a));
    for (int b = 0; b < n; ++b)
      h.mult[size_t(a) * n + b] = svec_from_dense(dense(m[a][b], n, at(at(at(path, "mult"), a), b)));
  }
  h.unit = svec_from_dense(dense(need(j, "unit", path), n, at(path, "unit")));
  const ojson& c = need_array(need(j, "comult", path), n, at(path, "comult"));
  h.comult.resize(n);
  for (int a = 0; a < n; ++a) {
    need_array(c[a], n, at(at(path, "comult"), a));
    for (int b = 0; b < n; ++b) {
      auto row = dense(c[a][b], n, at(at(at(path, "comult"), a), b));
      for (int k = 0; k < n; ++k)
        if (!row[k].is_zero()) h.comult[a].push_back({b, k, row[k]});
    }
  }
  h.counit = dense(need(j, "counit", path), n, at(path, "counit"));
  const ojson& s = need_array(need(j, "antipode", path), n, at(path, "antipode"));
  for (int a = 0; a < n; ++a) h.antipode.push_back(svec_from_dense(dense(s[a], n, at(at(path, "antipode"), a))));
  if (j.contains("basis")) {
    const ojson& bs = need_array(j["basis"], n, at(path, "basis"));
    for (auto& x : bs) h.basis.push_back(x.is_string() ? x.get<std::string>() : x.dump());
  } else {
    for (int a = 0; a < n; ++a) h.basis.push_back("e" + std::to_string(a));
  }
  return h;
}

ojson hopf_to_json(const HopfAlgebra& h) {
  ojson j;
  int n = h.dim;
  j["name"] = h.name;
  j["dim"] = n;
  j["weak"] = h.weak;
  j["basis"] = h.basis;
  ojson m = ojson::array();
  for (int a = 0; a < n; ++a) {
    ojson row = ojson::array();
    for (int b = 0; b < n; ++b) row.push_back(dense_json(h.mult[size_t(a) * n + b], n));
    m.push_back(row);
  }
  j["mult"] = m;
  j["unit"] = dense_json(h.unit, n);
  ojson c = ojson::array();
  for (int a = 0; a < n; ++a) {
    std::vector<SVec> rows(n);
    for (auto& t : h.comult[a]) rows[t.a] = svec_add(rows[t.a], svec_basis(t.b, t.c));
    ojson row = ojson::array();
    for (auto& r : rows) row.push_back(dense_json(r, n));
    c.push_back(row);
  }
  j["comult"] = c;
  SVec counit;
  for (int a = 0; a < n; ++a) counit = svec_add(counit, svec_basis(a, h.counit[a]));
  j["counit"] = dense_json(counit, n);
  ojson s = ojson::array();
  for (auto& x : h.antipode) s.push_back(dense_json(x, n));
  j["antipode"] = s;
  return j;
}

HopfAlgebra load_hopf_file(const std::string& path) { return hopf_from_json(parse_file(path), path); }

std::vector<Rep> reps_from_json(const ojson& j, const std::string& path) {
  const ojson& rs = need_array(need(j, "reps", path), size_t(-1), at(path, "reps"));
  std::vector<Rep> out;
  for (size_t i = 0; i < rs.size(); ++i) {
    std::string p = at(at(path, "reps"), i);
    Rep r;
    r.name = rs[i].value("name", "rho" + std::to_string(i));
    const ojson& d = need(rs[i], "dim", p);
    if (!d.is_number_integer() || d.get<int>() < 1) throw ParseError(at(p, "dim") + ": expected a positive integer");
    r.dim = d.get<int>();
    const ojson& ms = need_array(need(rs[i], "matrices", p), size_t(-1), at(p, "matrices"));
    for (size_t k = 0; k < ms.size(); ++k) {
      std::string pk = at(at(p, "matrices"), k);
      need_array(ms[k], r.dim, pk);
      Matrix m;
      for (int row = 0; row < r.dim; ++row)
        for (auto& x : dense(ms[k][row], r.dim, at(pk, size_t(row)))) m.push_back(x);
      r.mats.push_back(std::move(m));
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Rep> load_rep_file(const std::string& path) { return reps_from_json(parse_file(path), path); }

HopfTriplet triplet_from_json(const ojson& j, const std::string& dir) {
  static const std::vector<std::string> keys = {"name", "A", "B", "C", "AB", "BC", "CA", "irreps", "dual_irreps"};
  if (!j.is_object()) throw ParseError("triplet: expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(keys.begin(), keys.end(), it.key()) == keys.end()) throw ParseError(it.key() + ": unknown key");
  auto algebra = [&](const char* key) {
    const ojson& a = need(j, key, "");
    HopfAlgebra h = a.is_string() ? load_hopf_file(join(dir, a.get<std::string>())) : hopf_from_json(a, key);
    if (!j.contains("name") || h.name == "H") h.name = key;
    return h;
  };
  HopfTriplet t;
  t.name = j.value("name", std::string("file"));
  t.A = algebra("A");
  t.B = algebra("B");
  t.C = algebra("C");
  t.allow_weak = t.A.weak || t.B.weak || t.C.weak;
  t.AB = pairing_from_json(need(j, "AB", ""), t.A.dim, t.B.dim, "AB");
  t.BC = pairing_from_json(need(j, "BC", ""), t.B.dim, t.C.dim, "BC");
  t.CA = pairing_from_json(need(j, "CA", ""), t.C.dim, t.A.dim, "CA");
  for (const char* group : {"irreps", "dual_irreps"}) {
    if (!j.contains(group)) continue;
    const ojson& g = j[group];
    for (auto [key, h] : {std::pair{"A", &t.A}, std::pair{"B", &t.B}, std::pair{"C", &t.C}}) {
      if (!g.contains(key)) continue;
      const ojson& r = g[key];
      std::string p = std::string(group) + "." + key;
      auto reps = r.is_string() ? load_rep_file(join(dir, r.get<std::string>())) : reps_from_json(r, p);
      if (std::string(group) == "irreps")
        h->irreps = reps;
      else
        h->dual_irreps = reps;
    }
  }
  double tol = 0;
  for (auto* h : {&t.A, &t.B, &t.C})
    for (auto& c : h->counit)
      if (!c.exact()) tol = Scalar::default_tol;
  for (auto* h : {&t.A, &t.B, &t.C}) {
    auto r = check_hopf_axioms(*h);
    if (!r.ok(tol)) throw InvalidInput("algebra " + h->name + " fails the axioms:\n" + r.str());
  }
  auto check = [&](const HopfAlgebra& a, const HopfAlgebra& b, const Pairing& p, const char* name) {
    auto r = check_skew_pairing(a, b, p);
    if (!r.ok(tol)) throw InvalidInput(std::string("pairing ") + name + " is not a skew pairing:\n" + r.str());
  };
  check(t.A, t.B, t.AB, "AB");
  check(t.B, t.C, t.BC, "BC");
  check(t.C, t.A, t.CA, "CA");
  auto r = check_triplet(t);
  if (!r.ok(tol)) throw InvalidInput("cyclic triplet identity fails:\n" + r.str());
  return t;
}

HopfTriplet load_triplet_file(const std::string& path) {
  return triplet_from_json(parse_file(path), std::filesystem::path(path).parent_path().string());
}

namespace {

Scalar fl(const Scalar& s) { return s.exact() ? Scalar::approx(s.to_complex()) : s; }

SVec fl(const SVec& x) {
  SVec y;
  for (auto& [i, c] : x) y.push_back({i, fl(c)});
  return y;
}

Rep fl(const Rep& r) {
  Rep o = r;
  for (auto& m : o.mats)
    for (auto& x : m) x = fl(x);
  return o;
}

Pairing fl(const Pairing& p) {
  Pairing o = p;
  for (auto& x : o.m) x = fl(x);
  return o;
}

}  // namespace

HopfAlgebra to_float(const HopfAlgebra& h) {
  HopfAlgebra o = h;
  for (auto& m : o.mult) m = fl(m);
  o.unit = fl(o.unit);
  for (auto& c : o.comult)
    for (auto& t : c) t.c = fl(t.c);
  for (auto& c : o.counit) c = fl(c);
  for (auto& s : o.antipode) s = fl(s);
  for (auto* reps : {&o.irreps, &o.dual_irreps})
    if (*reps)
      for (auto& r : **reps) r = fl(r);
  return o;
}

HopfTriplet to_float(const HopfTriplet& t) {
  HopfTriplet o = t;
  o.A = to_float(t.A);
  o.B = to_float(t.B);
  o.C = to_float(t.C);
  o.AB = fl(t.AB);
  o.BC = fl(t.BC);
  o.CA = fl(t.CA);
  if (o.integrals)
    for (auto& l : *o.integrals) l = fl(l);
  return o;
}

BracketConfig to_float(const BracketConfig& cfg) {
  BracketConfig o = cfg;
  o.triplet = to_float(cfg.triplet);
  for (auto& l : o.integrals) l = fl(l);
  return o;
}

// ------------------------------------------------------------ triplet specs

namespace {

std::string trim(std::string s) {
  while (!s.empty() && isspace((unsigned char)s.back())) s.pop_back();
  size_t i = 0;
  while (i < s.size() && isspace((unsigned char)s[i])) ++i;
  return s.substr(i);
}

// splits "C=..,B=..,M=.." at the given keys; the last value may contain commas
std::map<std::string, std::string> key_values(const std::string& body, const std::vector<std::string>& keys) {
  std::map<std::string, std::string> out;
  std::vector<std::pair<size_t, std::string>> starts;
  for (auto& k : keys) {
    std::string pat = k + "=";
    size_t p = body.rfind(pat, 0) == 0 ? 0 : body.find("," + pat);
    if (p == std::string::npos) continue;
    starts.push_back({p == 0 && body.rfind(pat, 0) == 0 ? 0 : p + 1, k});
  }
  std::sort(starts.begin(), starts.end());
  for (size_t i = 0; i < starts.size(); ++i) {
    size_t from = starts[i].first + starts[i].second.size() + 1;
    size_t to = i + 1 < starts.size() ? starts[i + 1].first - 1 : body.size();
    out[starts[i].second] = trim(body.substr(from, to - from));
  }
  return out;
}

}  // namespace

HopfTriplet parse_triplet(const std::string& raw) {
  std::string spec = trim(raw);
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw InvalidInput("triplet spec '" + spec + "': expected <kind>:<parameters>");
  std::string kind = spec.substr(0, colon), body = spec.substr(colon + 1);
  if (kind == "file") return load_triplet_file(body);
  if (kind == "kashaev") {
    std::string v = body.rfind("n=", 0) == 0 ? body.substr(2) : body;
    int n = 0;
    try {
      size_t used = 0;
      n = std::stoi(v, &used);
      if (used != v.size()) n = 0;
    } catch (const std::exception&) {
    }
    if (n < 1) throw InvalidInput("triplet spec '" + spec + "': expected kashaev:n=<positive integer>");
    return kashaev_triplet(n);
  }
  if (kind == "group" || kind == "weak") {
    auto kv = key_values(body, {"C", "B", "M"});
    if (!kv.count("C") || !kv.count("B"))
      throw InvalidInput("triplet spec '" + spec + "': expected " + kind + ":C=<group>,B=<group>");
    Group C = parse_group(kv["C"]), B = parse_group(kv["B"]);
    if (kind == "group") {
      if (kv.count("M")) throw InvalidInput("triplet spec '" + spec + "': M= needs weak:");
      return group_triplet(C, B);
    }
    Group K = k_group(C, B);
    return weak_triplet(C, B, parse_gset(K, kv.count("M") ? kv["M"] : "point"));
  }
  throw InvalidInput("unknown triplet kind '" + kind + "' (kashaev, group, weak, file)");
}

}  // namespace trisect
