#include "trisect/group.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "json.hpp"
#include "trisect/errors.hpp"

namespace trisect {

using nlohmann::json;

// ------------------------------------------------------------ matrices

Matrix mat_identity(int d) {
  Matrix m(size_t(d) * d);
  for (int i = 0; i < d; ++i) m[i * d + i] = Scalar(1);
  return m;
}

Matrix mat_mul(const Matrix& a, const Matrix& b, int d) {
  Matrix c(size_t(d) * d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      const Scalar& x = a[i * d + k];
      if (x.is_zero()) continue;
      for (int j = 0; j < d; ++j)
        if (!b[k * d + j].is_zero()) c[i * d + j] += x * b[k * d + j];
    }
  return c;
}

Matrix mat_transpose(const Matrix& a, int d) {
  Matrix t(size_t(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) t[j * d + i] = a[i * d + j];
  return t;
}

Scalar mat_trace(const Matrix& a, int d) {
  Scalar s;
  for (int i = 0; i < d; ++i) s += a[i * d + i];
  return s;
}

Rep transpose_rep(const Rep& r) {
  Rep t = r;
  for (auto& m : t.mats) m = mat_transpose(m, r.dim);
  return t;
}

// ------------------------------------------------------------ groups

bool Group::abelian() const {
  for (int a = 0; a < size(); ++a)
    for (int b = 0; b < a; ++b)
      if (table[a][b] != table[b][a]) return false;
  return true;
}

int Group::order(int g) const {
  int k = 1;
  for (int x = g; x != e; x = mul(x, g)) ++k;
  return k;
}

int Group::exponent() const {
  int l = 1;
  for (int g = 0; g < size(); ++g) l = std::lcm(l, order(g));
  return l;
}

int Group::find(const std::string& n) const {
  for (int i = 0; i < size(); ++i)
    if (elems[i] == n) return i;
  return -1;
}

Group make_group(std::string name, std::vector<std::string> elems, std::vector<std::vector<int>> table) {
  int n = int(elems.size());
  if (n == 0) throw InvalidInput("group " + name + ": no elements");
  if (int(table.size()) != n) throw InvalidInput("group " + name + ": table has wrong size");
  for (auto& row : table) {
    if (int(row.size()) != n) throw InvalidInput("group " + name + ": table row has wrong size");
    for (int x : row)
      if (x < 0 || x >= n) throw InvalidInput("group " + name + ": table entry out of range");
  }
  Group g;
  g.name = std::move(name);
  g.elems = std::move(elems);
  g.table = std::move(table);
  g.e = -1;
  for (int i = 0; i < n && g.e < 0; ++i) {
    bool ok = true;
    for (int j = 0; j < n && ok; ++j) ok = g.table[i][j] == j && g.table[j][i] == j;
    if (ok) g.e = i;
  }
  if (g.e < 0) throw InvalidInput("group " + g.name + ": no identity");
  g.inv.assign(n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (g.table[i][j] == g.e && g.table[j][i] == g.e) g.inv[i] = j;
  for (int i = 0; i < n; ++i)
    if (g.inv[i] < 0) throw InvalidInput("group " + g.name + ": element " + g.elems[i] + " has no inverse");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.table[g.table[a][b]][c] != g.table[a][g.table[b][c]])
          throw InvalidInput("group " + g.name + ": not associative");
  return g;
}

Group trivial_group() { return make_group("1", {"e"}, {{0}}); }

Group cyclic(int n) {
  if (n < 1) throw InvalidInput("cyclic group order must be positive");
  std::vector<std::string> el;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    el.push_back(std::to_string(i));
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  }
  return make_group("Z/" + std::to_string(n), el, t);
}

namespace {

using Perm = std::vector<int>;

Group perm_group(const std::string& name, const std::vector<Perm>& perms, const std::vector<std::string>& names) {
  int n = int(perms.size());
  std::map<Perm, int> idx;
  for (int i = 0; i < n; ++i) idx[perms[i]] = i;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Perm c(perms[a].size());
      for (size_t i = 0; i < c.size(); ++i) c[i] = perms[a][perms[b][i]];
      t[a][b] = idx.at(c);
    }
  return make_group(name, names, t);
}

// permutation images of the built-in permutation groups, by element index
std::vector<Perm> builtin_perms(const Group& g) {
  std::vector<Perm> out;
  if (g.name == "S3" || g.name == "S4") {
    for (auto& s : g.elems) {
      Perm p;
      for (char ch : s) p.push_back(ch - '0');
      out.push_back(p);
    }
  } else if (g.name == "D4") {
    for (auto& s : g.elems) {
      int refl = s[0] == 's' ? 1 : 0;
      int rot = 0;
      std::string rest = s.substr(refl);
      if (rest == "r") rot = 1;
      if (rest.size() == 2 && rest[0] == 'r') rot = rest[1] - '0';
      Perm p(4);
      for (int i = 0; i < 4; ++i) {
        int v = (i + rot) % 4;  // r^rot first
        p[i] = refl ? (4 - v) % 4 : v;
      }
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace

Group symmetric(int n) {
  if (n != 3 && n != 4) throw InvalidInput("only S3 and S4 are built in");
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> perms;
  std::vector<std::string> names;
  do {
    perms.push_back(p);
    std::string s;
    for (int x : p) s += char('0' + x);
    names.push_back(s);
  } while (std::next_permutation(p.begin(), p.end()));
  return perm_group("S" + std::to_string(n), perms, names);
}

Group dihedral4() {
  std::vector<std::string> names = {"e", "r", "r2", "r3", "s", "sr", "sr2", "sr3"};
  Group tmp;
  tmp.name = "D4";
  tmp.elems = names;
  return perm_group("D4", builtin_perms(tmp), names);
}

Group direct_product(const Group& a, const Group& b) {
  int na = a.size(), nb = b.size();
  std::vector<std::string> el;
  std::vector<std::vector<int>> t(na * nb, std::vector<int>(na * nb));
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) el.push_back("(" + a.elems[i] + "," + b.elems[j] + ")");
  for (int i = 0; i < na * nb; ++i)
    for (int j = 0; j < na * nb; ++j)
      t[i][j] = a.mul(i / nb, j / nb) * nb + b.mul(i % nb, j % nb);
  Group g = make_group(a.name + "x" + b.name, el, t);
  g.kind = Group::Kind::Product;
  g.factors = {a, b};
  return g;
}

Group opposite(const Group& g) {
  std::vector<std::vector<int>> t(g.size(), std::vector<int>(g.size()));
  for (int a = 0; a < g.size(); ++a)
    for (int b = 0; b < g.size(); ++b) t[a][b] = g.mul(b, a);
  Group o = make_group(g.name + "^op", g.elems, t);
  o.kind = Group::Kind::Opposite;
  o.factors = {g};
  return o;
}

Group load_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open group file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("group file " + path + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("elements") || !j.contains("table"))
    throw ParseError("group file " + path + ": expected keys \"elements\" and \"table\"");
  std::vector<std::string> el;
  for (auto& x : j["elements"]) el.push_back(x.is_string() ? x.get<std::string>() : x.dump());
  std::map<std::string, int> idx;
  for (size_t i = 0; i < el.size(); ++i) idx[el[i]] = int(i);
  std::vector<std::vector<int>> t;
  size_t r = 0;
  for (auto& row : j["table"]) {
    std::vector<int> tr;
    size_t c = 0;
    for (auto& x : row) {
      if (x.is_number_integer()) {
        tr.push_back(x.get<int>());
      } else {
        std::string s = x.is_string() ? x.get<std::string>() : x.dump();
        auto it = idx.find(s);
        if (it == idx.end())
          throw ParseError("group file " + path + ": table[" + std::to_string(r) + "][" + std::to_string(c) +
                           "]: unknown element " + s);
        tr.push_back(it->second);
      }
      ++c;
    }
    t.push_back(tr);
    ++r;
  }
  std::string name = j.contains("name") ? j["name"].get<std::string>() : path;
  return make_group(name, el, t);
}

namespace {

std::string trim(std::string s) {
  while (!s.empty() && isspace((unsigned char)s.back())) s.pop_back();
  size_t i = 0;
  while (i < s.size() && isspace((unsigned char)s[i])) ++i;
  return s.substr(i);
}

Group parse_factor(const std::string& f) {
  std::string s = trim(f);
  if (s == "1" || s == "Z/1" || s == "Z1") return trivial_group();
  if (s == "S3") return symmetric(3);
  if (s == "S4") return symmetric(4);
  if (s == "D4") return dihedral4();
  std::string digits;
  if (s.rfind("Z/", 0) == 0)
    digits = s.substr(2);
  else if (s.rfind("Z", 0) == 0 || s.rfind("C", 0) == 0)
    digits = s.substr(1);
  if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit)) {
    int n = std::stoi(digits);
    if (n < 1 || n > 1000) throw InvalidInput("cyclic group order out of range: " + s);
    return n == 1 ? trivial_group() : cyclic(n);
  }
  throw InvalidInput("unknown group: " + s);
}

}  // namespace

Group parse_group(const std::string& spec) {
  std::string s = trim(spec);
  if (s.size() > 5 && s.substr(s.size() - 5) == ".json") return load_group_file(s);
  if (s.rfind("file:", 0) == 0) return load_group_file(s.substr(5));
  // accept the unicode times sign
  for (size_t p; (p = s.find("\xC3\x97")) != std::string::npos;) s.replace(p, 2, "x");
  std::vector<std::string> parts;
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == 'x') {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  Group g = parse_factor(parts[0]);
  for (size_t i = 1; i < parts.size(); ++i) g = direct_product(g, parse_factor(parts[i]));
  return g;
}

// ------------------------------------------------------------ irreps

namespace {

std::vector<int> generating_set(const Group& g) {
  std::vector<int> gens;
  std::vector<char> span(g.size(), 0);
  span[g.e] = 1;
  for (int x = 0; x < g.size(); ++x) {
    if (span[x]) continue;
    gens.push_back(x);
    std::queue<int> q;
    for (int y = 0; y < g.size(); ++y)
      if (span[y]) q.push(y);
    while (!q.empty()) {
      int y = q.front();
      q.pop();
      for (int s : gens) {
        int z = g.mul(y, s);
        if (!span[z]) {
          span[z] = 1;
          q.push(z);
        }
      }
    }
  }
  return gens;
}

// one-dimensional characters as homomorphisms g -> Z/exp
std::vector<std::vector<int>> linear_character_exponents(const Group& g) {
  int ex = g.exponent();
  std::vector<int> gens = generating_set(g);
  std::vector<std::vector<int>> out;
  std::vector<int> choice(gens.size(), 0);
  while (true) {
    std::vector<int> x(g.size(), -1);
    x[g.e] = 0;
    std::queue<int> q;
    q.push(g.e);
    bool ok = true;
    while (!q.empty() && ok) {
      int y = q.front();
      q.pop();
      for (size_t i = 0; i < gens.size() && ok; ++i) {
        int z = g.mul(y, gens[i]);
        int v = (x[y] + choice[i]) % ex;
        if (x[z] < 0) {
          x[z] = v;
          q.push(z);
        } else if (x[z] != v) {
          ok = false;
        }
      }
    }
    for (int a = 0; a < g.size() && ok; ++a)
      for (int b = 0; b < g.size() && ok; ++b)
        if (x[g.mul(a, b)] != (x[a] + x[b]) % ex) ok = false;
    if (ok) out.push_back(x);
    size_t i = 0;
    while (i < choice.size() && ++choice[i] == ex) choice[i++] = 0;
    if (i == choice.size()) break;
  }
  return out;
}

std::vector<Rep> linear_characters(const Group& g) {
  int ex = g.exponent();
  std::vector<Rep> reps;
  int idx = 0;
  for (auto& x : linear_character_exponents(g)) {
    Rep r;
    r.name = g.name + ":chi" + std::to_string(idx++);
    r.dim = 1;
    for (int v : x) r.mats.push_back({Scalar(Cyclo::zeta(ex, v))});
    reps.push_back(r);
  }
  return reps;
}

Rep kron(const Rep& a, const Rep& b, const Group& ga, const Group& gb) {
  Rep r;
  r.name = a.name + "*" + b.name;
  r.dim = a.dim * b.dim;
  for (int i = 0; i < ga.size(); ++i)
    for (int j = 0; j < gb.size(); ++j) {
      Matrix m(size_t(r.dim) * r.dim);
      const Matrix &x = a.mats[i], &y = b.mats[j];
      for (int i1 = 0; i1 < a.dim; ++i1)
        for (int i2 = 0; i2 < a.dim; ++i2)
          for (int j1 = 0; j1 < b.dim; ++j1)
            for (int j2 = 0; j2 < b.dim; ++j2)
              m[(i1 * b.dim + j1) * r.dim + (i2 * b.dim + j2)] = x[i1 * a.dim + i2] * y[j1 * b.dim + j2];
      r.mats.push_back(m);
    }
  return r;
}

}  // namespace

std::vector<Rep> abelian_characters(const Group& g) {
  if (!g.abelian()) throw MissingIrreps("group " + g.name + " is not abelian");
  auto r = linear_characters(g);
  if (int(r.size()) != g.size()) throw InternalConsistency("character count mismatch for " + g.name);
  return r;
}

std::vector<Rep> group_irreps(const Group& g) {
  if (g.abelian()) return abelian_characters(g);
  std::vector<Rep> out;
  if (g.kind == Group::Kind::Product) {
    auto ra = group_irreps(g.factors[0]);
    auto rb = group_irreps(g.factors[1]);
    for (auto& a : ra)
      for (auto& b : rb) out.push_back(kron(a, b, g.factors[0], g.factors[1]));
  } else if (g.kind == Group::Kind::Opposite) {
    for (auto& r : group_irreps(g.factors[0])) out.push_back(transpose_rep(r));
  } else if (g.name == "S3" || g.name == "D4") {
    out = linear_characters(g);
    auto perms = builtin_perms(g);
    Rep r;
    r.name = g.name + ":std";
    r.dim = 2;
    for (auto& p : perms) {
      Matrix m(4);
      if (g.name == "S3") {
        // sum-zero subspace of C^3 with basis e0-e1, e1-e2
        auto f = [](int a) -> std::pair<int, int> {
          if (a == 0) return {1, 1};
          if (a == 1) return {0, 1};
          return {0, 0};
        };
        int srcs[2][2] = {{0, 1}, {1, 2}};
        for (int col = 0; col < 2; ++col) {
          auto fa = f(p[srcs[col][0]]), fb = f(p[srcs[col][1]]);
          m[0 * 2 + col] = Scalar(fa.first - fb.first);
          m[1 * 2 + col] = Scalar(fa.second - fb.second);
        }
      } else {
        // square with vertices (1,0),(0,1),(-1,0),(0,-1)
        const int vx[4] = {1, 0, -1, 0}, vy[4] = {0, 1, 0, -1};
        for (int col = 0; col < 2; ++col) {
          m[0 * 2 + col] = Scalar(vx[p[col]]);
          m[1 * 2 + col] = Scalar(vy[p[col]]);
        }
      }
      r.mats.push_back(m);
    }
    out.push_back(r);
  } else {
    throw MissingIrreps("no built-in irreducible representations for group " + g.name +
                        "; supply them in a representation file");
  }
  int total = 0;
  for (auto& r : out) total += r.dim * r.dim;
  if (total != g.size()) throw InternalConsistency("irrep dimensions do not match |" + g.name + "|");
  return out;
}

bool has_group_irreps(const Group& g) {
  try {
    group_irreps(g);
    return true;
  } catch (const MissingIrreps&) {
    return false;
  }
}

std::optional<std::vector<int>> find_isomorphism(const Group& a, const Group& b) {
  if (a.size() != b.size()) return std::nullopt;
  std::vector<int> gens = generating_set(a);
  std::vector<int> img(gens.size());
  int n = a.size();
  // extend the generator images to a map and test it
  auto extend = [&]() -> std::optional<std::vector<int>> {
    std::vector<int> f(n, -1);
    f[a.e] = b.e;
    std::queue<int> q;
    q.push(a.e);
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (size_t i = 0; i < gens.size(); ++i) {
        int y = a.mul(x, gens[i]), fy = b.mul(f[x], img[i]);
        if (f[y] < 0) {
          f[y] = fy;
          q.push(y);
        } else if (f[y] != fy) {
          return std::nullopt;
        }
      }
    }
    std::vector<char> hit(n, 0);
    for (int x = 0; x < n; ++x) {
      if (f[x] < 0 || hit[f[x]]) return std::nullopt;
      hit[f[x]] = 1;
    }
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (f[a.mul(x, y)] != b.mul(f[x], f[y])) return std::nullopt;
    return f;
  };
  std::function<std::optional<std::vector<int>>(size_t)> go = [&](size_t i) -> std::optional<std::vector<int>> {
    if (i == gens.size()) return extend();
    for (int y = 0; y < n; ++y) {
      if (b.order(y) != a.order(gens[i])) continue;
      img[i] = y;
      if (auto f = go(i + 1)) return f;
    }
    return std::nullopt;
  };
  return go(0);
}

std::optional<std::vector<Rep>> irreps_via_isomorphism(const Group& g, const std::vector<Group>& candidates) {
  for (auto& c : candidates) {
    auto f = find_isomorphism(g, c);
    if (!f) continue;
    std::vector<Rep> out;
    for (auto& r : group_irreps(c)) {
      Rep p = r;
      for (int x = 0; x < g.size(); ++x) p.mats[x] = r.mats[(*f)[x]];
      out.push_back(std::move(p));
    }
    return out;
  }
  return std::nullopt;
}

// ------------------------------------------------------------ G-sets

bool GSet::transitive() const {
  if (points.empty()) return false;
  std::vector<char> seen(size(), 0);
  seen[0] = 1;
  std::queue<int> q;
  q.push(0);
  int count = 1;
  while (!q.empty()) {
    int m = q.front();
    q.pop();
    for (int k = 0; k < K.size(); ++k) {
      int n = act[k][m];
      if (!seen[n]) {
        seen[n] = 1;
        ++count;
        q.push(n);
      }
    }
  }
  return count == size();
}

GSet point_set(const Group& K) {
  GSet s;
  s.K = K;
  s.points = {"*"};
  s.act.assign(K.size(), std::vector<int>{0});
  return s;
}

GSet coset_set(const Group& K, const std::vector<int>& sub) {
  std::set<int> h(sub.begin(), sub.end());
  if (!h.count(K.e)) throw InvalidInput("coset subgroup must contain the identity");
  for (int a : h) {
    if (a < 0 || a >= K.size()) throw InvalidInput("coset subgroup element out of range");
    for (int b : h)
      if (!h.count(K.mul(a, b))) throw InvalidInput("coset subgroup is not closed under multiplication");
  }
  std::vector<int> coset_of(K.size(), -1), reps;
  for (int g = 0; g < K.size(); ++g) {
    if (coset_of[g] >= 0) continue;
    int id = int(reps.size());
    reps.push_back(g);
    for (int x : h) coset_of[K.mul(g, x)] = id;
  }
  GSet s;
  s.K = K;
  for (int r : reps) s.points.push_back(K.elems[r] + "H");
  s.act.assign(K.size(), std::vector<int>(reps.size()));
  for (int k = 0; k < K.size(); ++k)
    for (size_t m = 0; m < reps.size(); ++m) s.act[k][m] = coset_of[K.mul(k, reps[m])];
  return s;
}

GSet restrict_set(const GSet& m, const Group& H, const std::vector<int>& embed) {
  GSet s;
  s.K = H;
  s.points = m.points;
  s.act.resize(H.size());
  for (int h = 0; h < H.size(); ++h) s.act[h] = m.act[embed[h]];
  return s;
}

namespace {

GSet gset_from_json(const Group& K, const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("points") || !j.contains("action"))
    throw ParseError(where + ": expected keys \"points\" and \"action\"");
  GSet s;
  s.K = K;
  for (auto& p : j["points"]) s.points.push_back(p.is_string() ? p.get<std::string>() : p.dump());
  auto& a = j["action"];
  if (!a.is_array() || int(a.size()) != K.size())
    throw ParseError(where + ": \"action\" needs one row per element of K (" + std::to_string(K.size()) + ")");
  for (size_t k = 0; k < a.size(); ++k) {
    std::vector<int> row;
    for (auto& x : a[k]) {
      int v = -1;
      if (x.is_number_integer()) {
        v = x.get<int>();
      } else {
        std::string n = x.is_string() ? x.get<std::string>() : x.dump();
        for (int i = 0; i < s.size(); ++i)
          if (s.points[i] == n) v = i;
      }
      if (v < 0 || v >= s.size()) throw ParseError(where + ": action[" + std::to_string(k) + "] has a bad point");
      row.push_back(v);
    }
    if (int(row.size()) != s.size()) throw ParseError(where + ": action row has wrong length");
    s.act.push_back(row);
  }
  // action axioms
  for (int m = 0; m < s.size(); ++m) {
    if (s.act[K.e][m] != m) throw InvalidInput(where + ": identity does not act trivially");
    for (int g = 0; g < K.size(); ++g)
      for (int h = 0; h < K.size(); ++h)
        if (s.act[K.mul(g, h)][m] != s.act[g][s.act[h][m]]) throw InvalidInput(where + ": not a left action");
  }
  return s;
}

}  // namespace

GSet parse_gset(const Group& K, const std::string& spec) {
  std::string s = trim(spec);
  if (s.empty() || s == "point") return point_set(K);
  if (s.rfind("cosets:", 0) == 0) {
    std::vector<int> sub;
    std::string body = s.substr(7);
    size_t start = 0;
    for (size_t i = 0; i <= body.size(); ++i)
      if (i == body.size() || body[i] == ',' || body[i] == ';') {
        std::string tok = trim(body.substr(start, i - start));
        start = i + 1;
        if (tok.empty()) continue;
        int v = K.find(tok);
        if (v < 0 && std::all_of(tok.begin(), tok.end(), ::isdigit)) v = std::stoi(tok);
        if (v < 0 || v >= K.size()) throw InvalidInput("unknown element of K in coset spec: " + tok);
        sub.push_back(v);
      }
    return coset_set(K, sub);
  }
  json j;
  try {
    if (s[0] == '{') {
      j = json::parse(s);
    } else {
      std::ifstream in(s);
      if (!in) throw ParseError("cannot open K-set file " + s);
      j = json::parse(in);
    }
  } catch (const json::parse_error& e) {
    throw ParseError("K-set spec: " + std::string(e.what()));
  }
  return gset_from_json(K, j, "K-set " + s);
}

}  // namespace trisect
