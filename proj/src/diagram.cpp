#include "trisect/diagram.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "trisect/errors.hpp"

namespace trisect {

using json = nlohmann::ordered_json;

const char* color_name(Color c) {
  switch (c) {
    case Color::Red:
      return "red";
    case Color::Blue:
      return "blue";
    case Color::Green:
      return "green";
  }
  return "?";
}

Color parse_color(const std::string& s) {
  std::string t = s;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "red" || t == "r" || t == "alpha") return Color::Red;
  if (t == "blue" || t == "b" || t == "beta") return Color::Blue;
  if (t == "green" || t == "g" || t == "gamma") return Color::Green;
  throw ParseError("unknown colour '" + s + "'");
}

bool color_first(Color a, Color b) {
  return (a == Color::Red && b == Color::Blue) || (a == Color::Blue && b == Color::Green) ||
         (a == Color::Green && b == Color::Red);
}

int TrisectionDiagram::curve_index(const std::string& id) const {
  for (size_t i = 0; i < curves.size(); ++i)
    if (curves[i].id == id) return int(i);
  return -1;
}

int TrisectionDiagram::crossing_index(const std::string& id) const {
  for (size_t i = 0; i < crossings.size(); ++i)
    if (crossings[i].id == id) return int(i);
  return -1;
}

const Curve& TrisectionDiagram::curve(const std::string& id) const {
  int i = curve_index(id);
  if (i < 0) throw InvalidInput("no curve '" + id + "'");
  return curves[i];
}

const Crossing& TrisectionDiagram::crossing(const std::string& id) const {
  int i = crossing_index(id);
  if (i < 0) throw InvalidInput("no crossing '" + id + "'");
  return crossings[i];
}

std::vector<int> TrisectionDiagram::curves_of(Color c) const {
  std::vector<int> out;
  for (size_t i = 0; i < curves.size(); ++i)
    if (curves[i].color == c) out.push_back(int(i));
  return out;
}

bool operator==(const Curve& a, const Curve& b) {
  return a.id == b.id && a.color == b.color && a.visits == b.visits;
}

bool operator==(const TrisectionDiagram& a, const TrisectionDiagram& b) {
  return a.genus == b.genus && a.kind == b.kind && a.curves == b.curves && a.crossings == b.crossings &&
         a.declared_k == b.declared_k;
}

// ------------------------------------------------------------ validation

ValidationReport validate(const TrisectionDiagram& d, bool strict) {
  ValidationReport rep;
  auto bad = [&](const std::string& s) { rep.violations.push_back(s); };
  if (d.genus < 0) bad("negative genus");
  if (d.declared_k && (*d.declared_k < 0 || *d.declared_k > d.genus)) bad("declared k outside [0, g]");
  std::set<std::string> ids;
  for (auto& c : d.curves)
    if (!ids.insert(c.id).second) bad("duplicate curve id '" + c.id + "'");
  ids.clear();
  for (auto& x : d.crossings)
    if (!ids.insert(x.id).second) bad("duplicate crossing id '" + x.id + "'");
  if (strict)
    for (Color c : {Color::Red, Color::Blue, Color::Green}) {
      int n = int(d.curves_of(c).size());
      if (n != d.genus)
        bad(std::string("strict: ") + std::to_string(n) + " " + color_name(c) + " curves, genus " +
            std::to_string(d.genus));
    }

  for (auto& x : d.crossings) {
    if (x.sign != 1 && x.sign != -1) bad("crossing '" + x.id + "': sign must be +1 or -1");
    bool dangling = false;
    for (auto& e : x.ends) {
      int ci = d.curve_index(e.curve);
      if (ci < 0 || e.index < 0 || e.index >= int(d.curves[ci].visits.size())) {
        bad("dangling end: crossing '" + x.id + "' references (" + e.curve + ", " + std::to_string(e.index) + ")");
        dangling = true;
      } else if (d.curves[ci].visits[e.index] != x.id) {
        bad("crossing '" + x.id + "': curve '" + e.curve + "' visit " + std::to_string(e.index) + " is '" +
            d.curves[ci].visits[e.index] + "'");
      }
    }
    if (dangling) continue;
    if (x.ends[0].curve == x.ends[1].curve) {
      bad("self-crossing of curve '" + x.ends[0].curve + "' at '" + x.id + "'");
      continue;
    }
    Color a = d.curve(x.ends[0].curve).color, b = d.curve(x.ends[1].curve).color;
    if (a == b)
      bad("same-colour intersection at '" + x.id + "'");
    else if (!color_first(a, b))
      bad("crossing '" + x.id + "': ends not in colour order");
  }

  for (auto& c : d.curves) {
    std::set<std::string> seen;
    for (size_t i = 0; i < c.visits.size(); ++i) {
      const std::string& v = c.visits[i];
      if (!seen.insert(v).second) bad("curve '" + c.id + "' visits '" + v + "' twice");
      int xi = d.crossing_index(v);
      if (xi < 0) {
        bad("curve '" + c.id + "' visits unknown crossing '" + v + "'");
        continue;
      }
      auto& x = d.crossings[xi];
      if (!(x.ends[0] == CrossingEnd{c.id, int(i)} || x.ends[1] == CrossingEnd{c.id, int(i)}))
        bad("curve '" + c.id + "' visit " + std::to_string(i) + ": crossing '" + v + "' has no matching end");
    }
  }
  return rep;
}

namespace {

size_t segment_count(const Curve& c) { return std::max<size_t>(1, c.visits.size()); }

}  // namespace

std::vector<std::string> check_corners(const EmbeddedDiagram& e) {
  std::vector<std::string> out;
  const auto& d = e.base;
  for (auto& x : d.crossings) {
    const Sides *out1, *in1, *out2, *in2;
    auto get = [&](const CrossingEnd& end, const Sides*& o, const Sides*& in) {
      auto it = e.segment_sides.find(end.curve);
      if (it == e.segment_sides.end()) return false;
      int n = int(it->second.size());
      if (end.index < 0 || end.index >= n) return false;
      o = &it->second[end.index];
      in = &it->second[(end.index + n - 1) % n];
      return true;
    };
    if (!get(x.ends[0], out1, in1) || !get(x.ends[1], out2, in2)) {
      out.push_back("crossing '" + x.id + "': missing segment sides");
      continue;
    }
    bool ok;
    if (x.sign > 0)
      ok = out1->first == out2->second && in1->first == out2->first && in1->second == in2->first &&
           out1->second == in2->second;
    else
      ok = out1->second == out2->first && in1->second == out2->second && in1->first == in2->second &&
           out1->first == in2->first;
    if (!ok) out.push_back("corner mismatch at crossing '" + x.id + "'");
  }
  return out;
}

ValidationReport validate(const EmbeddedDiagram& e, bool strict) {
  ValidationReport rep = validate(e.base, strict);
  if (e.regions.empty()) return rep;
  auto bad = [&](const std::string& s) { rep.violations.push_back(s); };
  std::set<std::string> regions(e.regions.begin(), e.regions.end()), used;
  if (regions.size() != e.regions.size()) bad("duplicate region id");
  for (auto& c : e.base.curves) {
    auto it = e.segment_sides.find(c.id);
    if (it == e.segment_sides.end()) {
      bad("curve '" + c.id + "' has no segment sides");
      continue;
    }
    if (it->second.size() != segment_count(c))
      bad("curve '" + c.id + "': " + std::to_string(it->second.size()) + " segment sides, expected " +
          std::to_string(segment_count(c)));
    for (auto& [l, r] : it->second)
      for (auto* s : {&l, &r}) {
        if (!regions.count(*s)) bad("curve '" + c.id + "': unknown region '" + *s + "'");
        used.insert(*s);
      }
  }
  for (auto& [id, sides] : e.segment_sides)
    if (e.base.curve_index(id) < 0) bad("segment sides for unknown curve '" + id + "'");
  for (auto& r : e.regions)
    if (!used.count(r) && e.regions.size() > 1) bad("region '" + r + "' is not adjacent to any curve");
  if (e.boundary_region && !regions.count(*e.boundary_region)) bad("unknown boundary region");
  if (e.base.kind == Kind::Disc && !e.boundary_region) bad("disc diagram without boundary region");
  for (auto& s : check_corners(e)) bad(s);
  return rep;
}

int euler_characteristic(int g, int k) {
  if (g < 0 || k < 0) throw InvalidInput("genus and k must be nonnegative");
  if (k > g) throw InvalidInput("k must not exceed the genus");
  return 2 + g - 3 * k;
}

// ------------------------------------------------------------ catalog

namespace {

struct Builder {
  TrisectionDiagram d;
  void curve(const std::string& id, Color c, std::vector<std::string> visits) { d.curves.push_back({id, c, visits}); }
  // first argument lies on the first-colour curve
  void crossing(const std::string& id, const std::string& a, const std::string& b, int sign) {
    Crossing x;
    x.id = id;
    x.sign = sign;
    auto find = [&](const std::string& cid) {
      auto& c = d.curve(cid);
      auto it = std::find(c.visits.begin(), c.visits.end(), id);
      return CrossingEnd{cid, int(it - c.visits.begin())};
    };
    x.ends = {find(a), find(b)};
    d.crossings.push_back(x);
  }
};

}  // namespace

TrisectionDiagram standard_s4() {
  Builder b;
  b.d.genus = 3;
  b.d.declared_k = 1;
  b.curve("F1", Color::Red, {"p1"});
  b.curve("F2", Color::Red, {"q2"});
  b.curve("F3", Color::Red, {"s1", "s2"});
  b.curve("b1", Color::Blue, {"p2"});
  b.curve("b2", Color::Blue, {"q1", "q2"});
  b.curve("b3", Color::Blue, {"s1"});
  b.curve("c1", Color::Green, {"p1", "p2"});
  b.curve("c2", Color::Green, {"q1"});
  b.curve("c3", Color::Green, {"s2"});
  b.crossing("p1", "c1", "F1", -1);
  b.crossing("p2", "b1", "c1", 1);
  b.crossing("q1", "b2", "c2", -1);
  b.crossing("q2", "F2", "b2", 1);
  b.crossing("s1", "F3", "b3", -1);
  b.crossing("s2", "c3", "F3", 1);
  return b.d;
}

TrisectionDiagram cp2() {
  Builder b;
  b.d.genus = 1;
  b.d.declared_k = 0;
  b.curve("red", Color::Red, {"rb", "gr"});
  b.curve("blue", Color::Blue, {"bg", "rb"});
  b.curve("green", Color::Green, {"gr", "bg"});
  b.crossing("rb", "red", "blue", 1);
  b.crossing("bg", "blue", "green", 1);
  b.crossing("gr", "green", "red", 1);
  return b.d;
}

TrisectionDiagram cp2bar() {
  TrisectionDiagram d = cp2();
  for (auto& x : d.crossings) x.sign = -1;
  return d;
}

TrisectionDiagram crossing_free(int g) {
  if (g < 0) throw InvalidInput("negative genus");
  TrisectionDiagram d;
  d.genus = g;
  d.declared_k = g;
  for (Color c : {Color::Red, Color::Blue, Color::Green})
    for (int i = 1; i <= g; ++i) d.curves.push_back({std::string(1, color_name(c)[0]) + std::to_string(i), c, {}});
  return d;
}

EmbeddedDiagram embedded_s4() {
  EmbeddedDiagram e;
  e.base = standard_s4();
  e.regions = {"O", "S1", "S2", "S3"};
  auto& s = e.segment_sides;
  s["c1"] = {{"S1", "S1"}, {"O", "O"}};
  s["F1"] = {{"S1", "O"}};
  s["b1"] = {{"O", "S1"}};
  s["b2"] = {{"S2", "S2"}, {"O", "O"}};
  s["c2"] = {{"S2", "O"}};
  s["F2"] = {{"O", "S2"}};
  s["F3"] = {{"S3", "S3"}, {"O", "O"}};
  s["b3"] = {{"S3", "O"}};
  s["c3"] = {{"O", "S3"}};
  return e;
}

EmbeddedDiagram embedded_cp2() {
  EmbeddedDiagram e;
  e.base = cp2();
  e.regions = {"R1", "R2", "R3"};
  for (auto* c : {"red", "blue", "green"}) e.segment_sides[c] = {{"R2", "R3"}, {"R1", "R2"}};
  return e;
}

EmbeddedDiagram embedded_cp2bar() {
  // mirror image: all signs and all sides swap
  EmbeddedDiagram e;
  e.base = cp2bar();
  e.regions = {"R1", "R2", "R3"};
  for (auto* c : {"red", "blue", "green"}) e.segment_sides[c] = {{"R3", "R2"}, {"R2", "R1"}};
  return e;
}

EmbeddedDiagram embedded_crossing_free() {
  EmbeddedDiagram e;
  e.base = crossing_free(1);
  e.regions = {"A", "B", "C"};
  e.segment_sides["r1"] = {{"A", "C"}};
  e.segment_sides["b1"] = {{"B", "A"}};
  e.segment_sides["g1"] = {{"C", "B"}};
  return e;
}

std::vector<std::string> catalog_names() { return {"s4", "s4'", "cp2", "cp2bar", "free1", "free<g>", "A#B"}; }

namespace {

std::optional<EmbeddedDiagram> embedded_piece(const std::string& name) {
  if (name == "s4") return embedded_s4();
  if (name == "s4'") return remove_disc(embedded_s4(), "O");
  if (name == "cp2") return embedded_cp2();
  if (name == "cp2bar") return embedded_cp2bar();
  if (name == "free1") return embedded_crossing_free();
  return std::nullopt;
}

// region used to glue a catalog piece into a connected sum
std::string gluing_region(const EmbeddedDiagram& e) {
  if (e.base.curve_index("F1") >= 0 && std::count(e.regions.begin(), e.regions.end(), "O")) return "O";
  return e.regions.empty() ? "" : e.regions.front();
}

TrisectionDiagram abstract_piece(const std::string& name) {
  if (auto e = embedded_piece(name)) return e->base;
  if (name.rfind("free", 0) == 0) {
    try {
      size_t used = 0;
      int g = std::stoi(name.substr(4), &used);
      if (used == name.size() - 4) return crossing_free(g);
    } catch (const std::logic_error&) {
    }
  }
  throw InvalidInput("unknown catalog diagram '" + name + "'");
}

std::vector<std::string> split_sum(const std::string& name) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : name) {
    if (c == '#') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

TrisectionDiagram catalog(const std::string& name) {
  auto parts = split_sum(name);
  TrisectionDiagram d = abstract_piece(parts[0]);
  for (size_t i = 1; i < parts.size(); ++i) d = connected_sum(d, abstract_piece(parts[i]));
  return d;
}

std::optional<EmbeddedDiagram> embedded_catalog(const std::string& name) {
  auto parts = split_sum(name);
  auto e = embedded_piece(parts[0]);
  if (!e) return std::nullopt;
  for (size_t i = 1; i < parts.size(); ++i) {
    auto f = embedded_piece(parts[i]);
    if (!f) return std::nullopt;
    e = connected_sum(*e, gluing_region(*e), *f, gluing_region(*f));
  }
  return e;
}

// ------------------------------------------------------------ sums and discs

namespace {

std::string fresh(const std::string& id, const std::set<std::string>& taken) {
  std::string s = id;
  while (taken.count(s)) s += "'";
  return s;
}

struct Renaming {
  std::map<std::string, std::string> curves, crossings;
};

// appends b to a, renaming colliding ids of b
Renaming append(TrisectionDiagram& a, const TrisectionDiagram& b) {
  Renaming rn;
  std::set<std::string> cids, xids;
  for (auto& c : a.curves) cids.insert(c.id);
  for (auto& x : a.crossings) xids.insert(x.id);
  for (auto& c : b.curves) cids.insert(rn.curves[c.id] = fresh(c.id, cids));
  for (auto& x : b.crossings) xids.insert(rn.crossings[x.id] = fresh(x.id, xids));
  for (auto c : b.curves) {
    c.id = rn.curves[c.id];
    for (auto& v : c.visits) v = rn.crossings.at(v);
    a.curves.push_back(c);
  }
  for (auto x : b.crossings) {
    x.id = rn.crossings[x.id];
    for (auto& e : x.ends) e.curve = rn.curves.at(e.curve);
    a.crossings.push_back(x);
  }
  a.genus += b.genus;
  if (a.declared_k && b.declared_k)
    a.declared_k = *a.declared_k + *b.declared_k;
  else
    a.declared_k.reset();
  return rn;
}

}  // namespace

TrisectionDiagram connected_sum(const TrisectionDiagram& a, const TrisectionDiagram& b) {
  if (a.kind != Kind::Closed || b.kind != Kind::Closed) throw InvalidInput("connected sum needs closed diagrams");
  TrisectionDiagram d = a;
  append(d, b);
  return d;
}

EmbeddedDiagram connected_sum(const EmbeddedDiagram& a, const std::string& ra, const EmbeddedDiagram& b,
                              const std::string& rb) {
  if (a.base.kind != Kind::Closed || b.base.kind != Kind::Closed)
    throw InvalidInput("connected sum needs closed diagrams");
  if (std::find(a.regions.begin(), a.regions.end(), ra) == a.regions.end() ||
      std::find(b.regions.begin(), b.regions.end(), rb) == b.regions.end())
    throw InvalidInput("connected sum: unknown gluing region");
  EmbeddedDiagram e = a;
  Renaming rn = append(e.base, b.base);
  std::set<std::string> taken(a.regions.begin(), a.regions.end());
  std::map<std::string, std::string> rmap;
  for (auto& r : b.regions) {
    if (r == rb) {
      rmap[r] = ra;
    } else {
      rmap[r] = fresh(r, taken);
      taken.insert(rmap[r]);
      e.regions.push_back(rmap[r]);
    }
  }
  for (auto& [cid, sides] : b.segment_sides) {
    auto& out = e.segment_sides[rn.curves.at(cid)];
    for (auto& [l, r] : sides) out.push_back({rmap.at(l), rmap.at(r)});
  }
  return e;
}

TrisectionDiagram remove_disc(const TrisectionDiagram& d) {
  if (d.kind != Kind::Closed) throw InvalidInput("remove_disc needs a closed diagram");
  TrisectionDiagram r = d;
  r.kind = Kind::Disc;
  return r;
}

EmbeddedDiagram remove_disc(const EmbeddedDiagram& e, const std::string& region) {
  if (std::find(e.regions.begin(), e.regions.end(), region) == e.regions.end())
    throw InvalidInput("remove_disc: unknown region '" + region + "'");
  EmbeddedDiagram r = e;
  r.base = remove_disc(e.base);
  r.boundary_region = region;
  return r;
}

// ------------------------------------------------------------ normal forms

TrisectionDiagram normalize(TrisectionDiagram d) {
  for (auto& x : d.crossings) {
    int a = d.curve_index(x.ends[0].curve), b = d.curve_index(x.ends[1].curve);
    if (a < 0 || b < 0) continue;
    if (color_first(d.curves[b].color, d.curves[a].color)) std::swap(x.ends[0], x.ends[1]);
  }
  return d;
}

TrisectionDiagram canonical_labels(const TrisectionDiagram& d) {
  std::map<std::string, std::string> rn;
  for (auto& c : d.curves)
    for (auto& v : c.visits)
      if (!rn.count(v)) rn[v] = "x" + std::to_string(rn.size());
  for (auto& x : d.crossings)
    if (!rn.count(x.id)) rn[x.id] = "x" + std::to_string(rn.size());
  TrisectionDiagram r = d;
  for (auto& c : r.curves)
    for (auto& v : c.visits) v = rn[v];
  for (auto& x : r.crossings) x.id = rn[x.id];
  std::sort(r.crossings.begin(), r.crossings.end(), [](auto& a, auto& b) {
    return std::stoi(a.id.substr(1)) < std::stoi(b.id.substr(1));
  });
  return r;
}

bool same_up_to_relabeling(const TrisectionDiagram& a, const TrisectionDiagram& b) {
  return canonical_labels(normalize(a)) == canonical_labels(normalize(b));
}

// ------------------------------------------------------------ JSON

namespace {

json to_json(const TrisectionDiagram& d) {
  json j;
  j["genus"] = d.genus;
  j["kind"] = d.kind == Kind::Closed ? "closed" : "disc";
  if (d.declared_k) j["k"] = *d.declared_k;
  j["curves"] = json::array();
  for (auto& c : d.curves) j["curves"].push_back({{"id", c.id}, {"color", color_name(c.color)}, {"visits", c.visits}});
  j["crossings"] = json::array();
  for (auto& x : d.crossings) {
    json ends = json::array();
    for (auto& e : x.ends) ends.push_back({e.curve, e.index});
    j["crossings"].push_back({{"id", x.id}, {"sign", x.sign}, {"ends", ends}});
  }
  return j;
}

// field-level error with a path such as curves[2].visits
[[noreturn]] void field_error(const std::string& path, const std::string& what) {
  throw ParseError("diagram file: field '" + path + "': " + what);
}

const json& need(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) field_error(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) field_error(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

int need_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) field_error(path, "expected an integer");
  return j.get<int>();
}

std::string need_str(const json& j, const std::string& path) {
  if (!j.is_string()) field_error(path, "expected a string");
  return j.get<std::string>();
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& path) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (auto* a : allowed) ok = ok || it.key() == a;
    if (!ok) field_error(path.empty() ? it.key() : path + "." + it.key(), "unknown key");
  }
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    size_t byte = std::min<size_t>(e.byte, text.size());
    int line = 1 + int(std::count(text.begin(), text.begin() + byte, '\n'));
    throw ParseError("diagram file: line " + std::to_string(line) + ": " + e.what());
  }
}

EmbeddedDiagram from_json(const json& j, bool strict) {
  if (!j.is_object()) field_error("", "top level must be an object");
  if (strict)
    check_keys(j, {"genus", "kind", "k", "curves", "crossings", "regions", "segment_sides", "boundary_region"}, "");
  EmbeddedDiagram e;
  auto& d = e.base;
  d.genus = need_int(need(j, "genus", ""), "genus");
  std::string kind = j.contains("kind") ? need_str(j["kind"], "kind") : "closed";
  if (kind == "closed")
    d.kind = Kind::Closed;
  else if (kind == "disc")
    d.kind = Kind::Disc;
  else
    field_error("kind", "expected \"closed\" or \"disc\"");
  if (j.contains("k")) d.declared_k = need_int(j["k"], "k");
  const json& curves = need(j, "curves", "");
  if (!curves.is_array()) field_error("curves", "expected an array");
  for (size_t i = 0; i < curves.size(); ++i) {
    std::string p = "curves[" + std::to_string(i) + "]";
    const json& c = curves[i];
    if (!c.is_object()) field_error(p, "expected an object");
    if (strict) check_keys(c, {"id", "color", "visits"}, p);
    Curve cv;
    cv.id = need_str(need(c, "id", p), p + ".id");
    try {
      cv.color = parse_color(need_str(need(c, "color", p), p + ".color"));
    } catch (const ParseError& err) {
      field_error(p + ".color", err.what());
    }
    const json& v = need(c, "visits", p);
    if (!v.is_array()) field_error(p + ".visits", "expected an array");
    for (size_t k = 0; k < v.size(); ++k) cv.visits.push_back(need_str(v[k], p + ".visits[" + std::to_string(k) + "]"));
    d.curves.push_back(cv);
  }
  const json& xs = need(j, "crossings", "");
  if (!xs.is_array()) field_error("crossings", "expected an array");
  for (size_t i = 0; i < xs.size(); ++i) {
    std::string p = "crossings[" + std::to_string(i) + "]";
    const json& x = xs[i];
    if (!x.is_object()) field_error(p, "expected an object");
    if (strict) check_keys(x, {"id", "sign", "ends"}, p);
    Crossing cx;
    cx.id = need_str(need(x, "id", p), p + ".id");
    cx.sign = need_int(need(x, "sign", p), p + ".sign");
    const json& ends = need(x, "ends", p);
    if (!ends.is_array() || ends.size() != 2) field_error(p + ".ends", "expected two [curve, index] pairs");
    for (int k = 0; k < 2; ++k) {
      std::string q = p + ".ends[" + std::to_string(k) + "]";
      if (!ends[k].is_array() || ends[k].size() != 2) field_error(q, "expected [curve, index]");
      cx.ends[k] = {need_str(ends[k][0], q + "[0]"), need_int(ends[k][1], q + "[1]")};
    }
    d.crossings.push_back(cx);
  }
  d = normalize(d);
  if (j.contains("regions")) {
    const json& r = j["regions"];
    if (!r.is_array()) field_error("regions", "expected an array");
    for (size_t i = 0; i < r.size(); ++i) e.regions.push_back(need_str(r[i], "regions[" + std::to_string(i) + "]"));
  }
  if (j.contains("segment_sides")) {
    const json& s = j["segment_sides"];
    if (!s.is_object()) field_error("segment_sides", "expected an object keyed by curve id");
    for (auto it = s.begin(); it != s.end(); ++it) {
      std::string p = "segment_sides." + it.key();
      if (!it->is_array()) field_error(p, "expected an array");
      auto& out = e.segment_sides[it.key()];
      for (size_t k = 0; k < it->size(); ++k) {
        const json& pr = (*it)[k];
        std::string q = p + "[" + std::to_string(k) + "]";
        if (!pr.is_array() || pr.size() != 2) field_error(q, "expected [left, right]");
        out.push_back({need_str(pr[0], q + "[0]"), need_str(pr[1], q + "[1]")});
      }
    }
  }
  if (j.contains("boundary_region")) e.boundary_region = need_str(j["boundary_region"], "boundary_region");
  return e;
}

}  // namespace

std::string serialize(const TrisectionDiagram& d) { return to_json(normalize(d)).dump(2) + "\n"; }

std::string serialize(const EmbeddedDiagram& e) {
  json j = to_json(normalize(e.base));
  if (!e.regions.empty()) {
    j["regions"] = e.regions;
    json s = json::object();
    for (auto& c : e.base.curves) {
      auto it = e.segment_sides.find(c.id);
      if (it == e.segment_sides.end()) continue;
      json a = json::array();
      for (auto& [l, r] : it->second) a.push_back({l, r});
      s[c.id] = a;
    }
    j["segment_sides"] = s;
  }
  if (e.boundary_region) j["boundary_region"] = *e.boundary_region;
  return j.dump(2) + "\n";
}

EmbeddedDiagram parse_embedded(const std::string& text, bool strict) { return from_json(parse_text(text), strict); }

TrisectionDiagram parse_diagram(const std::string& text, bool strict) { return parse_embedded(text, strict).base; }

EmbeddedDiagram load_diagram(const std::string& name, bool strict) {
  std::ifstream f(name);
  if (f) {
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_embedded(ss.str(), strict);
  }
  if (auto e = embedded_catalog(name)) return *e;
  EmbeddedDiagram e;
  e.base = catalog(name);
  return e;
}

}  // namespace trisect
