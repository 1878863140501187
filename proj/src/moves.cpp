#include "trisect/moves.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "json.hpp"
#include "trisect/errors.hpp"

namespace trisect {

namespace {

// recompute end indices from the visit lists
void reindex(TrisectionDiagram& d) {
  std::map<std::pair<std::string, std::string>, int> where;
  for (auto& c : d.curves)
    for (size_t i = 0; i < c.visits.size(); ++i) where[{c.visits[i], c.id}] = int(i);
  for (auto& x : d.crossings)
    for (auto& e : x.ends) {
      auto it = where.find({x.id, e.curve});
      if (it == where.end()) throw InternalConsistency("crossing '" + x.id + "' lost its end on '" + e.curve + "'");
      e.index = it->second;
    }
}

Curve& curve_ref(TrisectionDiagram& d, const std::string& id) {
  int i = d.curve_index(id);
  if (i < 0) throw MoveNotApplicable("no curve '" + id + "'");
  return d.curves[i];
}

const Crossing& crossing_ref(const TrisectionDiagram& d, const std::string& id) {
  int i = d.crossing_index(id);
  if (i < 0) throw MoveNotApplicable("no crossing '" + id + "'");
  return d.crossings[i];
}

int position(const Curve& c, const std::string& x) {
  auto it = std::find(c.visits.begin(), c.visits.end(), x);
  return it == c.visits.end() ? -1 : int(it - c.visits.begin());
}

bool cyclically_adjacent(int i, int j, int n) {
  if (i < 0 || j < 0 || i == j) return false;
  return (i + 1) % n == j || (j + 1) % n == i;
}

std::set<std::string> ends_of(const Crossing& x) { return {x.ends[0].curve, x.ends[1].curve}; }

Crossing make_crossing(const TrisectionDiagram& d, const std::string& id, const std::string& a, const std::string& b,
                       int sign) {
  Crossing x;
  x.id = id;
  x.sign = sign;
  x.ends = {CrossingEnd{a, 0}, CrossingEnd{b, 0}};
  if (color_first(d.curve(b).color, d.curve(a).color)) std::swap(x.ends[0], x.ends[1]);
  return x;
}

}  // namespace

std::string fresh_crossing_id(const TrisectionDiagram& d, int skip) {
  long mx = -1;
  for (auto& x : d.crossings) {
    if (x.id.size() < 2 || x.id[0] != 'x') continue;
    if (!std::all_of(x.id.begin() + 1, x.id.end(), ::isdigit) || x.id.size() > 12) continue;
    mx = std::max(mx, std::stol(x.id.substr(1)));
  }
  return "x" + std::to_string(mx + 1 + skip);
}

TrisectionDiagram shift_basepoint(const TrisectionDiagram& d, const std::string& curve, int offset) {
  TrisectionDiagram r = d;
  Curve& c = curve_ref(r, curve);
  int n = int(c.visits.size());
  if (n == 0) return r;
  int o = ((offset % n) + n) % n;
  std::rotate(c.visits.begin(), c.visits.begin() + o, c.visits.end());
  reindex(r);
  return r;
}

TrisectionDiagram reverse_orientation(const TrisectionDiagram& d, const std::string& curve) {
  TrisectionDiagram r = d;
  Curve& c = curve_ref(r, curve);
  std::reverse(c.visits.begin(), c.visits.end());
  for (auto& x : r.crossings)
    if (x.ends[0].curve == curve || x.ends[1].curve == curve) x.sign = -x.sign;
  reindex(r);
  return r;
}

TrisectionDiagram two_point_insert(const TrisectionDiagram& d, const std::string& lambda, int pos_lambda,
                                   const std::string& mu, int pos_mu, int sign, std::string p, std::string q) {
  if (lambda == mu) throw MoveNotApplicable("two_point_insert: the two curves must differ");
  TrisectionDiagram r = d;
  Curve& l = curve_ref(r, lambda);
  Curve& m = curve_ref(r, mu);
  if (l.color == m.color) throw MoveNotApplicable("two_point_insert: same-colour curves cannot cross");
  if (sign != 1 && sign != -1) throw MoveNotApplicable("two_point_insert: sign must be +1 or -1");
  if (pos_lambda < 0 || pos_lambda > int(l.visits.size()) || pos_mu < 0 || pos_mu > int(m.visits.size()))
    throw MoveNotApplicable("two_point_insert: position out of range");
  if (p.empty()) p = fresh_crossing_id(d, 0);
  if (q.empty()) q = fresh_crossing_id(d, 1);
  if (p == q || d.crossing_index(p) >= 0 || d.crossing_index(q) >= 0)
    throw MoveNotApplicable("two_point_insert: crossing ids must be new and distinct");
  l.visits.insert(l.visits.begin() + pos_lambda, {p, q});
  m.visits.insert(m.visits.begin() + pos_mu, {p, q});
  r.crossings.push_back(make_crossing(r, p, lambda, mu, sign));
  r.crossings.push_back(make_crossing(r, q, lambda, mu, -sign));
  reindex(r);
  return r;
}

TrisectionDiagram two_point_delete(const TrisectionDiagram& d, const std::string& p, const std::string& q) {
  if (p == q) throw MoveNotApplicable("two_point_delete: p and q must differ");
  const Crossing& xp = crossing_ref(d, p);
  const Crossing& xq = crossing_ref(d, q);
  if (ends_of(xp) != ends_of(xq)) throw MoveNotApplicable("two_point_delete: p and q join different curve pairs");
  if (xp.sign != -xq.sign) throw MoveNotApplicable("two_point_delete: signs are not opposite");
  for (auto& cid : ends_of(xp)) {
    auto& c = d.curve(cid);
    if (!cyclically_adjacent(position(c, p), position(c, q), int(c.visits.size())))
      throw MoveNotApplicable("two_point_delete: p and q are not consecutive on '" + cid + "'");
  }
  TrisectionDiagram r = d;
  for (auto& c : r.curves)
    c.visits.erase(std::remove_if(c.visits.begin(), c.visits.end(), [&](auto& v) { return v == p || v == q; }),
                   c.visits.end());
  r.crossings.erase(std::remove_if(r.crossings.begin(), r.crossings.end(),
                                   [&](auto& x) { return x.id == p || x.id == q; }),
                    r.crossings.end());
  reindex(r);
  return r;
}

TrisectionDiagram three_point_flip(const TrisectionDiagram& d, const std::string& p, const std::string& q,
                                   const std::string& r) {
  std::vector<std::string> ids = {p, q, r};
  if (p == q || q == r || p == r) throw MoveNotApplicable("three_point_flip: crossings must be distinct");
  std::map<std::string, std::vector<std::string>> on;  // curve -> its triangle crossings
  std::set<std::set<std::string>> pairs;
  for (auto& id : ids) {
    const Crossing& x = crossing_ref(d, id);
    pairs.insert(ends_of(x));
    for (auto& c : ends_of(x)) on[c].push_back(id);
  }
  if (pairs.size() != 3 || on.size() != 3)
    throw MoveNotApplicable("three_point_flip: p, q, r must pairwise join three curves");
  std::set<Color> colors;
  for (auto& [c, xs] : on) colors.insert(d.curve(c).color);
  if (colors.size() != 3) throw MoveNotApplicable("three_point_flip: the three curves must have distinct colours");
  TrisectionDiagram out = d;
  for (auto& [cid, xs] : on) {
    Curve& c = curve_ref(out, cid);
    int i = position(c, xs[0]), j = position(c, xs[1]);
    if (!cyclically_adjacent(i, j, int(c.visits.size())))
      throw MoveNotApplicable("three_point_flip: triangle crossings not consecutive on '" + cid + "'");
    std::swap(c.visits[i], c.visits[j]);
  }
  reindex(out);
  return out;
}

TrisectionDiagram handle_slide(const TrisectionDiagram& d, const std::string& lambda, const std::string& mu, int pos,
                               int start, int dir) {
  if (lambda == mu) throw MoveNotApplicable("handle_slide: cannot slide a curve over itself");
  const Curve& l = d.curve(lambda);
  const Curve& m = d.curve(mu);
  if (l.color != m.color) throw MoveNotApplicable("handle_slide: curves must have the same colour");
  if (dir != 1 && dir != -1) throw MoveNotApplicable("handle_slide: dir must be +1 or -1");
  if (pos < 0 || pos > int(l.visits.size())) throw MoveNotApplicable("handle_slide: position out of range");
  int n = int(m.visits.size());
  if (n == 0) return d;
  if (start < 0 || start >= n) throw MoveNotApplicable("handle_slide: start out of range");

  TrisectionDiagram r = d;
  std::vector<std::string> added;
  std::map<std::string, std::map<int, std::string>> after;  // nu -> (t -> new crossing)
  for (int k = 0; k < n; ++k) {
    int idx = ((start + dir * k) % n + n) % n;
    const Crossing& x = d.crossing(m.visits[idx]);
    int slot = x.ends[0].curve == mu ? 0 : 1;
    const CrossingEnd& other = x.ends[1 - slot];
    Crossing y = x;
    y.id = fresh_crossing_id(d, k);
    y.sign = x.sign * dir;
    y.ends[slot].curve = lambda;
    r.crossings.push_back(y);
    added.push_back(y.id);
    after[other.curve][other.index] = y.id;
  }
  for (auto& [nu, ins] : after) {
    Curve& c = curve_ref(r, nu);
    for (auto it = ins.rbegin(); it != ins.rend(); ++it) c.visits.insert(c.visits.begin() + it->first + 1, it->second);
  }
  Curve& lr = curve_ref(r, lambda);
  lr.visits.insert(lr.visits.begin() + pos, added.begin(), added.end());
  reindex(r);
  return r;
}

TrisectionDiagram stabilize(const TrisectionDiagram& d) { return connected_sum(d, standard_s4()); }

TrisectionDiagram destabilize(const TrisectionDiagram& d) {
  int nc = int(d.curves.size());
  std::vector<int> parent(nc);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (auto& x : d.crossings) {
    int a = d.curve_index(x.ends[0].curve), b = d.curve_index(x.ends[1].curve);
    if (a >= 0 && b >= 0) parent[find(a)] = find(b);
  }
  std::map<int, std::vector<int>> comps;
  for (int i = 0; i < nc; ++i) comps[find(i)].push_back(i);
  // components ordered by their last curve, searched from the end
  std::vector<std::vector<int>> order;
  for (auto& [root, cs] : comps) order.push_back(cs);
  std::sort(order.begin(), order.end(), [](auto& a, auto& b) { return a.back() > b.back(); });

  std::map<Color, std::vector<int>> found;
  for (auto& cs : order) {
    if (cs.size() != 3) continue;
    std::set<Color> colors;
    int meridian = -1, singles = 0;
    for (int i : cs) {
      colors.insert(d.curves[i].color);
      size_t v = d.curves[i].visits.size();
      if (v == 2)
        meridian = i;
      else if (v == 1)
        ++singles;
    }
    if (colors.size() != 3 || meridian < 0 || singles != 2) continue;
    Color mc = d.curves[meridian].color;
    if (!found.count(mc)) found[mc] = cs;
  }
  if (found.size() != 3) throw NoStandardSummand("no split standard S4 summand found");
  std::set<std::string> drop_curves, drop_crossings;
  for (auto& [c, cs] : found)
    for (int i : cs) {
      drop_curves.insert(d.curves[i].id);
      for (auto& v : d.curves[i].visits) drop_crossings.insert(v);
    }
  TrisectionDiagram r = d;
  r.curves.erase(std::remove_if(r.curves.begin(), r.curves.end(), [&](auto& c) { return drop_curves.count(c.id); }),
                 r.curves.end());
  r.crossings.erase(std::remove_if(r.crossings.begin(), r.crossings.end(),
                                   [&](auto& x) { return drop_crossings.count(x.id); }),
                    r.crossings.end());
  r.genus -= 3;
  if (r.declared_k) {
    if (*r.declared_k >= 1)
      *r.declared_k -= 1;
    else
      r.declared_k.reset();
  }
  return r;
}

// ------------------------------------------------------------ MoveSpec

namespace {

using json = nlohmann::ordered_json;
using V = MoveSpec::Variant;

const std::pair<V, const char*> kNames[] = {
    {V::ShiftBasepoint, "shift_basepoint"}, {V::ReverseOrientation, "reverse_orientation"},
    {V::TwoPointInsert, "two_point_insert"}, {V::TwoPointDelete, "two_point_delete"},
    {V::ThreePointFlip, "three_point_flip"}, {V::HandleSlide, "handle_slide"},
    {V::Stabilize, "stabilize"},             {V::Destabilize, "destabilize"},
};

std::string squash(std::string s) {
  std::string o;
  for (char c : s)
    if (c != '_' && c != '-') o += char(std::tolower(static_cast<unsigned char>(c)));
  return o;
}

V parse_variant(const std::string& s) {
  for (auto& [v, n] : kNames)
    if (squash(n) == squash(s)) return v;
  throw ParseError("unknown move '" + s + "'");
}

MoveSpec from_json_value(const json& j) {
  if (!j.is_object() || !j.contains("move") || !j["move"].is_string())
    throw ParseError("move must be an object with a \"move\" string");
  MoveSpec m;
  m.variant = parse_variant(j["move"].get<std::string>());
  auto str = [&](const char* k, std::string& out, bool required) {
    if (!j.contains(k)) {
      if (required) throw ParseError(std::string("move ") + variant_name(m.variant) + ": missing '" + k + "'");
      return;
    }
    if (!j[k].is_string()) throw ParseError(std::string("move field '") + k + "' must be a string");
    out = j[k].get<std::string>();
  };
  auto num = [&](const char* k, int& out, bool required) {
    if (!j.contains(k)) {
      if (required) throw ParseError(std::string("move ") + variant_name(m.variant) + ": missing '" + k + "'");
      return;
    }
    if (!j[k].is_number_integer()) throw ParseError(std::string("move field '") + k + "' must be an integer");
    out = j[k].get<int>();
  };
  switch (m.variant) {
    case V::ShiftBasepoint:
      str("curve", m.curve, true);
      num("offset", m.offset, true);
      break;
    case V::ReverseOrientation:
      str("curve", m.curve, true);
      break;
    case V::TwoPointInsert:
      str("curve", m.curve, true);
      num("pos", m.pos, true);
      str("curve2", m.curve2, true);
      num("pos2", m.pos2, true);
      num("sign", m.sign, false);
      str("p", m.p, false);
      str("q", m.q, false);
      break;
    case V::TwoPointDelete:
      str("p", m.p, true);
      str("q", m.q, true);
      break;
    case V::ThreePointFlip:
      str("p", m.p, true);
      str("q", m.q, true);
      str("r", m.r, true);
      break;
    case V::HandleSlide:
      str("curve", m.curve, true);
      str("over", m.curve2, true);
      num("pos", m.pos, false);
      num("start", m.start, false);
      num("dir", m.dir, false);
      break;
    case V::Stabilize:
    case V::Destabilize:
      break;
  }
  return m;
}

}  // namespace

const char* variant_name(MoveSpec::Variant v) {
  for (auto& [x, n] : kNames)
    if (x == v) return n;
  return "?";
}

TrisectionDiagram apply_move(const TrisectionDiagram& d, const MoveSpec& m) {
  switch (m.variant) {
    case V::ShiftBasepoint:
      return shift_basepoint(d, m.curve, m.offset);
    case V::ReverseOrientation:
      return reverse_orientation(d, m.curve);
    case V::TwoPointInsert:
      return two_point_insert(d, m.curve, m.pos, m.curve2, m.pos2, m.sign, m.p, m.q);
    case V::TwoPointDelete:
      return two_point_delete(d, m.p, m.q);
    case V::ThreePointFlip:
      return three_point_flip(d, m.p, m.q, m.r);
    case V::HandleSlide:
      return handle_slide(d, m.curve, m.curve2, m.pos, m.start, m.dir);
    case V::Stabilize:
      return stabilize(d);
    case V::Destabilize:
      return destabilize(d);
  }
  throw InternalConsistency("unknown move variant");
}

std::string move_to_json(const MoveSpec& m) {
  json j;
  j["move"] = variant_name(m.variant);
  switch (m.variant) {
    case V::ShiftBasepoint:
      j["curve"] = m.curve;
      j["offset"] = m.offset;
      break;
    case V::ReverseOrientation:
      j["curve"] = m.curve;
      break;
    case V::TwoPointInsert:
      j["curve"] = m.curve;
      j["pos"] = m.pos;
      j["curve2"] = m.curve2;
      j["pos2"] = m.pos2;
      j["sign"] = m.sign;
      if (!m.p.empty()) j["p"] = m.p;
      if (!m.q.empty()) j["q"] = m.q;
      break;
    case V::TwoPointDelete:
      j["p"] = m.p;
      j["q"] = m.q;
      break;
    case V::ThreePointFlip:
      j["p"] = m.p;
      j["q"] = m.q;
      j["r"] = m.r;
      break;
    case V::HandleSlide:
      j["curve"] = m.curve;
      j["over"] = m.curve2;
      j["pos"] = m.pos;
      j["start"] = m.start;
      j["dir"] = m.dir;
      break;
    case V::Stabilize:
    case V::Destabilize:
      break;
  }
  return j.dump();
}

MoveSpec move_from_json(const std::string& text) {
  try {
    return from_json_value(json::parse(text));
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("move: ") + e.what());
  }
}

std::vector<MoveSpec> moves_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("move list: ") + e.what());
  }
  std::vector<MoveSpec> out;
  if (j.is_object()) {
    out.push_back(from_json_value(j));
    return out;
  }
  if (!j.is_array()) throw ParseError("move list must be a JSON array");
  for (auto& x : j) out.push_back(from_json_value(x));
  return out;
}

// ------------------------------------------------------------ random moves

namespace {

std::vector<std::pair<std::string, std::string>> deletable_pairs(const TrisectionDiagram& d) {
  std::vector<std::pair<std::string, std::string>> out;
  for (size_t i = 0; i < d.crossings.size(); ++i)
    for (size_t j = i + 1; j < d.crossings.size(); ++j) {
      auto& a = d.crossings[i];
      auto& b = d.crossings[j];
      if (a.sign != -b.sign || ends_of(a) != ends_of(b)) continue;
      bool ok = true;
      for (auto& e : a.ends) {
        auto& c = d.curve(e.curve);
        ok = ok && cyclically_adjacent(position(c, a.id), position(c, b.id), int(c.visits.size()));
      }
      if (ok) out.push_back({a.id, b.id});
    }
  return out;
}

std::vector<std::array<std::string, 3>> flippable_triangles(const TrisectionDiagram& d) {
  std::vector<std::array<std::string, 3>> out;
  size_t n = d.crossings.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      for (size_t k = j + 1; k < n; ++k) {
        try {
          three_point_flip(d, d.crossings[i].id, d.crossings[j].id, d.crossings[k].id);
          out.push_back({d.crossings[i].id, d.crossings[j].id, d.crossings[k].id});
        } catch (const MoveNotApplicable&) {
        }
      }
  return out;
}

template <class T>
const T& pick(const std::vector<T>& v, std::mt19937_64& rng) {
  return v[std::uniform_int_distribution<size_t>(0, v.size() - 1)(rng)];
}

int uniform(int lo, int hi, std::mt19937_64& rng) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace

MoveSpec random_move(const TrisectionDiagram& d, std::mt19937_64& rng, bool allow_stabilize) {
  std::vector<V> kinds;
  if (!d.curves.empty()) kinds.insert(kinds.end(), {V::ShiftBasepoint, V::ReverseOrientation});
  std::vector<std::pair<int, int>> cross_pairs, same_pairs;
  for (size_t i = 0; i < d.curves.size(); ++i)
    for (size_t j = 0; j < d.curves.size(); ++j) {
      if (i == j) continue;
      if (d.curves[i].color != d.curves[j].color)
        cross_pairs.push_back({int(i), int(j)});
      else
        same_pairs.push_back({int(i), int(j)});
    }
  if (!cross_pairs.empty()) kinds.push_back(V::TwoPointInsert);
  auto dels = deletable_pairs(d);
  if (!dels.empty()) kinds.push_back(V::TwoPointDelete);
  auto tris = flippable_triangles(d);
  if (!tris.empty()) kinds.push_back(V::ThreePointFlip);
  if (!same_pairs.empty()) kinds.push_back(V::HandleSlide);
  if (allow_stabilize && d.kind == Kind::Closed) kinds.push_back(V::Stabilize);
  if (allow_stabilize) {
    try {
      destabilize(d);
      kinds.push_back(V::Destabilize);
    } catch (const NoStandardSummand&) {
    }
  }
  if (kinds.empty()) throw MoveNotApplicable("no move applies to this diagram");

  MoveSpec m;
  m.variant = pick(kinds, rng);
  switch (m.variant) {
    case V::ShiftBasepoint: {
      auto& c = d.curves[uniform(0, int(d.curves.size()) - 1, rng)];
      m.curve = c.id;
      m.offset = uniform(1, std::max<int>(1, int(c.visits.size())), rng);
      break;
    }
    case V::ReverseOrientation:
      m.curve = d.curves[uniform(0, int(d.curves.size()) - 1, rng)].id;
      break;
    case V::TwoPointInsert: {
      auto [a, b] = pick(cross_pairs, rng);
      m.curve = d.curves[a].id;
      m.curve2 = d.curves[b].id;
      m.pos = uniform(0, int(d.curves[a].visits.size()), rng);
      m.pos2 = uniform(0, int(d.curves[b].visits.size()), rng);
      m.sign = uniform(0, 1, rng) ? 1 : -1;
      break;
    }
    case V::TwoPointDelete: {
      auto [p, q] = pick(dels, rng);
      m.p = p;
      m.q = q;
      break;
    }
    case V::ThreePointFlip: {
      auto& t = pick(tris, rng);
      m.p = t[0];
      m.q = t[1];
      m.r = t[2];
      break;
    }
    case V::HandleSlide: {
      auto [a, b] = pick(same_pairs, rng);
      m.curve = d.curves[a].id;
      m.curve2 = d.curves[b].id;
      m.pos = uniform(0, int(d.curves[a].visits.size()), rng);
      m.start = uniform(0, std::max<int>(1, int(d.curves[b].visits.size())) - 1, rng);
      m.dir = uniform(0, 1, rng) ? 1 : -1;
      break;
    }
    case V::Stabilize:
    case V::Destabilize:
      break;
  }
  return m;
}

}  // namespace trisect
