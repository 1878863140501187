#include <set>

#include "doctest.h"
#include "trisect/diagram.hpp"
#include "trisect/errors.hpp"

using namespace trisect;

TEST_CASE("catalog entries validate") {
  for (auto* n : {"s4", "cp2", "cp2bar", "free1", "free3", "cp2#s4", "s4#s4"}) {
    auto r = validate(catalog(n));
    CHECK_MESSAGE(r.ok(), n);
  }
  for (auto* n : {"s4", "s4'", "cp2", "cp2bar", "free1", "cp2#s4", "cp2#cp2bar"}) {
    auto e = embedded_catalog(n);
    REQUIRE(e);
    auto r = validate(*e);
    std::string msg = n;
    for (auto& v : r.violations) msg += "\n" + v;
    CHECK_MESSAGE(r.ok(), msg);
  }
}

TEST_CASE("catalog shapes") {
  auto s = standard_s4();
  CHECK(s.crossings.size() == 6);
  CHECK(s.genus == 3);
  CHECK(euler_characteristic(s.genus, *s.declared_k) == 2);
  auto c = cp2();
  CHECK(c.crossings.size() == 3);
  CHECK(euler_characteristic(c.genus, *c.declared_k) == 3);
  CHECK(euler_characteristic(0, 0) == 2);
  CHECK_THROWS_AS(euler_characteristic(1, 2), InvalidInput);
  size_t visits = 0;
  for (auto& cv : s.curves) visits += cv.visits.size();
  CHECK(visits == 2 * s.crossings.size());
}

TEST_CASE("validation finds broken diagrams") {
  auto d = cp2();
  d.curves[1].color = Color::Red;
  auto r = validate(d);
  bool same = false;
  for (auto& v : r.violations) same = same || v.find("same-colour") != std::string::npos;
  CHECK(same);
  auto e = cp2();
  e.crossings[0].ends[1].curve = "nowhere";
  bool dangling = false;
  for (auto& v : validate(e).violations) dangling = dangling || v.find("dangling") != std::string::npos;
  CHECK(dangling);
}

TEST_CASE("corner check rejects a wrong region") {
  auto e = embedded_cp2();
  e.segment_sides["red"][0].first = "R1";
  CHECK_FALSE(check_corners(e).empty());
}

TEST_CASE("exhaustive region search on cp2") {
  // assign each of the 12 segment sides one of 3 regions; count consistent
  // assignments that use all three regions
  auto base = embedded_cp2();
  const char* R[3] = {"R1", "R2", "R3"};
  int found = 0;
  for (int code = 0; code < 531441; ++code) {
    int c = code;
    auto e = base;
    std::set<int> used;
    for (auto* cv : {"red", "blue", "green"})
      for (auto& s : e.segment_sides[cv]) {
        int l = c % 3;
        c /= 3;
        int r = c % 3;
        c /= 3;
        s = {R[l], R[r]};
        used.insert(l);
        used.insert(r);
      }
    if (used.size() == 3 && check_corners(e).empty()) ++found;
  }
  CHECK(found > 0);
}

TEST_CASE("connected sum and discs") {
  auto d = connected_sum(cp2(), cp2());
  CHECK(d.genus == 2);
  CHECK(d.crossings.size() == 6);
  CHECK(validate(d).ok());
  CHECK_THROWS_AS(connected_sum(remove_disc(cp2()), cp2()), InvalidInput);
  CHECK_THROWS_AS(remove_disc(remove_disc(cp2())), InvalidInput);
  CHECK(remove_disc(standard_s4()).genus == 3);
}

TEST_CASE("json round trip") {
  for (auto* n : {"s4", "s4'", "cp2", "cp2#s4"}) {
    auto e = *embedded_catalog(n);
    auto text = serialize(e);
    auto back = parse_embedded(text);
    CHECK(serialize(back) == text);
    CHECK(back.base == normalize(e.base));
  }
  CHECK_THROWS_AS(parse_diagram("{\"genus\": 1, \"curves\": ["), ParseError);
  CHECK_THROWS_AS(parse_diagram("{\"genus\": 1, \"curves\": [], \"crossings\": [], \"extra\": 1}"), ParseError);
  CHECK_NOTHROW(parse_diagram("{\"genus\": 1, \"curves\": [], \"crossings\": [], \"extra\": 1}", false));
  try {
    parse_diagram("{\"genus\": 1, \"curves\": [{\"id\": \"a\", \"color\": \"red\"}], \"crossings\": []}");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("curves[0].visits") != std::string::npos);
  }
}
