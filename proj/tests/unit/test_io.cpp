#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "trisect/errors.hpp"
#include "trisect/io.hpp"

using namespace trisect;

TEST_CASE("scalar json") {
  CHECK(scalar_from_json(ojson(3)) == Scalar(3));
  CHECK(scalar_from_json(ojson("-2/6")) == Scalar::rational(-1, 3));
  auto z = scalar_from_json(ojson::parse(R"({"level": 3, "coeffs": ["0", "1"]})"));
  CHECK(z == Scalar(Cyclo::zeta(3)));
  CHECK_FALSE(scalar_from_json(ojson::parse("[0.5, 1]")).exact());
  CHECK_THROWS_AS(scalar_from_json(ojson("x/2")), ParseError);
  CHECK_THROWS_AS(scalar_from_json(ojson::parse(R"({"level": 5, "coeffs": [1]})")), ParseError);
  auto j = scalar_to_json(z);
  CHECK(scalar_from_json(j["cyclo"]) == z);
}

TEST_CASE("hopf json round trip") {
  for (auto h : {group_algebra(symmetric(3)), function_algebra(cyclic(4)), kashaev_triplet(3).C}) {
    auto back = hopf_from_json(ojson::parse(hopf_to_json(h).dump()));
    CHECK(same_structure(h, back));
  }
  auto bad = hopf_to_json(group_algebra(cyclic(2)));
  bad["mult"][0].erase(1);
  CHECK_THROWS_WITH_AS(hopf_from_json(bad), doctest::Contains("mult[0]"), ParseError);
  bad = hopf_to_json(group_algebra(cyclic(2)));
  bad["extra"] = 1;
  CHECK_THROWS_AS(hopf_from_json(bad), ParseError);
}

namespace {

ojson matrix_json(const Pairing& p) {
  ojson m = ojson::array();
  for (int i = 0; i < p.rows; ++i) {
    ojson row = ojson::array();
    for (int j = 0; j < p.cols; ++j) row.push_back(scalar_to_json(p(i, j))["cyclo"]);
    m.push_back(row);
  }
  return m;
}

ojson triplet_json(const HopfTriplet& t) {
  ojson j;
  j["name"] = t.name;
  j["A"] = hopf_to_json(t.A);
  j["B"] = hopf_to_json(t.B);
  j["C"] = hopf_to_json(t.C);
  j["AB"] = matrix_json(t.AB);
  j["BC"] = matrix_json(t.BC);
  j["CA"] = matrix_json(t.CA);
  return j;
}

}  // namespace

TEST_CASE("triplet files") {
  auto t = kashaev_triplet(2);
  auto back = triplet_from_json(triplet_json(t));
  auto a = trisection_bracket(cp2(), default_config(t));
  CHECK(trisection_bracket(cp2(), default_config(back)) == a);
  auto j = triplet_json(t);
  j["AB"][0][1] = "1/2";
  CHECK_THROWS_AS(triplet_from_json(j), InvalidInput);

  std::string path = "/tmp/trisect_io_test_triplet.json";
  std::ofstream(path) << triplet_json(t).dump();
  auto f = parse_triplet("file:" + path);
  CHECK(trisection_bracket(cp2(), default_config(f)) == a);
  std::remove(path.c_str());
}

TEST_CASE("triplet specs") {
  CHECK(parse_triplet("kashaev:n=3").A.dim == 3);
  CHECK(parse_triplet("kashaev:4").A.dim == 4);
  auto g = parse_triplet("group:C=Z/2,B=Z/3");
  CHECK(g.A.dim == 6);
  auto w = parse_triplet("weak:C=Z/2,B=Z/2,M=cosets:0,3");
  CHECK(w.allow_weak);
  CHECK_THROWS_AS(parse_triplet("kashaev:n=0"), InvalidInput);
  CHECK_THROWS_AS(parse_triplet("kashaev:n=x"), InvalidInput);
  CHECK_THROWS_AS(parse_triplet("group:C=Z/2"), InvalidInput);
  CHECK_THROWS_AS(parse_triplet("nope:1"), InvalidInput);
  CHECK_THROWS_AS(parse_triplet("file:/nonexistent.json"), ParseError);
}

TEST_CASE("float backend") {
  auto cfg = default_config(kashaev_triplet(3));
  auto exact = trisection_bracket(cp2(), cfg);
  auto approx = trisection_bracket(cp2(), to_float(cfg));
  CHECK_FALSE(approx.exact());
  CHECK(abs_diff(exact, approx) < 1e-12);
  auto h = to_float(group_algebra(symmetric(3)));
  CHECK(check_hopf_axioms(h).ok(1e-12));
  CHECK(h_counit(h, compute_integral(h)) == Scalar(6));
}
