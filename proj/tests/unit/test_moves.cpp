#include "doctest.h"
#include "trisect/errors.hpp"
#include "trisect/moves.hpp"

using namespace trisect;

TEST_CASE("basepoint and orientation") {
  auto d = standard_s4();
  CHECK(shift_basepoint(d, "c1", 0) == d);
  CHECK(shift_basepoint(d, "c1", 2) == d);
  auto s = shift_basepoint(d, "c1", 1);
  CHECK(validate(s).ok());
  CHECK(s.curve("c1").visits == std::vector<std::string>{"p2", "p1"});
  auto r = reverse_orientation(d, "c1");
  CHECK(validate(r).ok());
  CHECK(r.crossing("p1").sign == 1);
  CHECK(reverse_orientation(r, "c1") == d);
}

TEST_CASE("two-point moves") {
  auto d = cp2();
  auto i = two_point_insert(d, "red", 1, "blue", 0, 1);
  CHECK(validate(i).ok());
  CHECK(i.crossings.size() == 5);
  auto back = two_point_delete(i, "x0", "x1");
  CHECK(back == d);
  CHECK_THROWS_AS(two_point_insert(d, "red", 0, "red", 0, 1), MoveNotApplicable);
  CHECK_THROWS_AS(two_point_delete(d, "rb", "bg"), MoveNotApplicable);
}

TEST_CASE("three-point flip") {
  auto d = two_point_insert(standard_s4(), "F1", 1, "b1", 1, 1);
  auto f = three_point_flip(d, "p1", "p2", "x0");
  CHECK(validate(f).ok());
  CHECK(three_point_flip(f, "p1", "p2", "x0") == d);
  CHECK_THROWS_AS(three_point_flip(d, "p1", "p2", "q1"), MoveNotApplicable);
}

TEST_CASE("handle slides") {
  auto d = standard_s4();
  auto s = handle_slide(d, "F1", "F3", 0, 0, 1);
  CHECK(validate(s).ok());
  CHECK(s.crossings.size() == 8);
  auto f = crossing_free(2);
  CHECK(handle_slide(f, "r1", "r2", 0, 0, 1) == f);
  CHECK_THROWS_AS(handle_slide(d, "F1", "b1", 0, 0, 1), MoveNotApplicable);
}

TEST_CASE("stabilization") {
  auto d = cp2();
  auto s = stabilize(d);
  CHECK(s.genus == 4);
  CHECK(validate(s).ok());
  CHECK(destabilize(s) == d);
  CHECK_THROWS_AS(destabilize(d), NoStandardSummand);
  CHECK(destabilize(standard_s4()).genus == 0);
}

TEST_CASE("move json") {
  MoveSpec m;
  m.variant = MoveSpec::Variant::HandleSlide;
  m.curve = "F1";
  m.curve2 = "F2";
  m.dir = -1;
  auto back = move_from_json(move_to_json(m));
  CHECK(move_to_json(back) == move_to_json(m));
  CHECK(moves_from_json("[{\"move\":\"Stabilize\"},{\"move\":\"destabilize\"}]").size() == 2);
  CHECK_THROWS_AS(move_from_json("{\"move\":\"teleport\"}"), ParseError);
}

TEST_CASE("random moves keep diagrams valid") {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    auto d = cp2();
    for (int k = 0; k < 6; ++k) {
      auto m = random_move(d, rng);
      d = apply_move(d, m);
      auto r = validate(d);
      CHECK_MESSAGE(r.ok(), move_to_json(m));
    }
  }
}
