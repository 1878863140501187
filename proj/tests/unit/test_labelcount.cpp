#include <cstdlib>

#include "doctest.h"
#include "trisect/errors.hpp"
#include "trisect/labelcount.hpp"
#include "trisect/moves.hpp"

using namespace trisect;

TEST_CASE("curve labelling counts") {
  CHECK(count_curve_labellings(cp2(), cyclic(2), cyclic(2)) == 1);
  CHECK(count_curve_labellings(standard_s4(), cyclic(2), cyclic(3)) == 6);
  CHECK(count_curve_labellings(crossing_free(2), cyclic(2), cyclic(3)) == 36);
}

TEST_CASE("red product") {
  auto d = cp2();
  auto C = cyclic(3), B = cyclic(3);
  auto K = k_group(C, B);
  CHECK(red_product(d, "red", {{"blue", 0}, {"green", 0}}, C, B) == K.e);
  // rb (+1) gives (1, b), gr (+1) gives (c^-1, 1)
  CHECK(red_product(d, "red", {{"blue", 1}, {"green", 1}}, C, B) == 2 * 3 + 1);
  CHECK_THROWS_AS(red_product(d, "red", {{"blue", 1}}, C, B), InvalidInput);
}

TEST_CASE("admissible counts") {
  auto cfg = make_weak_config(cyclic(2), cyclic(3));
  CHECK(count_admissible(embedded_cp2(), cfg) == 1);
  CHECK(count_admissible(embedded_s4(), cfg) == 6);
  auto sp = *embedded_catalog("s4'");
  for (int m = 0; m < cfg.M.size(); ++m) CHECK(count_admissible(sp, cfg, m) == 6);
}

TEST_CASE("factorization with nontrivial M") {
  auto C = cyclic(2), B = cyclic(2);
  auto K = k_group(C, B);
  for (auto spec : {"point", "cosets:0,3", "cosets:0,1", "cosets:0"}) {
    auto cfg = make_weak_config(C, B, spec);
    for (auto* n : {"s4", "cp2", "cp2bar"}) {
      auto e = *embedded_catalog(n);
      CHECK_MESSAGE(count_admissible(e, cfg) == cfg.M.size() * count_curve_labellings(e.base, C, B),
                    n << " " << spec);
    }
  }
}

TEST_CASE("brute force equals averaged evaluation") {
  auto C = cyclic(2), B = cyclic(2);
  for (auto spec : {"point", "cosets:0,3"}) {
    auto cfg = make_weak_config(C, B, spec);
    auto e = embedded_cp2();
    CHECK(brute_force_sum(e, cfg) == averaged_evaluation(e, cfg));
  }
}

TEST_CASE("group count invariant") {
  auto cfg = make_weak_config(cyclic(2), cyclic(3));
  CHECK(same_value(group_count_invariant(standard_s4(), cfg), RootScalar(Scalar(1))));
  auto c = make_weak_config(cyclic(2), cyclic(2));
  auto v = group_count_invariant(cp2(), c);
  CHECK(std::abs(v.to_complex() - std::pow(4.0, -1.0 / 3)) < 1e-12);
  for (auto d : {standard_s4(), cp2(), stabilize(cp2())}) {
    auto r = coincidence_check(d, cfg);
    CHECK_MESSAGE(r.ok, r.detail);
  }
}

TEST_CASE("threaded counting agrees") {
  auto d = connected_sum(standard_s4(), cp2());
  auto C = symmetric(3), B = cyclic(3);
  setenv("TRISECT_THREADS", "1", 1);
  auto one = count_curve_labellings(d, C, B);
  setenv("TRISECT_THREADS", "4", 1);
  CHECK(count_curve_labellings(d, C, B) == one);
  auto cfg = make_weak_config(cyclic(2), cyclic(3));
  CHECK(count_admissible(*embedded_catalog("s4#cp2"), cfg) == cfg.M.size() * count_curve_labellings(standard_s4(), cyclic(2), cyclic(3)) * count_curve_labellings(cp2(), cyclic(2), cyclic(3)));
  unsetenv("TRISECT_THREADS");
}
