#include "doctest.h"
#include "trisect/bracket.hpp"
#include "trisect/errors.hpp"
#include "trisect/moves.hpp"

using namespace trisect;

namespace {

// Gauss sum sum_x zeta_n^(x^2)
Scalar gauss_sum(int n) {
  Scalar s;
  for (int x = 0; x < n; ++x) s += Scalar(Cyclo::zeta(n, long(x) * x));
  return s;
}

}  // namespace

TEST_CASE("kashaev brackets match closed forms") {
  for (int n = 2; n <= 5; ++n) {
    auto cfg = default_config(kashaev_triplet(n));
    CHECK(trisection_bracket(cp2(), cfg) == gauss_sum(n) * Scalar::rational(1, long(n) * n));
    CHECK(trisection_bracket(standard_s4(), cfg) == Scalar::rational(1, long(n) * n * n));
  }
}

TEST_CASE("group triplet counting value on s4") {
  auto cfg = counting_config(group_triplet(cyclic(2), cyclic(3)));
  CHECK(trisection_bracket(standard_s4(), cfg) == Scalar(1296));
  auto norm = default_config(group_triplet(cyclic(2), cyclic(3)));
  CHECK(trisection_bracket(standard_s4(), norm) == Scalar::rational(1, 36));
}

TEST_CASE("crossing-free diagram gives product of counits") {
  auto cfg = counting_config(kashaev_triplet(3));
  CHECK(trisection_bracket(crossing_free(1), cfg) == Scalar(27));
}

TEST_CASE("backends agree") {
  for (auto t : {kashaev_triplet(2), kashaev_triplet(3), group_triplet(cyclic(2), cyclic(3))}) {
    auto e = default_config(t);
    auto r = default_config(t, Evaluator::RepBased);
    for (auto d : {standard_s4(), cp2(), stabilize(cp2())}) {
      auto rep = cross_check(d, e, r);
      CHECK_MESSAGE(rep.ok, rep.detail);
    }
    auto p = r;
    p.rep_mode = RepMode::PerLabelling;
    CHECK(trisection_bracket(cp2(), p) == trisection_bracket(cp2(), e));
  }
}

TEST_CASE("contraction order does not matter") {
  auto cfg = default_config(group_triplet(symmetric(3), cyclic(2)));
  auto d = two_point_insert(stabilize(cp2()), "red", 1, "b1", 0, 1);
  Scalar v = trisection_bracket(d, cfg);
  for (uint64_t s = 1; s <= 4; ++s) {
    cfg.order_seed = s;
    CHECK(trisection_bracket(d, cfg) == v);
  }
}

TEST_CASE("invariant normalization") {
  auto cfg = default_config(kashaev_triplet(3));
  auto s = invariant(standard_s4(), cfg);
  CHECK(same_value(s.value, RootScalar(Scalar(1))));
  auto a = invariant(cp2(), cfg);
  auto b = invariant(stabilize(cp2()), cfg);
  CHECK(same_value(a.value, b.value));
  CHECK(std::abs(a.value.to_complex() - std::complex<double>(0, std::sqrt(3.0) / 3)) < 1e-12);
}
