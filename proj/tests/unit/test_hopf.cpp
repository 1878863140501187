#include "doctest.h"
#include "trisect/hopf.hpp"

using namespace trisect;

TEST_CASE("group and function algebras satisfy the axioms") {
  for (auto g : {cyclic(2), cyclic(3), cyclic(6), symmetric(3)}) {
    CHECK(check_hopf_axioms(group_algebra(g)).ok());
    CHECK(check_hopf_axioms(function_algebra(g)).ok());
  }
}

TEST_CASE("dual of a group algebra is the function algebra") {
  auto g = symmetric(3);
  CHECK(same_structure(dual(group_algebra(g)), function_algebra(g)));
  auto h = function_algebra(g);
  CHECK(same_structure(op(op(h)), h));
  CHECK(same_structure(dual(dual(h)), h));
}

TEST_CASE("integrals") {
  auto h = group_algebra(cyclic(4));
  auto l = compute_integral(h);
  CHECK(l.size() == 4);
  CHECK(h_counit(h, l) == Scalar(4));
  CHECK(check_integral(h, l).ok());
  auto f = function_algebra(cyclic(5));
  auto lf = compute_integral(f);
  REQUIRE(lf.size() == 1);
  CHECK(lf[0].first == 0);
  CHECK(lf[0].second == Scalar(5));
  auto lam = canonical_dual_integral(h, *h.dual_irreps);
  auto ln = normalized_integral(h);
  Scalar s;
  for (auto& [i, c] : ln) s += c * lam[i];
  CHECK(s == Scalar(1));
}

TEST_CASE("kashaev triplet") {
  for (int n = 2; n <= 6; ++n) {
    auto t = kashaev_triplet(n);
    CHECK(check_skew_pairing(t.A, t.B, t.AB).ok());
    CHECK(check_skew_pairing(t.B, t.C, t.BC).ok());
    CHECK(check_skew_pairing(t.C, t.A, t.CA).ok());
    CHECK(check_triplet(t).ok());
  }
  auto t = kashaev_triplet(4);
  CHECK(t.CA(1, 1) == Scalar(Cyclo::zeta(4, 1)) * Scalar::rational(1, 4));
}

TEST_CASE("group triplet, nonabelian") {
  auto t = group_triplet(symmetric(3), symmetric(3));
  CHECK(check_skew_pairing(t.A, t.B, t.AB).ok());
  CHECK(check_skew_pairing(t.C, t.A, t.CA).ok());
  CHECK(check_triplet(t).ok());
}

TEST_CASE("doubles") {
  auto t = kashaev_triplet(3);
  auto d = generalized_double(t.C, t.A, t.CA);
  CHECK(d.dim == 9);
  auto triv = generalized_double(t.A, t.B, trivial_pairing(t.A, t.B));
  CHECK(check_hopf_axioms(triv).ok());
}

TEST_CASE("weak smash algebras") {
  auto K = direct_product(cyclic(2), cyclic(2));
  auto M = coset_set(K, {0, 3});
  auto h = weak_smash(M);
  auto r = check_hopf_axioms(h);
  CHECK_MESSAGE(r.ok(), r.str());
  auto hd = weak_smash_dual(M);
  auto rd = check_hopf_axioms(hd);
  CHECK_MESSAGE(rd.ok(), rd.str());
  CHECK(same_structure(dual(h), hd));
  CHECK(check_weak_integral(h, weak_smash_integral(M)).ok());
  CHECK(check_weak_integral(hd, weak_dual_integral(M)).ok());
  auto reps = weak_simple_reps(M);
  int total = 0;
  for (auto& x : reps) {
    total += x.dim * x.dim;
    CHECK(check_rep(h, x).ok());
  }
  CHECK(total == h.dim);
  auto wt = weak_triplet(cyclic(2), cyclic(2), M);
  auto rt = check_triplet(wt);
  CHECK_MESSAGE(rt.ok(), rt.str());
}
