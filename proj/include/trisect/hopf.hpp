#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "trisect/group.hpp"
#include "trisect/scalar.hpp"

namespace trisect {

// sparse vector: (basis index, coefficient), sorted, no zero coefficients
using SVec = std::vector<std::pair<int, Scalar>>;

struct Term2 {
  int a, b;
  Scalar c;
};

// Finite-dimensional (weak) Hopf algebra as structure tensors.
struct HopfAlgebra {
  std::string name;
  int dim = 0;
  bool weak = false;
  std::vector<SVec> mult;  // mult[i*dim+j] = e_i e_j
  SVec unit;
  std::vector<std::vector<Term2>> comult;
  std::vector<Scalar> counit;
  std::vector<SVec> antipode;  // S(e_i)
  std::vector<std::string> basis;
  // irreducible representations of H and of H*, when known
  std::optional<std::vector<Rep>> irreps, dual_irreps;
};

// element arithmetic
SVec svec_basis(int i, const Scalar& c = Scalar(1));
SVec svec_add(const SVec& x, const SVec& y);
SVec svec_scale(const SVec& x, const Scalar& s);
SVec svec_from_dense(const std::vector<Scalar>& d);
std::vector<Scalar> svec_to_dense(const SVec& x, int dim);
double svec_residual(const SVec& x, const SVec& y);
SVec h_mul(const HopfAlgebra& h, const SVec& x, const SVec& y);
std::vector<Term2> h_comul(const HopfAlgebra& h, const SVec& x);
Scalar h_counit(const HopfAlgebra& h, const SVec& x);
SVec h_antipode(const HopfAlgebra& h, const SVec& x);
SVec h_one(const HopfAlgebra& h);

struct AxiomReport {
  std::vector<std::pair<std::string, double>> residuals;
  double max() const;
  bool ok(double tol = 0.0) const { return max() <= tol; }
  void add(const std::string& name, double r);
  std::string str() const;
};

AxiomReport check_hopf_axioms(const HopfAlgebra& h);
bool same_structure(const HopfAlgebra& a, const HopfAlgebra& b);

HopfAlgebra group_algebra(const Group& g);
HopfAlgebra function_algebra(const Group& g);
HopfAlgebra dual(const HopfAlgebra& h);
HopfAlgebra op(const HopfAlgebra& h);
HopfAlgebra cop(const HopfAlgebra& h);
std::vector<SVec> antipode_inverse(const HopfAlgebra& h);

// integrals
SVec compute_integral(const HopfAlgebra& h);      // l' with eps(l') = dim H
SVec normalized_integral(const HopfAlgebra& h);   // eps(l) = 1, equivalently lambda(l) = 1
std::vector<Scalar> canonical_dual_integral(const HopfAlgebra& h, const std::vector<Rep>& irreps);
AxiomReport check_integral(const HopfAlgebra& h, const SVec& l);
AxiomReport check_weak_integral(const HopfAlgebra& h, const SVec& l);
AxiomReport check_rep(const HopfAlgebra& h, const Rep& r);

// bilinear form tau[i][j] between basis elements of two algebras
struct Pairing {
  int rows = 0, cols = 0;
  std::vector<Scalar> m;
  Pairing() = default;
  Pairing(int r, int c) : rows(r), cols(c), m(size_t(r) * c) {}
  Scalar& operator()(int i, int j) { return m[size_t(i) * cols + j]; }
  const Scalar& operator()(int i, int j) const { return m[size_t(i) * cols + j]; }
  Scalar eval(const SVec& a, const SVec& b) const;
};

AxiomReport check_skew_pairing(const HopfAlgebra& a, const HopfAlgebra& b, const Pairing& t);
Pairing convolution_inverse(const Pairing& t, const HopfAlgebra& a);  // tau o (S x id), unchecked
Pairing checked_convolution_inverse(const Pairing& t, const HopfAlgebra& a, const HopfAlgebra& b);
Pairing trivial_pairing(const HopfAlgebra& a, const HopfAlgebra& b);

HopfAlgebra generalized_double(const HopfAlgebra& a, const HopfAlgebra& b, const Pairing& t, bool verify = true);

struct HopfTriplet {
  std::string name;
  HopfAlgebra A, B, C;
  Pairing AB, BC, CA;
  bool allow_weak = false;
  // integrals that come with the construction (used for weak triplets)
  std::optional<std::array<SVec, 3>> integrals;
};

AxiomReport check_triplet(const HopfTriplet& t);
HopfTriplet kashaev_triplet(int n);
HopfTriplet group_triplet(const Group& C, const Group& B);

// weak Hopf algebras from a K-set M
HopfAlgebra weak_smash(const GSet& m);       // C^{MxM} # C[K], basis d_m (x) d_n (x) k
HopfAlgebra weak_smash_dual(const GSet& m);  // <MxM> (x) C^K, basis m (x) n (x) d_k
SVec weak_smash_integral(const GSet& m);      // sum d_m (x) d_m (x) k
SVec weak_dual_integral(const GSet& m);       // sum m (x) n (x) d_1
int weak_index(const GSet& m, int a, int b, int k);

// K = C x B^op with index c*|B| + b
Group k_group(const Group& C, const Group& B);
HopfTriplet weak_triplet(const Group& C, const Group& B, const GSet& M, bool strict = true);

using StabIrreps = std::function<std::vector<Rep>(const Group& stab)>;
std::vector<Rep> weak_simple_reps(const GSet& m, const StabIrreps& provider = {});

}  // namespace trisect
