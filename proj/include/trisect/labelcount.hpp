#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trisect/bracket.hpp"
#include "trisect/diagram.hpp"
#include "trisect/group.hpp"
#include "trisect/hopf.hpp"

namespace trisect {

struct WeakConfig {
  Group C, B, K;  // K = C x B^op, index c*|B| + b
  GSet M;
  StabIrreps stab_irreps;  // empty: characters for abelian stabilizers
};

WeakConfig make_weak_config(const Group& C, const Group& B, const std::string& gset_spec = "point",
                            bool strict = true);

// curve id -> element index, in C for green curves and in B for blue ones
using CurveLabels = std::map<std::string, int>;

// holonomy g_{n-1} ... g_0 along a red curve, g = (c^-eps, 1) or (1, b^eps)
int red_product(const TrisectionDiagram& d, const std::string& red_curve, const CurveLabels& labels,
                const Group& C, const Group& B);

// labellings of blue and green curves with trivial red products
mpz_class count_curve_labellings(const TrisectionDiagram& d, const Group& C, const Group& B);

// labellings of curves and regions satisfying both admissibility conditions
mpz_class count_admissible(const EmbeddedDiagram& e, const WeakConfig& cfg,
                           std::optional<int> boundary_label = std::nullopt);

// |l| |B|^r |C|^r with r the number of red curves
Scalar averaged_evaluation(const EmbeddedDiagram& e, const WeakConfig& cfg,
                           std::optional<int> boundary_label = std::nullopt);

struct FullLabelling {
  CurveLabels curves;
  std::map<std::string, int> regions;  // region id -> point of M
};

// product of the region delta factors and of sum_rho dim tr(E_lambda) over red curves
Scalar brute_force_evaluation(const EmbeddedDiagram& e, const WeakConfig& cfg, const FullLabelling& l);
// sum of brute_force_evaluation over all curve and region labels
Scalar brute_force_sum(const EmbeddedDiagram& e, const WeakConfig& cfg,
                       std::optional<int> boundary_label = std::nullopt);

// |l_T| (|B||C|)^(-g/3), |l_T| = |M| |l_T^{B,C}|
RootScalar group_count_invariant(const TrisectionDiagram& t, const WeakConfig& cfg);
mpz_class labelling_count(const TrisectionDiagram& t, const WeakConfig& cfg);

// group_count_invariant(t) = |M| * invariant(t) for the group triplet with counting integrals
CheckReport coincidence_check(const TrisectionDiagram& t, const WeakConfig& cfg);

int worker_count();  // TRISECT_THREADS, default hardware concurrency

}  // namespace trisect
