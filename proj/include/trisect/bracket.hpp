#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>

#include "trisect/diagram.hpp"
#include "trisect/hopf.hpp"
#include "trisect/tensor.hpp"

namespace trisect {

enum class Evaluator { ElementBased, RepBased };
// Ring: one network with the irreps stacked block-diagonally.
// PerLabelling: one network per assignment of irreps to curves.
enum class RepMode { Ring, PerLabelling };

struct BracketConfig {
  HopfTriplet triplet;
  std::array<SVec, 3> integrals;  // in A, B, C
  Evaluator evaluator = Evaluator::ElementBased;
  RepMode rep_mode = RepMode::Ring;
  double cap = 1e7;
  std::optional<uint64_t> order_seed;  // random contraction order, for testing
};

// integrals with eps(l) = 1, which is lambda(l) = 1 for the canonical dual integral
BracketConfig default_config(const HopfTriplet& t, Evaluator ev = Evaluator::ElementBased);
// the unnormalized l' with eps(l') = dim
BracketConfig counting_config(const HopfTriplet& t, Evaluator ev = Evaluator::ElementBased);

// parses kashaev:n=<n>, group:C=<group>,B=<group>, weak:C=..,B=..,M=<gset>, file:<path>
HopfTriplet parse_triplet(const std::string& spec);

Scalar trisection_bracket(const TrisectionDiagram& d, const BracketConfig& cfg, ContractionStats* stats = nullptr);

struct InvariantResult {
  Scalar bracket;
  Scalar s4_bracket;  // xi^3
  int genus = 0;
  RootScalar value;   // principal branch
  std::array<std::complex<double>, 3> branches;
};

InvariantResult invariant(const TrisectionDiagram& d, const BracketConfig& cfg);

struct CheckReport {
  bool ok = false;
  double residual = 0;
  std::string detail;
};

CheckReport bracket_multiplicativity_check(const TrisectionDiagram& a, const TrisectionDiagram& b,
                                           const BracketConfig& cfg);
CheckReport cross_check(const TrisectionDiagram& d, const BracketConfig& elem, const BracketConfig& rep);

const char* algebra_letter(Color c);

}  // namespace trisect
