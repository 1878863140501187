#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "trisect/bracket.hpp"
#include "trisect/hopf.hpp"

namespace trisect {

using ojson = nlohmann::ordered_json;

// Scalars in files: an integer, a rational string "p/q", a float (approximate),
// [re, im] (approximate), or {"level": N, "coeffs": [...]} in the power basis of Q(zeta_N).
Scalar scalar_from_json(const ojson& j, const std::string& path = "");
// {"exact": "...", "re": x, "im": y}; "exact" is null for approximate values
ojson scalar_to_json(const Scalar& s);
ojson root_to_json(const RootScalar& r);

// {"dim", "mult", "unit", "comult", "counit", "antipode", "weak"} with dense arrays:
// mult[i][j][k] is the e_k coefficient of e_i e_j, comult[i][j][k] that of e_j (x) e_k
// in Delta(e_i), antipode[i][j] that of e_j in S(e_i).
HopfAlgebra hopf_from_json(const ojson& j, const std::string& path = "");
ojson hopf_to_json(const HopfAlgebra& h);
HopfAlgebra load_hopf_file(const std::string& path);

// {"algebra", "reps": [{"name", "dim", "matrices"}]}, one matrix per basis element
std::vector<Rep> reps_from_json(const ojson& j, const std::string& path = "");
std::vector<Rep> load_rep_file(const std::string& path);

// {"A", "B", "C"} (inline objects or file names), pairing matrices {"AB", "BC", "CA"},
// optional {"irreps": {"A": ...}, "dual_irreps": {...}}. Pairings and the cyclic
// identity are checked on load.
HopfTriplet triplet_from_json(const ojson& j, const std::string& dir = "");
HopfTriplet load_triplet_file(const std::string& path);

// replace every structure constant by its complex approximation
HopfAlgebra to_float(const HopfAlgebra& h);
HopfTriplet to_float(const HopfTriplet& t);
BracketConfig to_float(const BracketConfig& cfg);

std::string read_file(const std::string& path);

}  // namespace trisect
