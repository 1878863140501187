#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trisect/scalar.hpp"

namespace trisect {

using Matrix = std::vector<Scalar>;  // square, row-major

// A matrix representation indexed by basis elements of some algebra
// (group elements for group representations).
struct Rep {
  std::string name;
  int dim = 0;
  std::vector<Matrix> mats;
};

Matrix mat_identity(int d);
Matrix mat_mul(const Matrix& a, const Matrix& b, int d);
Matrix mat_transpose(const Matrix& a, int d);
Scalar mat_trace(const Matrix& a, int d);
Rep transpose_rep(const Rep& r);

struct Group {
  enum class Kind { Plain, Product, Opposite };
  std::string name;
  std::vector<std::string> elems;
  std::vector<std::vector<int>> table;
  std::vector<int> inv;
  int e = 0;
  Kind kind = Kind::Plain;
  std::vector<Group> factors;  // Product: the two factors; Opposite: the base group

  int size() const { return int(elems.size()); }
  int mul(int a, int b) const { return table[a][b]; }
  bool abelian() const;
  int order(int g) const;
  int exponent() const;
  int find(const std::string& name) const;  // -1 if absent
};

// validates the axioms and fills inverses/identity
Group make_group(std::string name, std::vector<std::string> elems, std::vector<std::vector<int>> table);
Group trivial_group();
Group cyclic(int n);
Group symmetric(int n);  // n = 3 or 4
Group dihedral4();
Group direct_product(const Group& a, const Group& b);
Group opposite(const Group& g);
// "Z/n", "Zn", "S3", "S4", "D4", "1", products "AxB", or a group file "*.json"
Group parse_group(const std::string& spec);
Group load_group_file(const std::string& path);

// all irreducible representations; characters for abelian groups, built-ins for
// S3 and D4, tensor products for direct products.
std::vector<Rep> group_irreps(const Group& g);
std::vector<Rep> abelian_characters(const Group& g);
bool has_group_irreps(const Group& g);

// an isomorphism a -> b as an index map, if one exists
std::optional<std::vector<int>> find_isomorphism(const Group& a, const Group& b);
// irreps of g pulled back from the first isomorphic group among candidates
std::optional<std::vector<Rep>> irreps_via_isomorphism(const Group& g, const std::vector<Group>& candidates);

// finite K-set given by an action table act[k][m]
struct GSet {
  Group K;
  std::vector<std::string> points;
  std::vector<std::vector<int>> act;

  int size() const { return int(points.size()); }
  bool transitive() const;
};

GSet point_set(const Group& K);
GSet coset_set(const Group& K, const std::vector<int>& subgroup);
// restrict a K-set along a subgroup given by an injective map H -> K
GSet restrict_set(const GSet& m, const Group& H, const std::vector<int>& embed);
// "point", "cosets:<elements>" (indices or names, comma separated), inline JSON or a file path
GSet parse_gset(const Group& K, const std::string& spec);

}  // namespace trisect
