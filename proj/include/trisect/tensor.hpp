#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "trisect/scalar.hpp"

namespace trisect {

// Sparse tensor with labelled legs. Entry e has indices idx[e*rank .. e*rank+rank).
struct SparseTensor {
  std::vector<int> labels;
  std::vector<int> dims;
  std::vector<uint16_t> idx;
  std::vector<Scalar> vals;

  int rank() const { return int(labels.size()); }
  size_t nnz() const { return vals.size(); }
  void push(std::initializer_list<int> index, const Scalar& v);
  void push(const std::vector<int>& index, const Scalar& v);
};

struct ContractionStats {
  size_t steps = 0;
  size_t max_nnz = 0;
  double estimated_cost = 0;  // sum of estimated intermediate sizes
};

// Contracts a closed network (every label on exactly two tensors) to a scalar.
// Pairs are chosen greedily by estimated result size, ties broken by tensor id;
// with rng set, pairs sharing a label are chosen at random instead.
// Throws ResourceExceeded when an intermediate has more than cap entries.
Scalar contract_network(std::vector<SparseTensor> ts, double cap = 1e7, ContractionStats* stats = nullptr,
                        std::mt19937_64* rng = nullptr);

SparseTensor contract_pair(const SparseTensor& a, const SparseTensor& b);

}  // namespace trisect
