#include "trisect/tensor.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>

#include "trisect/errors.hpp"

namespace trisect {

void SparseTensor::push(std::initializer_list<int> index, const Scalar& v) {
  if (v.is_zero()) return;
  for (int i : index) idx.push_back(uint16_t(i));
  vals.push_back(v);
}

void SparseTensor::push(const std::vector<int>& index, const Scalar& v) {
  if (v.is_zero()) return;
  for (int i : index) idx.push_back(uint16_t(i));
  vals.push_back(v);
}

namespace {

std::string key_of(const uint16_t* row, const std::vector<int>& pos) {
  std::string k(pos.size() * 2, '\0');
  for (size_t i = 0; i < pos.size(); ++i) {
    k[2 * i] = char(row[pos[i]] & 0xff);
    k[2 * i + 1] = char(row[pos[i]] >> 8);
  }
  return k;
}

struct PairPlan {
  std::vector<int> shared_a, shared_b, keep_a, keep_b;
  double dense = 1, shared_dense = 1;
};

PairPlan plan(const SparseTensor& a, const SparseTensor& b) {
  PairPlan p;
  for (int i = 0; i < a.rank(); ++i) {
    auto it = std::find(b.labels.begin(), b.labels.end(), a.labels[i]);
    if (it != b.labels.end()) {
      p.shared_a.push_back(i);
      p.shared_b.push_back(int(it - b.labels.begin()));
      p.shared_dense *= a.dims[i];
    } else {
      p.keep_a.push_back(i);
      p.dense *= a.dims[i];
    }
  }
  for (int j = 0; j < b.rank(); ++j)
    if (std::find(p.shared_b.begin(), p.shared_b.end(), j) == p.shared_b.end()) {
      p.keep_b.push_back(j);
      p.dense *= b.dims[j];
    }
  return p;
}

double estimate(const SparseTensor& a, const SparseTensor& b, const PairPlan& p) {
  return std::min(p.dense, double(a.nnz()) * double(b.nnz()) / p.shared_dense);
}

}  // namespace

SparseTensor contract_pair(const SparseTensor& a, const SparseTensor& b) {
  PairPlan p = plan(a, b);
  SparseTensor out;
  for (int i : p.keep_a) {
    out.labels.push_back(a.labels[i]);
    out.dims.push_back(a.dims[i]);
  }
  for (int j : p.keep_b) {
    out.labels.push_back(b.labels[j]);
    out.dims.push_back(b.dims[j]);
  }
  std::unordered_map<std::string, std::vector<size_t>> index;
  int rb = b.rank(), ra = a.rank();
  for (size_t e = 0; e < b.nnz(); ++e) index[key_of(&b.idx[e * rb], p.shared_b)].push_back(e);
  std::unordered_map<std::string, Scalar> acc;
  std::vector<std::string> order;  // first-seen order keeps results deterministic
  for (size_t e = 0; e < a.nnz(); ++e) {
    const uint16_t* ra_row = &a.idx[e * ra];
    auto it = index.find(key_of(ra_row, p.shared_a));
    if (it == index.end()) continue;
    std::string ka = key_of(ra_row, p.keep_a);
    for (size_t f : it->second) {
      std::string k = ka + key_of(&b.idx[f * rb], p.keep_b);
      auto [slot, fresh] = acc.try_emplace(k);
      if (fresh) order.push_back(k);
      slot->second += a.vals[e] * b.vals[f];
    }
  }
  int r = out.rank();
  for (auto& k : order) {
    const Scalar& v = acc[k];
    if (v.is_zero()) continue;
    for (int i = 0; i < r; ++i) out.idx.push_back(uint16_t((unsigned char)k[2 * i] | ((unsigned char)k[2 * i + 1] << 8)));
    out.vals.push_back(v);
  }
  return out;
}

Scalar contract_network(std::vector<SparseTensor> ts, double cap, ContractionStats* stats, std::mt19937_64* rng) {
  {
    std::map<int, int> count;
    for (auto& t : ts)
      for (int l : t.labels) ++count[l];
    for (auto& [l, c] : count)
      if (c != 2) throw InternalConsistency("tensor network label " + std::to_string(l) + " appears " +
                                            std::to_string(c) + " times");
  }
  ContractionStats local;
  ContractionStats& st = stats ? *stats : local;
  Scalar result(1);
  std::vector<bool> alive(ts.size(), true);
  auto fold_scalars = [&]() {
    for (size_t i = 0; i < ts.size(); ++i)
      if (alive[i] && ts[i].rank() == 0) {
        result *= ts[i].nnz() ? ts[i].vals[0] : Scalar();
        alive[i] = false;
      }
  };
  fold_scalars();
  while (true) {
    if (result.is_zero()) return result;
    int bi = -1, bj = -1;
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::pair<int, int>> candidates;
    for (size_t i = 0; i < ts.size(); ++i) {
      if (!alive[i]) continue;
      for (size_t j = i + 1; j < ts.size(); ++j) {
        if (!alive[j]) continue;
        bool share = false;
        for (int l : ts[i].labels)
          share = share || std::find(ts[j].labels.begin(), ts[j].labels.end(), l) != ts[j].labels.end();
        if (!share) continue;
        if (rng) {
          candidates.push_back({int(i), int(j)});
          continue;
        }
        double e = estimate(ts[i], ts[j], plan(ts[i], ts[j]));
        if (e < best) {
          best = e;
          bi = int(i);
          bj = int(j);
        }
      }
    }
    if (rng && !candidates.empty()) {
      auto c = candidates[std::uniform_int_distribution<size_t>(0, candidates.size() - 1)(*rng)];
      bi = c.first;
      bj = c.second;
      best = estimate(ts[bi], ts[bj], plan(ts[bi], ts[bj]));
    }
    if (bi < 0) break;
    st.estimated_cost += best;
    if (best > cap) {
      std::ostringstream os;
      os << "contraction exceeds cap " << cap << ": next intermediate estimated at " << best
         << " entries (greedy order cost so far " << st.estimated_cost << ")";
      throw ResourceExceeded(os.str());
    }
    SparseTensor t = contract_pair(ts[bi], ts[bj]);
    ++st.steps;
    st.max_nnz = std::max(st.max_nnz, t.nnz());
    if (double(t.nnz()) > cap) {
      std::ostringstream os;
      os << "contraction exceeds cap " << cap << ": intermediate with " << t.nnz() << " entries";
      throw ResourceExceeded(os.str());
    }
    alive[bi] = alive[bj] = false;
    ts.push_back(std::move(t));
    alive.push_back(true);
    fold_scalars();
  }
  for (size_t i = 0; i < ts.size(); ++i)
    if (alive[i]) throw InternalConsistency("tensor network did not close");
  return result;
}

}  // namespace trisect
