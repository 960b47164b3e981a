#pragma once

#include "braidscape/rational.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace braidscape {

/// Sparse integer matrix as rows of (column, value) pairs, columns sorted.
struct SparseIntMatrix {
  int cols = 0;
  std::vector<std::vector<std::pair<int, BigInt>>> rows;

  void add_row(std::vector<std::pair<int, BigInt>> row) { rows.push_back(std::move(row)); }
};

/// Exact rank over the integers (equivalently over Q) by fraction-free
/// row reduction with unit-leaning pivots.
std::size_t exact_rank(const SparseIntMatrix& m);

/// Smith normal form diagonal of a small dense matrix; entries are the
/// invariant factors d_1 | d_2 | ... (nonzero ones only).
std::vector<BigInt> smith_diagonal(std::vector<std::vector<BigInt>> a);

}  // namespace braidscape
