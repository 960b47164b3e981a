#pragma once

#include "braidscape/tree.hpp"

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace braidscape {

/// Default enumeration guard; BRAIDSCAPE_MAX_CELLS overrides it.
std::uint64_t default_cell_cap();

/// A cube of the unordered discrete configuration space: n pairwise
/// disjoint closed vertices/edges.  Elements are encoded as vertex number
/// (0..V-1) or V + edge id; members are kept sorted.
struct Cell {
  std::vector<int> members;

  int n() const { return static_cast<int>(members.size()); }
  bool operator==(const Cell& o) const { return members == o.members; }
  bool operator<(const Cell& o) const { return members < o.members; }
};

inline bool element_is_edge(const OrderedTree& ot, int elem) { return elem >= ot.V(); }
inline int element_edge(const OrderedTree& ot, int elem) { return elem - ot.V(); }

int cell_dim(const OrderedTree& ot, const Cell& c);
std::vector<int> cell_edges(const OrderedTree& ot, const Cell& c);
std::vector<int> cell_vertices(const OrderedTree& ot, const Cell& c);
bool cell_valid(const OrderedTree& ot, const Cell& c);

std::string element_label(const OrderedTree& ot, int elem);
std::string cell_label(const OrderedTree& ot, const Cell& c);

/// Streams every cell with exactly n members whose dimension lies in
/// `dims`, in lexicographic member order.  Throws CapExceeded when more
/// than `cap` cells would be emitted.
void enumerate_cells(const OrderedTree& ot, int n, const std::set<int>& dims,
                     const std::function<void(const Cell&)>& sink,
                     std::uint64_t cap = default_cell_cap());

std::vector<Cell> collect_cells(const OrderedTree& ot, int n, const std::set<int>& dims,
                                std::uint64_t cap = default_cell_cap());

/// Blocked/order-disrespecting predicates of the discrete vector field
/// classification.  `v` is a vertex number, `edge_id` an edge id; both must
/// be members of the cell.
bool is_blocked(const OrderedTree& ot, const Cell& c, int v);
bool is_order_disrespecting(const OrderedTree& ot, const Cell& c, int edge_id);

enum class CellClass { Critical, Collapsible, Redundant };

CellClass classify_cell(const OrderedTree& ot, const Cell& c);

/// All critical k-cells in canonical order.  Enumerates directly over the
/// constrained shape of critical cells (disrespecting edges sit in
/// direction >= 2 of an essential vertex; every vertex is blocked), which
/// agrees with enumerate+classify but does not walk the full complex.
std::vector<Cell> critical_cells(const OrderedTree& ot, int n, int k,
                                 std::uint64_t cap = default_cell_cap());

/// Largest k with a critical k-cell; always <= min(n/2, m).
int reduced_complex_dim(const OrderedTree& ot, int n,
                        std::uint64_t cap = default_cell_cap());

}  // namespace braidscape
