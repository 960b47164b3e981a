#pragma once

#include "braidscape/cells.hpp"
#include "braidscape/tree.hpp"

#include <optional>
#include <vector>

namespace braidscape {

/// Components of the tree minus a set of closed edges.  Removing a closed
/// edge removes its endpoints; an edge whose two endpoints both disappear
/// leaves its open interior as a vertex-free component (an "orphan").
struct CloudSystem {
  int V = 0;
  std::vector<int> removed_edge;            // edge ids, sorted
  std::vector<char> vertex_removed;         // per vertex
  std::vector<int> comp_of_vertex;          // -1 when removed
  std::vector<int> comp_of_orphan;          // per edge, -1 unless orphan
  std::vector<int> comp_root;               // -1 for orphan components
  std::vector<int> comp_anchor;             // min vertex, or V+edge for orphans
  std::vector<int> comp_capacity;           // number of surviving vertices
  int comps = 0;

  /// Component containing a surviving vertex.
  int component_of(int v) const { return comp_of_vertex[v]; }
};

CloudSystem cloud_system(const OrderedTree& ot, const std::vector<int>& edge_ids);

/// Canonical representative of a cell equivalence class: the edge set plus
/// the vertex count of every component of the complement (orphans kept with
/// value zero).  Clouds are listed by anchor.
struct CloudDiagram {
  std::vector<int> edges;                    // edge ids, sorted
  std::vector<std::pair<int, int>> clouds;   // (anchor, value), sorted by anchor

  int dim() const { return static_cast<int>(edges.size()); }
  int total_value() const;
  bool operator==(const CloudDiagram& o) const { return edges == o.edges && clouds == o.clouds; }
  bool operator<(const CloudDiagram& o) const;
};

struct CloudDiagramHash {
  std::size_t operator()(const CloudDiagram& d) const;
};

CloudDiagram cloud_diagram(const OrderedTree& ot, const Cell& c);
bool equivalent(const OrderedTree& ot, const Cell& a, const Cell& b);

/// The Farley-Sabalka partial order on equivalence classes: d <= c iff d's
/// edges are a subset of c's and every d-cloud's value equals the number of
/// c-edges inside it plus the values of the c-clouds inside it.
bool leq(const OrderedTree& ot, const CloudDiagram& d, const CloudDiagram& c);

/// The k one-edge classes whose least upper bound is the given k-cell
/// class, sorted by iota of their edges.
std::vector<CloudDiagram> one_cell_factors(const OrderedTree& ot, const CloudDiagram& c);

/// Least upper bound of a collection of distinct one-edge classes, if any
/// upper bound exists among classes of cells with this total point count.
std::optional<CloudDiagram> lub_of_factors(const OrderedTree& ot,
                                           const std::vector<CloudDiagram>& factors, int n);

/// The unique critical cell in the class, when the class contains one.
std::optional<Cell> critical_cell_of_class(const OrderedTree& ot, const CloudDiagram& d, int n);

/// Parent-closed vertex subsets of one component with exactly `size`
/// elements, at most `limit` of them.  These are precisely the all-blocked
/// vertex placements inside the component.
std::vector<std::vector<int>> component_ideals(const OrderedTree& ot, const CloudSystem& cs,
                                               int comp, int size, int limit);

}  // namespace braidscape
