#pragma once

#include "braidscape/rational.hpp"

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace braidscape {

/// A finite tree with a planar rotation system and a designated degree-1
/// base vertex.  Vertices are referred to by handle (index into `ids`);
/// edges are derived from the rotation lists.
struct Tree {
  std::vector<std::string> ids;                // handle -> external id
  std::unordered_map<std::string, int> index;  // external id -> handle
  std::vector<std::vector<int>> rotation;      // clockwise neighbor handles
  int base = -1;

  int vertex_count() const { return static_cast<int>(ids.size()); }
  int degree(int v) const { return static_cast<int>(rotation[v].size()); }
  int edge_count() const;

  /// Checks connectivity, acyclicity, rotation consistency and the base
  /// degree; throws ParseError on violation.
  void validate() const;
};

Tree parse_tree(const std::string& text);
std::string tree_to_json(const Tree& t);

/// True iff every path between distinct vertices of degree != 2 has at
/// least n-1 edges and the tree has at least n vertices.
bool sufficiently_subdivided(const Tree& t, int n);

/// Minimal insertion of evenly spaced degree-2 vertices so the result is
/// sufficiently subdivided for n.  Identity when the input already is.
Tree subdivide_for(const Tree& t, int n);

/// A tree together with its depth-first vertex numbering.  Everything
/// downstream works in number space: vertex v below always means the
/// vertex numbered v.
class OrderedTree {
 public:
  struct Edge {
    int iota;  // smaller-numbered endpoint
    int tau;   // larger-numbered endpoint
  };

  explicit OrderedTree(Tree t);

  const Tree& tree() const { return tree_; }
  int V() const { return static_cast<int>(parent_.size()); }
  int E() const { return static_cast<int>(edges_.size()); }

  int number_of(int handle) const { return number_[handle]; }
  int handle_of(int v) const { return vertex_of_[v]; }
  const std::string& id_of(int v) const { return tree_.ids[vertex_of_[v]]; }
  std::optional<int> vertex_by_id(const std::string& id) const;

  int parent(int v) const { return parent_[v]; }  // -1 for the base
  int depth(int v) const { return depth_[v]; }
  int degree(int v) const { return static_cast<int>(neighbors_[v].size()); }
  const std::vector<int>& neighbors(int v) const { return neighbors_[v]; }

  bool essential(int v) const { return degree(v) >= 3; }
  const std::vector<int>& essentials() const { return essentials_; }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[e]; }
  int edge_between(int u, int v) const;  // -1 when not adjacent
  /// The unique edge e_v with tau(e_v) = v.
  int parent_edge(int v) const;
  const std::vector<int>& incident_edges(int v) const { return incident_[v]; }

  /// Direction index of an incident edge at v != base: 0 lies on the
  /// geodesic toward the base, then increasing clockwise.
  int direction(int v, int edge_id) const;
  /// Neighbor of v in direction j.
  int neighbor_in_direction(int v, int j) const { return dir_neighbor_[v][j]; }
  int direction_of_neighbor(int v, int u) const;

 private:
  Tree tree_;
  std::vector<int> number_;        // handle -> number
  std::vector<int> vertex_of_;     // number -> handle
  std::vector<int> parent_;        // number space
  std::vector<int> depth_;
  std::vector<std::vector<int>> neighbors_;     // number space, rotation order
  std::vector<std::vector<int>> dir_neighbor_;  // [v][dir] = neighbor
  std::vector<Edge> edges_;                     // sorted by (iota, tau)
  std::vector<std::vector<int>> incident_;      // vertex -> edge ids
  std::unordered_map<long long, int> edge_ix_;
  std::vector<int> essentials_;
};

OrderedTree order_vertices(const Tree& t);

/// A point of the tree: a vertex, or an interior point of an edge at
/// rational parameter t in (0,1) measured from iota(e).
struct Point {
  bool on_vertex = true;
  int vertex = -1;   // valid when on_vertex
  int edge = -1;     // valid when !on_vertex
  Rational t = 0;    // in (0,1) when !on_vertex

  static Point at_vertex(int v) { return Point{true, v, -1, 0}; }
  static Point on_edge(int e, Rational param) { return Point{false, -1, e, std::move(param)}; }

  bool operator==(const Point& o) const {
    return on_vertex == o.on_vertex && vertex == o.vertex && edge == o.edge && t == o.t;
  }
};

/// The unique reduced path between two points.  `vertices` lists every
/// vertex the path passes through, in order (may be empty when both points
/// are interior to the same edge).
struct Geodesic {
  Point from;
  Point to;
  std::vector<int> vertices;
  Rational length = 0;
};

Geodesic geodesic(const OrderedTree& ot, const Point& a, const Point& b);

struct TreeStats {
  int m = 0;  // essential vertices
  int r = 0;  // degree > 3
  int s = 0;  // degree == 3
  std::vector<int> essentials;  // in number order
};

struct ConnectivityReport {
  bool unordered_connected = true;
  bool ordered_connected = true;
  std::string note;
};

TreeStats tree_stats(const OrderedTree& ot);
ConnectivityReport connectivity(const OrderedTree& ot, int n);

}  // namespace braidscape
