#pragma once

#include "braidscape/tree.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace braidscape {

/// An oriented arc: a reduced path of adjacent vertices, each end either
/// exactly at its terminal vertex or strictly inside the first/last edge
/// (in which case that vertex is not on the arc).
struct OrientedArc {
  std::vector<int> path;  // vertex numbers along the arc, >= 2 entries
  bool start_inside = false;
  bool end_inside = false;

  bool operator==(const OrientedArc& o) const {
    return path == o.path && start_inside == o.start_inside && end_inside == o.end_inside;
  }
  OrientedArc reversed() const {
    OrientedArc r{{path.rbegin(), path.rend()}, end_inside, start_inside};
    return r;
  }
};

/// Whether v lies on the arc (interior or endpoint).
bool arc_covers(const OrientedArc& a, int v);
/// Whether v is an endpoint of the arc.
bool arc_endpoint(const OrientedArc& a, int v);
/// Whether v lies strictly inside the arc.
bool arc_interior(const OrientedArc& a, int v);

/// Orientation sums eta_j(v) for j = 0..deg(v)-1: +1 per arc oriented
/// toward v on the direction-j edge, -1 per arc oriented away.
std::vector<long> eta(const OrderedTree& ot, const std::vector<OrientedArc>& arcs, int v);

/// Definition of allowability: no targeted vertex is an arc endpoint and
/// some eta_j is nonzero at each targeted vertex.
bool is_allowable(const OrderedTree& ot, const std::vector<OrientedArc>& arcs,
                  const std::vector<int>& targets);

/// Search budget for arc collections; exceeding it raises
/// SearchBoundExceeded rather than guessing.
struct ArcSearchCaps {
  std::uint64_t max_collections = 2'000'000;
  int max_wprime_choices = 4096;
};

/// Canonical arc candidates: oriented geodesics between ordered pairs of
/// vertices and edge midpoints, in enumeration order.
std::vector<OrientedArc> canonical_arcs(const OrderedTree& ot);

struct MinAllowableResult {
  int k = 0;
  std::vector<OrientedArc> arcs;
};

/// Smallest k admitting a collection of k oriented arcs allowable for all
/// degree-3 vertices (0 when there are none), with a witness collection.
MinAllowableResult min_allowable_k(const OrderedTree& ot, const ArcSearchCaps& caps = {});

enum class ArcCaseTag { Statement1, Case2a, Case2bEven, Case2bOdd };

/// Witness data for one clause of the main decision procedure, in the
/// numbering of the tree the search ran on.
struct ArcCertificate {
  ArcCaseTag tag = ArcCaseTag::Statement1;
  int n = 0;
  int q = 0;
  int epsilon = 0;
  int k = 0;
  int r_prime = 0;
  int s_prime = 0;
  std::vector<OrientedArc> arcs;      // A_1..A_k
  std::optional<OrientedArc> arc0;    // A_0 (odd case)
  std::vector<int> V_targets;         // allowable targets (statement 1 / 2b-even)
  std::vector<int> W_targets;         // 2b-odd: W
  std::vector<int> Wp_targets;        // 2b-odd: W'
  std::vector<int> over3;             // 2a: chosen degree->3 vertices
  std::vector<int> deg3;              // 2a: chosen degree-3 vertices
};

std::optional<ArcCertificate> find_case2a(const OrderedTree& ot, int n);
std::optional<ArcCertificate> find_case2b(const OrderedTree& ot, int n, int epsilon,
                                          const ArcSearchCaps& caps = {});

/// Re-checks the clause conditions of a certificate against the tree.
bool check_certificate(const OrderedTree& ot, const ArcCertificate& cert, std::string* why);

}  // namespace braidscape
