#pragma once

#include "braidscape/rational.hpp"
#include "braidscape/tree.hpp"

#include <string>
#include <utility>
#include <vector>

namespace braidscape {

/// n points with pairwise-disjoint carriers (a vertex, or a closed edge for
/// an interior point).  For ordered configurations index = label; unordered
/// ones are kept in canonical sorted order.
struct Configuration {
  std::vector<Point> points;
  bool ordered = false;

  int n() const { return static_cast<int>(points.size()); }
};

bool carriers_disjoint(const OrderedTree& ot, const Point& a, const Point& b);
bool config_valid(const OrderedTree& ot, const Configuration& c);
void canonicalize(const OrderedTree& ot, Configuration& c);  // sorts unordered configs

/// f-value used by the planner's ordering: the vertex number, or iota's
/// number for an edge-interior point.
int f_value(const OrderedTree& ot, const Point& p);

/// Edges whose interiors carry a point, and their count.
std::pair<std::vector<int>, int> stratum(const OrderedTree& ot, const Configuration& c);

struct Keyframe {
  Rational time;
  std::vector<Point> points;  // indexed by token (label when ordered)
};

/// Piecewise-linear path: between consecutive keyframes exactly one point
/// moves, linearly along a single edge.
struct PlannedPath {
  std::vector<Keyframe> frames;
  bool ordered = false;
  int stratum_sum = -1;  // l = i(x) + j(y) for two-query plans
};

PlannedPath reverse_path(const PlannedPath& p);

/// sigma_x of the explicit motion planner: stage i moves the i-th point in
/// f-order to the i-th canonical vertex along the geodesic, over
/// [(i-1)/n, i/n]; earlier points are already parked.
PlannedPath canonical_path(const OrderedTree& ot, const Configuration& x);

/// sigma_x followed by the reverse of sigma_y, with the stratum index l
/// recorded.
PlannedPath plan_unordered(const OrderedTree& ot, const Configuration& x,
                           const Configuration& y);

/// Ordered path from the identity arrangement on a_1..a_n to the one where
/// position i carries label pi[i]; built from adjacent-transposition
/// maneuvers that park tokens on the first essential vertex's branches.
PlannedPath permutation_path(const OrderedTree& ot, int n, const std::vector<int>& pi);

/// Lifted canonical path, a permutation maneuver between the two resulting
/// arrangements, then the reversed lifted path; labels tracked exactly.
PlannedPath plan_ordered(const OrderedTree& ot, const Configuration& x,
                         const Configuration& y);

struct PathValidation {
  bool ok = true;
  int frame = -1;         // first offending frame/segment
  std::string violation;  // empty when ok
};

/// Checks every keyframe and every linear segment for carrier disjointness
/// and single-point single-edge motion.
PathValidation validate_path(const OrderedTree& ot, const PlannedPath& p);

/// Configuration literal: comma-separated points, each "v:<id>" or
/// "e:<id1>-<id2>@<num>/<den>" with the parameter measured from <id1>.
Configuration parse_configuration(const OrderedTree& ot, const std::string& text, bool ordered);
std::string configuration_to_string(const OrderedTree& ot, const Configuration& c);
std::string point_to_string(const OrderedTree& ot, const Point& p);

}  // namespace braidscape
