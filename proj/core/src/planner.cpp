#include "braidscape/planner.hpp"

#include "braidscape/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace braidscape {

namespace {

std::pair<int, int> carrier(const OrderedTree& ot, const Point& p) {
  if (p.on_vertex) return {p.vertex, p.vertex};
  const auto& e = ot.edge(p.edge);
  return {e.iota, e.tau};
}

}  // namespace

bool carriers_disjoint(const OrderedTree& ot, const Point& a, const Point& b) {
  auto [a1, a2] = carrier(ot, a);
  auto [b1, b2] = carrier(ot, b);
  return a1 != b1 && a1 != b2 && a2 != b1 && a2 != b2;
}

bool config_valid(const OrderedTree& ot, const Configuration& c) {
  for (const auto& p : c.points) {
    if (p.on_vertex) {
      if (p.vertex < 0 || p.vertex >= ot.V()) return false;
    } else {
      if (p.edge < 0 || p.edge >= ot.E()) return false;
      if (!(p.t > 0 && p.t < 1)) return false;
    }
  }
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    for (std::size_t j = i + 1; j < c.points.size(); ++j) {
      if (!carriers_disjoint(ot, c.points[i], c.points[j])) return false;
    }
  }
  return true;
}

int f_value(const OrderedTree& ot, const Point& p) {
  return p.on_vertex ? p.vertex : ot.edge(p.edge).iota;
}

void canonicalize(const OrderedTree& ot, Configuration& c) {
  if (c.ordered) return;
  std::sort(c.points.begin(), c.points.end(), [&](const Point& a, const Point& b) {
    const int fa = f_value(ot, a), fb = f_value(ot, b);
    if (fa != fb) return fa < fb;
    return a.t < b.t;
  });
}

std::pair<std::vector<int>, int> stratum(const OrderedTree& ot, const Configuration& c) {
  std::vector<int> edges;
  for (const auto& p : c.points) {
    if (!p.on_vertex) edges.push_back(p.edge);
  }
  std::sort(edges.begin(), edges.end());
  return {edges, static_cast<int>(edges.size())};
}

PlannedPath reverse_path(const PlannedPath& p) {
  PlannedPath out;
  out.ordered = p.ordered;
  out.stratum_sum = p.stratum_sum;
  for (auto it = p.frames.rbegin(); it != p.frames.rend(); ++it) {
    out.frames.push_back({Rational(1) - it->time, it->points});
  }
  return out;
}

namespace {

// Distance between adjacent waypoints of a motion (both on one edge).
Rational leg_length(const OrderedTree& ot, const Point& a, const Point& b) {
  if (a.on_vertex && b.on_vertex) return 1;
  if (!a.on_vertex && !b.on_vertex) {
    if (a.edge != b.edge) throw std::logic_error("leg spans two edges");
    return a.t < b.t ? b.t - a.t : a.t - b.t;
  }
  const Point& ep = a.on_vertex ? b : a;
  const Point& vp = a.on_vertex ? a : b;
  const auto& e = ot.edge(ep.edge);
  if (vp.vertex == e.iota) return ep.t;
  if (vp.vertex == e.tau) return Rational(1) - ep.t;
  throw std::logic_error("leg endpoints not on one edge");
}

// Moves token i from its current point to `target` over (t0, t1], appending
// one keyframe per vertex crossing.  All other tokens stay fixed.
void emit_motion(const OrderedTree& ot, PlannedPath& path, std::vector<Point>& pts, int i,
                 const Point& target, const Rational& t0, const Rational& t1) {
  Geodesic g = geodesic(ot, pts[i], target);
  if (g.length == 0) {
    path.frames.push_back({t1, pts});
    return;
  }
  std::vector<Point> waypoints;
  std::size_t vstart = 0;
  if (pts[i].on_vertex) {
    if (g.vertices.empty() || g.vertices.front() != pts[i].vertex)
      throw std::logic_error("geodesic does not start at the moving point");
    vstart = 1;
  }
  for (std::size_t v = vstart; v < g.vertices.size(); ++v)
    waypoints.push_back(Point::at_vertex(g.vertices[v]));
  if (!target.on_vertex) waypoints.push_back(target);
  if (waypoints.empty()) throw std::logic_error("motion with no waypoints");

  Rational covered = 0;
  Point prev = pts[i];
  for (const Point& w : waypoints) {
    covered += leg_length(ot, prev, w);
    pts[i] = w;
    path.frames.push_back({t0 + (t1 - t0) * covered / g.length, pts});
    prev = w;
  }
  if (covered != g.length) throw std::logic_error("leg lengths do not sum to the geodesic length");
}

std::vector<int> f_order(const OrderedTree& ot, const std::vector<Point>& pts) {
  std::vector<int> idx(pts.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return f_value(ot, pts[a]) < f_value(ot, pts[b]);
  });
  return idx;
}

}  // namespace

PlannedPath canonical_path(const OrderedTree& ot, const Configuration& x) {
  if (!config_valid(ot, x)) throw std::invalid_argument("invalid configuration");
  if (!sufficiently_subdivided(ot.tree(), x.n()))
    throw std::invalid_argument("tree is not sufficiently subdivided for n");
  const int n = x.n();
  PlannedPath path;
  path.ordered = x.ordered;
  std::vector<Point> pts = x.points;
  path.frames.push_back({0, pts});
  const std::vector<int> order = f_order(ot, pts);
  for (int stage = 0; stage < n; ++stage) {
    emit_motion(ot, path, pts, order[stage], Point::at_vertex(stage),
                Rational(stage) / n, Rational(stage + 1) / n);
  }
  return path;
}

PlannedPath plan_unordered(const OrderedTree& ot, const Configuration& x,
                           const Configuration& y) {
  if (x.n() != y.n()) throw std::invalid_argument("configurations differ in point count");
  Configuration cx = x, cy = y;
  cx.ordered = cy.ordered = false;
  canonicalize(ot, cx);
  canonicalize(ot, cy);
  PlannedPath sx = canonical_path(ot, cx);
  PlannedPath sy = canonical_path(ot, cy);

  PlannedPath out;
  out.ordered = false;
  out.stratum_sum = stratum(ot, cx).second + stratum(ot, cy).second;
  for (const auto& f : sx.frames) out.frames.push_back({f.time / 2, f.points});
  for (auto it = sy.frames.rbegin(); it != sy.frames.rend(); ++it) {
    if (it == sy.frames.rbegin()) continue;  // shared hub frame
    out.frames.push_back({Rational(1) - it->time / 2, it->points});
  }
  return out;
}

namespace {

// Chain of vertices leaving v in the given direction.
std::vector<int> branch_chain(const OrderedTree& ot, int v, int dir, int len) {
  std::vector<int> chain;
  int prev = v;
  int cur = ot.neighbor_in_direction(v, dir);
  chain.push_back(cur);
  while (static_cast<int>(chain.size()) < len) {
    int next = -1;
    for (int w : ot.neighbors(cur)) {
      if (w != prev) {
        next = w;
        break;
      }
    }
    if (next < 0) throw std::logic_error("branch too short for parking maneuver");
    prev = cur;
    cur = next;
    chain.push_back(cur);
  }
  return chain;
}

struct ManeuverBuilder {
  const OrderedTree& ot;
  int n;
  std::vector<Point> pts;       // indexed by label
  std::vector<int> at;          // spine position -> label, -1 when vacant
  std::vector<int> moves_done = {};
  PlannedPath path;
  std::vector<std::pair<int, Point>> pending;  // (label, target) move list

  void move(int label, const Point& target) { pending.push_back({label, target}); }

  void flush() {
    const int total = static_cast<int>(pending.size());
    path.frames.push_back({0, pts});
    for (int i = 0; i < total; ++i) {
      emit_motion(ot, path, pts, pending[i].first, pending[i].second, Rational(i) / total,
                  Rational(i + 1) / total);
    }
  }
};

}  // namespace

PlannedPath permutation_path(const OrderedTree& ot, int n, const std::vector<int>& pi) {
  if (ot.essentials().empty())
    throw std::invalid_argument("permutation paths need an essential vertex");
  if (!sufficiently_subdivided(ot.tree(), n))
    throw std::invalid_argument("tree is not sufficiently subdivided for n");
  if (static_cast<int>(pi.size()) != n) throw std::invalid_argument("permutation size mismatch");
  {
    std::vector<int> check = pi;
    std::sort(check.begin(), check.end());
    for (int i = 0; i < n; ++i) {
      if (check[i] != i) throw std::invalid_argument("not a permutation");
    }
  }

  ManeuverBuilder mb{ot, n};
  mb.pts.resize(n);
  mb.at.resize(n);
  for (int i = 0; i < n; ++i) {
    mb.pts[i] = Point::at_vertex(i);
    mb.at[i] = i;
  }

  const int hub = ot.essentials().front();
  const auto b1 = branch_chain(ot, hub, 1, std::max(1, n - 1));
  const auto b2 = branch_chain(ot, hub, 2, 1);

  // Swap the tokens on spine positions p and p+1: clear everything above
  // into branch 1, route the upper token around via branch 2.
  auto swap_positions = [&](int p) {
    for (int j = n - 1; j >= p + 2; --j) mb.move(mb.at[j], Point::at_vertex(b1[j - p - 1]));
    mb.move(mb.at[p + 1], Point::at_vertex(b2[0]));
    mb.move(mb.at[p], Point::at_vertex(b1[0]));
    mb.move(mb.at[p + 1], Point::at_vertex(p));
    mb.move(mb.at[p], Point::at_vertex(p + 1));
    for (int j = p + 2; j <= n - 1; ++j) mb.move(mb.at[j], Point::at_vertex(j));
    std::swap(mb.at[p], mb.at[p + 1]);
  };

  // Selection sort from the top spine position down.
  std::vector<int> want = pi;
  for (int p = n - 1; p >= 1; --p) {
    int q = -1;
    for (int j = 0; j <= p; ++j) {
      if (mb.at[j] == want[p]) q = j;
    }
    if (q < 0) throw std::logic_error("label lost during maneuver");
    for (int j = q; j < p; ++j) swap_positions(j);
  }

  if (mb.pending.empty()) {
    mb.path.frames.push_back({0, mb.pts});
    mb.path.frames.push_back({1, mb.pts});
  } else {
    mb.flush();
  }
  mb.path.ordered = true;
  for (int i = 0; i < n; ++i) {
    if (mb.at[i] != pi[i]) throw std::logic_error("maneuver did not realize the permutation");
  }
  return mb.path;
}

namespace {

// Arrangement reached by the lifted canonical path: position i ends up
// holding the label whose start point has the i-th smallest f-value.
std::vector<int> arrival_arrangement(const OrderedTree& ot, const Configuration& x) {
  return f_order(ot, x.points);
}

void append_scaled(PlannedPath& out, const PlannedPath& part, const Rational& from,
                   const Rational& to, bool skip_first) {
  for (std::size_t i = skip_first ? 1 : 0; i < part.frames.size(); ++i) {
    out.frames.push_back({from + (to - from) * part.frames[i].time, part.frames[i].points});
  }
}

}  // namespace

PlannedPath plan_ordered(const OrderedTree& ot, const Configuration& x, const Configuration& y) {
  if (!x.ordered || !y.ordered) throw std::invalid_argument("plan_ordered needs ordered configurations");
  if (x.n() != y.n()) throw std::invalid_argument("configurations differ in point count");
  if (ot.essentials().empty())
    throw std::invalid_argument("ordered planning needs an essential vertex");
  const int n = x.n();

  PlannedPath sx = canonical_path(ot, x);
  PlannedPath sy = canonical_path(ot, y);
  const std::vector<int> alpha = arrival_arrangement(ot, x);
  const std::vector<int> beta = arrival_arrangement(ot, y);

  // Middle maneuver: from arrangement alpha to arrangement beta.  Relabel
  // the identity-based maneuver: realize pi with pi[i] = index j such that
  // alpha[j] = beta[i], then read labels through alpha.
  std::vector<int> alpha_pos(n);  // label -> position under alpha
  for (int i = 0; i < n; ++i) alpha_pos[alpha[i]] = i;
  std::vector<int> pi(n);
  for (int i = 0; i < n; ++i) pi[i] = alpha_pos[beta[i]];
  PlannedPath mid = permutation_path(ot, n, pi);
  // permutation_path moves position-identified tokens; translate to labels.
  for (auto& frame : mid.frames) {
    std::vector<Point> by_label(n);
    for (int token = 0; token < n; ++token) by_label[alpha[token]] = frame.points[token];
    frame.points = std::move(by_label);
  }

  PlannedPath out;
  out.ordered = true;
  out.stratum_sum = stratum(ot, x).second + stratum(ot, y).second;
  append_scaled(out, sx, 0, make_rational(1, 3), false);
  append_scaled(out, mid, make_rational(1, 3), make_rational(2, 3), true);
  PlannedPath ry = reverse_path(sy);
  append_scaled(out, ry, make_rational(2, 3), 1, true);
  return out;
}

PathValidation validate_path(const OrderedTree& ot, const PlannedPath& p) {
  PathValidation val;
  auto fail = [&](int frame, const std::string& why) {
    val.ok = false;
    val.frame = frame;
    val.violation = why;
    return val;
  };
  if (p.frames.empty()) return fail(-1, "empty path");
  if (p.frames.front().time != 0 || p.frames.back().time != 1)
    return fail(0, "path must run from time 0 to time 1");

  const int n = static_cast<int>(p.frames.front().points.size());
  for (int f = 0; f < static_cast<int>(p.frames.size()); ++f) {
    Configuration c{p.frames[f].points, true};
    if (static_cast<int>(p.frames[f].points.size()) != n)
      return fail(f, "keyframe changes the point count");
    if (!config_valid(ot, c)) return fail(f, "keyframe configuration is invalid");
  }

  for (int f = 0; f + 1 < static_cast<int>(p.frames.size()); ++f) {
    const auto& a = p.frames[f];
    const auto& b = p.frames[f + 1];
    if (!(a.time < b.time)) return fail(f, "keyframe times must increase");
    int mover = -1;
    for (int i = 0; i < n; ++i) {
      if (a.points[i] == b.points[i]) continue;
      if (mover >= 0) return fail(f, "two points move in one segment");
      mover = i;
    }
    if (mover < 0) continue;
    const Point& from = a.points[mover];
    const Point& to = b.points[mover];
    int edge = -1;
    if (!from.on_vertex && !to.on_vertex) {
      if (from.edge != to.edge) return fail(f, "segment spans two edges");
      edge = from.edge;
    } else if (!from.on_vertex) {
      edge = from.edge;
      const auto& e = ot.edge(edge);
      if (to.vertex != e.iota && to.vertex != e.tau) return fail(f, "segment leaves its edge");
    } else if (!to.on_vertex) {
      edge = to.edge;
      const auto& e = ot.edge(edge);
      if (from.vertex != e.iota && from.vertex != e.tau) return fail(f, "segment leaves its edge");
    } else {
      edge = ot.edge_between(from.vertex, to.vertex);
      if (edge < 0) return fail(f, "segment endpoints are not adjacent");
    }
    // The carrier of the mover sweeps the closed edge; it must avoid every
    // parked carrier for the whole open interval.
    const Point sweep = Point::on_edge(edge, make_rational(1, 2));
    for (int i = 0; i < n; ++i) {
      if (i == mover) continue;
      if (!carriers_disjoint(ot, sweep, a.points[i]))
        return fail(f, "moving point crosses a parked carrier");
    }
  }
  return val;
}

Configuration parse_configuration(const OrderedTree& ot, const std::string& text, bool ordered) {
  Configuration c;
  c.ordered = ordered;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item.rfind("v:", 0) == 0) {
      auto v = ot.vertex_by_id(item.substr(2));
      if (!v) throw ParseError("unknown vertex in configuration: " + item);
      c.points.push_back(Point::at_vertex(*v));
    } else if (item.rfind("e:", 0) == 0) {
      const auto at = item.find('@');
      const auto dash = item.find('-', 2);
      if (at == std::string::npos || dash == std::string::npos || dash > at)
        throw ParseError("bad edge point literal: " + item);
      auto u = ot.vertex_by_id(item.substr(2, dash - 2));
      auto w = ot.vertex_by_id(item.substr(dash + 1, at - dash - 1));
      if (!u || !w) throw ParseError("unknown edge in configuration: " + item);
      const int e = ot.edge_between(*u, *w);
      if (e < 0) throw ParseError("vertices not adjacent: " + item);
      const auto slash = item.find('/', at);
      if (slash == std::string::npos) throw ParseError("bad rational parameter: " + item);
      Rational t;
      try {
        t = Rational(BigInt(item.substr(at + 1, slash - at - 1)), BigInt(item.substr(slash + 1)));
      } catch (...) {
        throw ParseError("bad rational parameter: " + item);
      }
      if (*u != ot.edge(e).iota) t = Rational(1) - t;  // parameter measured from <id1>
      if (!(t > 0 && t < 1)) throw ParseError("edge parameter must lie in (0,1): " + item);
      c.points.push_back(Point::on_edge(e, t));
    } else {
      throw ParseError("bad point literal: " + item);
    }
  }
  if (!config_valid(ot, c)) throw ParseError("configuration points are not pairwise disjoint");
  if (!ordered) canonicalize(ot, c);
  return c;
}

std::string point_to_string(const OrderedTree& ot, const Point& p) {
  if (p.on_vertex) return "v:" + ot.id_of(p.vertex);
  const auto& e = ot.edge(p.edge);
  return "e:" + ot.id_of(e.iota) + "-" + ot.id_of(e.tau) + "@" + numerator(p.t).str() + "/" +
         denominator(p.t).str();
}

std::string configuration_to_string(const OrderedTree& ot, const Configuration& c) {
  std::string out;
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    if (i) out += ",";
    out += point_to_string(ot, c.points[i]);
  }
  return out;
}

}  // namespace braidscape
