#include "braidscape/arcs.hpp"

#include "braidscape/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace braidscape {

bool arc_covers(const OrientedArc& a, int v) {
  const int last = static_cast<int>(a.path.size()) - 1;
  for (int i = 0; i <= last; ++i) {
    if (a.path[i] != v) continue;
    if (i == 0 && a.start_inside) return false;
    if (i == last && a.end_inside) return false;
    return true;
  }
  return false;
}

bool arc_endpoint(const OrientedArc& a, int v) {
  const int last = static_cast<int>(a.path.size()) - 1;
  return (!a.start_inside && a.path[0] == v) || (!a.end_inside && a.path[last] == v);
}

bool arc_interior(const OrientedArc& a, int v) {
  const int last = static_cast<int>(a.path.size()) - 1;
  for (int i = 1; i < last; ++i) {
    if (a.path[i] == v) return true;
  }
  return false;
}

std::vector<long> eta(const OrderedTree& ot, const std::vector<OrientedArc>& arcs, int v) {
  if (v == 0) throw std::invalid_argument("directions are undefined at the base vertex");
  std::vector<long> sums(ot.degree(v), 0);
  for (const auto& a : arcs) {
    const int last = static_cast<int>(a.path.size()) - 1;
    for (int i = 0; i <= last; ++i) {
      if (a.path[i] != v) continue;
      if (i == 0 && a.start_inside) break;   // v is not on the arc
      if (i == last && a.end_inside) break;
      if (i > 0) sums[ot.direction_of_neighbor(v, a.path[i - 1])] += 1;   // oriented toward v
      if (i < last) sums[ot.direction_of_neighbor(v, a.path[i + 1])] -= 1;  // oriented away
      break;  // reduced paths hit a vertex at most once
    }
  }
  return sums;
}

bool is_allowable(const OrderedTree& ot, const std::vector<OrientedArc>& arcs,
                  const std::vector<int>& targets) {
  for (int v : targets) {
    if (v == 0) throw std::invalid_argument("the base vertex cannot be a target");
    bool endpoint = false;
    for (const auto& a : arcs) endpoint = endpoint || arc_endpoint(a, v);
    if (endpoint) return false;
    bool nonzero = false;
    for (long e : eta(ot, arcs, v)) nonzero = nonzero || e != 0;
    if (!nonzero) return false;
  }
  return true;
}

namespace {

// Canonical endpoint: a vertex or the midpoint of an edge.
struct PPoint {
  bool is_vertex;
  int id;  // vertex number or edge id
};

Point as_point(const PPoint& p) {
  return p.is_vertex ? Point::at_vertex(p.id) : Point::on_edge(p.id, make_rational(1, 2));
}

OrientedArc arc_between(const OrderedTree& ot, const PPoint& p, const PPoint& q) {
  Geodesic g = geodesic(ot, as_point(p), as_point(q));
  OrientedArc arc;
  arc.path = g.vertices;
  if (!p.is_vertex) {
    const auto& e = ot.edge(p.id);
    const int exit = arc.path.front();
    arc.path.insert(arc.path.begin(), exit == e.iota ? e.tau : e.iota);
    arc.start_inside = true;
  }
  if (!q.is_vertex) {
    const auto& e = ot.edge(q.id);
    const int exit = arc.path.back();
    arc.path.push_back(exit == e.iota ? e.tau : e.iota);
    arc.end_inside = true;
  }
  return arc;
}

}  // namespace

std::vector<OrientedArc> canonical_arcs(const OrderedTree& ot) {
  std::vector<PPoint> points;
  for (int v = 0; v < ot.V(); ++v) points.push_back({true, v});
  for (int e = 0; e < ot.E(); ++e) points.push_back({false, e});

  std::vector<OrientedArc> arcs;
  for (const auto& p : points) {
    for (const auto& q : points) {
      if (p.is_vertex == q.is_vertex && p.id == q.id) continue;
      arcs.push_back(arc_between(ot, p, q));
    }
  }
  return arcs;
}

namespace {

std::vector<int> degree3_vertices(const OrderedTree& ot) {
  std::vector<int> out;
  for (int v : ot.essentials()) {
    if (ot.degree(v) == 3) out.push_back(v);
  }
  return out;
}

std::vector<int> over3_vertices(const OrderedTree& ot) {
  std::vector<int> out;
  for (int v : ot.essentials()) {
    if (ot.degree(v) > 3) out.push_back(v);
  }
  return out;
}

}  // namespace

MinAllowableResult min_allowable_k(const OrderedTree& ot, const ArcSearchCaps& caps) {
  const std::vector<int> targets = degree3_vertices(ot);
  if (targets.empty()) return {0, {}};

  const std::vector<OrientedArc> arcs = canonical_arcs(ot);
  const int A = static_cast<int>(arcs.size());
  std::uint64_t tested = 0;

  // Multisets of arcs, lexicographic by index; k never exceeds s because
  // one short arc through each degree-3 vertex is always allowable.
  const int s = static_cast<int>(targets.size());
  std::vector<int> pick;
  std::vector<OrientedArc> collection;
  std::function<bool(int, int)> search = [&](int from, int left) -> bool {
    if (left == 0) {
      if (++tested > caps.max_collections)
        throw SearchBoundExceeded("arc collection search budget exceeded");
      return is_allowable(ot, collection, targets);
    }
    for (int i = from; i < A; ++i) {
      collection.push_back(arcs[i]);
      if (search(i, left - 1)) return true;
      collection.pop_back();
    }
    return false;
  };
  for (int k = 1; k <= s; ++k) {
    collection.clear();
    if (search(0, k)) return {k, collection};
  }
  throw std::logic_error("no allowable collection of size <= s found");
}

std::optional<ArcCertificate> find_case2a(const OrderedTree& ot, int n) {
  TreeStats st = tree_stats(ot);
  const int q = n / 2;
  if (q < 1 || n >= 2 * st.m) throw std::invalid_argument("case 2 requires 1 <= q, n < 2m");
  if (st.s < 2 * (q - st.r)) return std::nullopt;

  ArcCertificate cert;
  cert.tag = ArcCaseTag::Case2a;
  cert.n = n;
  cert.q = q;
  cert.epsilon = n % 2;
  cert.k = 0;
  cert.r_prime = st.r;
  const int R = std::min(st.r, q);
  auto over3 = over3_vertices(ot);
  cert.over3.assign(over3.begin(), over3.begin() + R);
  if (st.r < q) {
    auto deg3 = degree3_vertices(ot);
    cert.deg3.assign(deg3.begin(), deg3.begin() + 2 * (q - st.r));
  }
  return cert;
}

namespace {

struct EvenSearchOutcome {
  std::vector<OrientedArc> arcs;
  int k = 0;
  int r_prime = 0;
  std::vector<int> targets;
};

// Collections of k oriented essential-to-essential geodesics with mutually
// distinct endpoints avoiding `forbidden`; returns the first for which the
// allowable degree-3 set is large enough.
std::optional<EvenSearchOutcome> search_even_arcs(const OrderedTree& ot, int q, int s_prime,
                                                  const std::vector<int>& forbidden,
                                                  const ArcSearchCaps& caps,
                                                  std::uint64_t& tested) {
  const auto& ess = ot.essentials();
  std::vector<OrientedArc> candidates;
  for (int a : ess) {
    for (int b : ess) {
      if (a == b) continue;
      if (std::binary_search(forbidden.begin(), forbidden.end(), a) ||
          std::binary_search(forbidden.begin(), forbidden.end(), b))
        continue;
      Geodesic g = geodesic(ot, Point::at_vertex(a), Point::at_vertex(b));
      candidates.push_back(OrientedArc{g.vertices, false, false});
    }
  }
  const int A = static_cast<int>(candidates.size());
  const auto over3 = over3_vertices(ot);
  const auto deg3 = degree3_vertices(ot);

  const int kmax = static_cast<int>(ess.size()) / 2;
  std::vector<int> pick;
  std::function<std::optional<EvenSearchOutcome>(int, int)> search =
      [&](int from, int left) -> std::optional<EvenSearchOutcome> {
    if (left == 0) {
      if (++tested > caps.max_collections)
        throw SearchBoundExceeded("arc collection search budget exceeded");
      std::set<int> endpoints;
      for (int i : pick) {
        endpoints.insert(candidates[i].path.front());
        endpoints.insert(candidates[i].path.back());
      }
      std::vector<OrientedArc> arcs;
      for (int i : pick) arcs.push_back(candidates[i]);
      int r_prime = 0;
      for (int v : over3) r_prime += endpoints.count(v) ? 0 : 1;
      std::vector<int> good;
      for (int v : deg3) {
        if (endpoints.count(v)) continue;
        if (std::binary_search(forbidden.begin(), forbidden.end(), v)) continue;
        bool nonzero = false;
        for (long e : eta(ot, arcs, v)) nonzero = nonzero || e != 0;
        if (nonzero) good.push_back(v);
      }
      const int k = static_cast<int>(pick.size());
      if (static_cast<int>(good.size()) >= q - r_prime - k - s_prime) {
        return EvenSearchOutcome{arcs, k, r_prime, good};
      }
      return std::nullopt;
    }
    for (int i = from; i < A; ++i) {
      bool clash = false;
      for (int j : pick) {
        const auto& p = candidates[j].path;
        const auto& c = candidates[i].path;
        if (p.front() == c.front() || p.front() == c.back() || p.back() == c.front() ||
            p.back() == c.back()) {
          clash = true;
          break;
        }
      }
      if (clash) continue;
      pick.push_back(i);
      if (auto hit = search(i + 1, left - 1)) return hit;
      pick.pop_back();
    }
    return std::nullopt;
  };

  for (int k = 1; k <= kmax; ++k) {
    pick.clear();
    if (auto hit = search(0, k)) return hit;
  }
  return std::nullopt;
}

}  // namespace

std::optional<ArcCertificate> find_case2b(const OrderedTree& ot, int n, int epsilon,
                                          const ArcSearchCaps& caps) {
  TreeStats st = tree_stats(ot);
  const int q = n / 2;
  if (q < 1) throw std::invalid_argument("case 2 requires q >= 1");
  if (st.s >= 2 * (q - st.r)) throw std::invalid_argument("case 2b requires s < 2(q-r)");
  if (epsilon != n % 2) throw std::invalid_argument("epsilon must match n");

  std::uint64_t tested = 0;

  if (epsilon == 0) {
    auto hit = search_even_arcs(ot, q, 0, {}, caps, tested);
    if (!hit) return std::nullopt;
    ArcCertificate cert;
    cert.tag = ArcCaseTag::Case2bEven;
    cert.n = n;
    cert.q = q;
    cert.epsilon = 0;
    cert.k = hit->k;
    cert.r_prime = hit->r_prime;
    cert.arcs = hit->arcs;
    cert.V_targets = hit->targets;
    return cert;
  }

  // epsilon = 1: an arc A_0 whose interior carries W', then (if s' < q-r)
  // arcs as in the even case avoiding W'.  Conditions depend on A_0 only
  // through W', so failures are memoized per W' choice.
  const auto deg3 = degree3_vertices(ot);
  std::map<std::vector<int>, bool> wprime_failed;
  for (const OrientedArc& a0 : canonical_arcs(ot)) {
    std::vector<int> interior3;
    for (int v : deg3) {
      if (arc_interior(a0, v)) interior3.push_back(v);
    }
    const int count = static_cast<int>(interior3.size());
    if (count > 20) throw SearchBoundExceeded("too many W' subsets to enumerate");
    const int subsets = 1 << count;
    if (subsets > caps.max_wprime_choices)
      throw SearchBoundExceeded("too many W' subsets to enumerate");
    for (int mask = 0; mask < subsets; ++mask) {
      std::vector<int> wp;
      for (int b = 0; b < count; ++b) {
        if (mask & (1 << b)) wp.push_back(interior3[b]);
      }
      const int s_prime = static_cast<int>(wp.size());
      if (s_prime > q) continue;
      if (s_prime >= q - st.r) {
        ArcCertificate cert;
        cert.tag = ArcCaseTag::Case2bOdd;
        cert.n = n;
        cert.q = q;
        cert.epsilon = 1;
        cert.k = 0;
        cert.r_prime = st.r;
        cert.s_prime = s_prime;
        cert.arc0 = a0;
        cert.Wp_targets = wp;
        return cert;
      }
      auto memo = wprime_failed.find(wp);
      if (memo != wprime_failed.end() && memo->second) continue;
      auto hit = search_even_arcs(ot, q, s_prime, wp, caps, tested);
      if (!hit) {
        wprime_failed[wp] = true;
        continue;
      }
      ArcCertificate cert;
      cert.tag = ArcCaseTag::Case2bOdd;
      cert.n = n;
      cert.q = q;
      cert.epsilon = 1;
      cert.k = hit->k;
      cert.r_prime = hit->r_prime;
      cert.s_prime = s_prime;
      cert.arcs = hit->arcs;
      cert.arc0 = a0;
      cert.Wp_targets = wp;
      cert.W_targets = hit->targets;
      return cert;
    }
  }
  return std::nullopt;
}

bool check_certificate(const OrderedTree& ot, const ArcCertificate& cert, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  TreeStats st = tree_stats(ot);
  const auto deg3 = degree3_vertices(ot);

  switch (cert.tag) {
    case ArcCaseTag::Statement1: {
      if (static_cast<int>(cert.arcs.size()) != cert.k) return fail("k mismatch");
      if (cert.V_targets != deg3) return fail("statement 1 targets all degree-3 vertices");
      if (!is_allowable(ot, cert.arcs, cert.V_targets)) return fail("collection not allowable");
      return true;
    }
    case ArcCaseTag::Case2a: {
      if (st.s < 2 * (cert.q - st.r)) return fail("s >= 2(q-r) fails");
      const int R = std::min(st.r, cert.q);
      if (static_cast<int>(cert.over3.size()) != R) return fail("wrong degree->3 vertex count");
      for (int v : cert.over3) {
        if (ot.degree(v) <= 3) return fail("chosen vertex is not of degree > 3");
      }
      const int extra = st.r < cert.q ? 2 * (cert.q - st.r) : 0;
      if (static_cast<int>(cert.deg3.size()) != extra) return fail("wrong degree-3 vertex count");
      for (int v : cert.deg3) {
        if (ot.degree(v) != 3) return fail("chosen vertex is not of degree 3");
      }
      return true;
    }
    case ArcCaseTag::Case2bEven:
    case ArcCaseTag::Case2bOdd: {
      if (st.s >= 2 * (cert.q - st.r)) return fail("case 2b requires s < 2(q-r)");
      std::set<int> endpoints;
      for (const auto& a : cert.arcs) {
        if (a.start_inside || a.end_inside) return fail("arc endpoints must be vertices");
        int u = a.path.front(), v = a.path.back();
        if (!ot.essential(u) || !ot.essential(v) || u == v)
          return fail("arc endpoints must be distinct essential vertices");
        if (!endpoints.insert(u).second || !endpoints.insert(v).second)
          return fail("arcs share an endpoint");
      }
      if (static_cast<int>(cert.arcs.size()) != cert.k) return fail("k mismatch");
      int r_prime = 0;
      for (int v : over3_vertices(ot)) r_prime += endpoints.count(v) ? 0 : 1;
      if (r_prime != cert.r_prime) return fail("r' mismatch");

      if (cert.tag == ArcCaseTag::Case2bEven) {
        if (cert.k < 1) return fail("even case needs k >= 1");
        if (static_cast<int>(cert.V_targets.size()) < cert.q - cert.r_prime - cert.k)
          return fail("V too small");
        for (int v : cert.V_targets) {
          if (ot.degree(v) != 3) return fail("V must contain degree-3 vertices");
          if (endpoints.count(v)) return fail("V vertex is an arc endpoint");
        }
        if (!is_allowable(ot, cert.arcs, cert.V_targets)) return fail("collection not allowable");
        return true;
      }

      if (!cert.arc0) return fail("odd case needs A_0");
      if (static_cast<int>(cert.Wp_targets.size()) != cert.s_prime) return fail("s' mismatch");
      if (cert.s_prime > cert.q) return fail("s' exceeds q");
      for (int v : cert.Wp_targets) {
        if (ot.degree(v) != 3) return fail("W' must contain degree-3 vertices");
        if (!arc_interior(*cert.arc0, v)) return fail("W' vertex not interior to A_0");
      }
      if (cert.s_prime >= cert.q - st.r) {
        if (cert.k != 0) return fail("k must be 0 when s' >= q-r");
        return true;
      }
      if (cert.k < 1) return fail("odd case with s' < q-r needs arcs");
      for (int v : cert.Wp_targets) {
        if (endpoints.count(v)) return fail("arc endpoint lies in W'");
      }
      std::set<int> wp(cert.Wp_targets.begin(), cert.Wp_targets.end());
      if (static_cast<int>(cert.W_targets.size()) < cert.q - cert.r_prime - cert.k - cert.s_prime)
        return fail("W too small");
      for (int v : cert.W_targets) {
        if (ot.degree(v) != 3) return fail("W must contain degree-3 vertices");
        if (wp.count(v)) return fail("W meets W'");
        if (endpoints.count(v)) return fail("W vertex is an arc endpoint");
      }
      if (!is_allowable(ot, cert.arcs, cert.W_targets)) return fail("collection not allowable");
      return true;
    }
  }
  return fail("unknown certificate tag");
}

}  // namespace braidscape
