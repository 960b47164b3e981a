#include "braidscape/tc.hpp"

#include "braidscape/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace braidscape {

const char* tc_case_name(TcCase c) {
  switch (c) {
    case TcCase::TrivialN1: return "trivial_n1";
    case TcCase::IntervalM0: return "interval_m0";
    case TcCase::Statement1: return "statement1";
    case TcCase::Case2a: return "case2a";
    case TcCase::Case2bEven: return "case2b_even";
    case TcCase::Case2bOdd: return "case2b_odd";
  }
  return "?";
}

const char* na_reason_name(NaReason r) {
  switch (r) {
    case NaReason::None: return "none";
    case NaReason::BelowStatement1Threshold: return "below_statement1_threshold";
    case NaReason::NoCase2Certificate: return "no_case2_certificate";
    case NaReason::ConnectivityFailure: return "connectivity_failure";
  }
  return "?";
}

namespace {

int mapped_vertex(const OrderedTree& from, const OrderedTree& to, int v) {
  auto hit = to.vertex_by_id(from.id_of(v));
  if (!hit) throw std::logic_error("vertex id lost during subdivision");
  return *hit;
}

OrientedArc map_arc(const OrderedTree& from, const OrderedTree& to, const OrientedArc& arc) {
  OrientedArc out;
  out.start_inside = arc.start_inside;
  out.end_inside = arc.end_inside;
  for (std::size_t i = 0; i + 1 < arc.path.size(); ++i) {
    Geodesic g = geodesic(to, Point::at_vertex(mapped_vertex(from, to, arc.path[i])),
                          Point::at_vertex(mapped_vertex(from, to, arc.path[i + 1])));
    if (out.path.empty()) out.path = g.vertices;
    else out.path.insert(out.path.end(), g.vertices.begin() + 1, g.vertices.end());
  }
  return out;
}

std::vector<int> map_vertices(const OrderedTree& from, const OrderedTree& to,
                              const std::vector<int>& vs) {
  std::vector<int> out;
  for (int v : vs) out.push_back(mapped_vertex(from, to, v));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

ArcCertificate map_certificate(const OrderedTree& from, const OrderedTree& to,
                               const ArcCertificate& cert) {
  ArcCertificate out = cert;
  out.arcs.clear();
  for (const auto& a : cert.arcs) out.arcs.push_back(map_arc(from, to, a));
  if (cert.arc0) out.arc0 = map_arc(from, to, *cert.arc0);
  out.V_targets = map_vertices(from, to, cert.V_targets);
  out.W_targets = map_vertices(from, to, cert.W_targets);
  out.Wp_targets = map_vertices(from, to, cert.Wp_targets);
  out.over3 = map_vertices(from, to, cert.over3);
  out.deg3 = map_vertices(from, to, cert.deg3);
  return out;
}

namespace {

struct CellBuilder {
  const OrderedTree& ot;
  std::vector<int> members;
  std::vector<int> edges;
  std::set<int> used_vertices;  // member vertices and edge endpoints

  void add_edge_at(int v, int dir) {
    if (dir >= ot.degree(v))
      throw std::runtime_error("certificate inconsistent with tree: missing direction");
    const int e = ot.edge_between(v, ot.neighbor_in_direction(v, dir));
    members.push_back(ot.V() + e);
    edges.push_back(e);
    if (!used_vertices.insert(ot.edge(e).iota).second ||
        !used_vertices.insert(ot.edge(e).tau).second)
      throw std::runtime_error("certificate inconsistent with tree: edge collision");
  }

  void add_vertex(int v) {
    if (!used_vertices.insert(v).second)
      throw std::runtime_error("certificate inconsistent with tree: vertex collision");
    members.push_back(v);
  }

  // Edge in direction 2 plus its direction-1 blocked witness (or the 3/2
  // pair used for the second cell at vertices of degree > 3).
  void add_pair(int v, int edge_dir, int witness_dir) {
    add_edge_at(v, edge_dir);
    add_vertex(ot.neighbor_in_direction(v, witness_dir));
  }

  // Minimal unused vertex in the cloud holding an arc endpoint; walks
  // inward along the arc when the endpoint sits on the removed edges
  // (the paper's "just beyond tau(e)" adjustment).
  void add_endpoint_vertex(const CloudSystem& cs, const OrientedArc& arc, bool initial) {
    std::vector<std::pair<bool, int>> probes;  // (is_vertex, vertex or edge id)
    const int last = static_cast<int>(arc.path.size()) - 1;
    if (initial) {
      if (!arc.start_inside) probes.push_back({true, arc.path[0]});
      for (int i = 0; i < last; ++i) {
        probes.push_back({false, ot.edge_between(arc.path[i], arc.path[i + 1])});
        probes.push_back({true, arc.path[i + 1]});
      }
    } else {
      if (!arc.end_inside) probes.push_back({true, arc.path[last]});
      for (int i = last; i > 0; --i) {
        probes.push_back({false, ot.edge_between(arc.path[i - 1], arc.path[i])});
        probes.push_back({true, arc.path[i - 1]});
      }
    }
    for (const auto& [is_vertex, id] : probes) {
      int comp = -1;
      if (is_vertex) {
        if (!cs.vertex_removed[id]) comp = cs.component_of(id);
      } else if (std::binary_search(cs.removed_edge.begin(), cs.removed_edge.end(), id)) {
        // endpoint on a cell edge: land just beyond tau(e)
        const int tau = ot.edge(id).tau;
        int child = -1;
        for (int w : ot.neighbors(tau)) {
          if (w != ot.parent(tau) && !cs.vertex_removed[w] && (child < 0 || w < child)) child = w;
        }
        if (child >= 0) comp = cs.component_of(child);
      } else {
        const auto& ed = ot.edge(id);
        if (!cs.vertex_removed[ed.iota]) comp = cs.component_of(ed.iota);
        else if (!cs.vertex_removed[ed.tau]) comp = cs.component_of(ed.tau);
      }
      if (comp < 0) continue;
      for (int v = 0; v < ot.V(); ++v) {
        if (cs.comp_of_vertex[v] == comp && !used_vertices.count(v)) {
          add_vertex(v);
          return;
        }
      }
    }
    throw std::runtime_error("certificate inconsistent with tree: no room for endpoint vertex");
  }

  void fill_to(int n) {
    for (int v = 0; v < ot.V() && static_cast<int>(members.size()) < n; ++v) {
      if (!used_vertices.count(v)) add_vertex(v);
    }
    if (static_cast<int>(members.size()) != n)
      throw std::runtime_error("certificate inconsistent with tree: cannot reach n members");
  }

  Cell finish(int n) {
    if (static_cast<int>(members.size()) != n)
      throw std::runtime_error("certificate inconsistent with tree: wrong member count");
    Cell c{members};
    std::sort(c.members.begin(), c.members.end());
    if (!cell_valid(ot, c))
      throw std::runtime_error("certificate inconsistent with tree: invalid cell");
    if (classify_cell(ot, c) != CellClass::Critical)
      throw std::runtime_error("certificate inconsistent with tree: constructed cell not critical");
    return c;
  }
};

std::vector<int> degree3_of(const OrderedTree& ot) {
  std::vector<int> out;
  for (int v : ot.essentials()) {
    if (ot.degree(v) == 3) out.push_back(v);
  }
  return out;
}

std::vector<int> over3_of(const OrderedTree& ot) {
  std::vector<int> out;
  for (int v : ot.essentials()) {
    if (ot.degree(v) > 3) out.push_back(v);
  }
  return out;
}

}  // namespace

std::pair<Cell, Cell> build_phi_psi(const OrderedTree& ot, int n, const ArcCertificate& cert) {
  CellBuilder phi{ot}, psi{ot};

  switch (cert.tag) {
    case ArcCaseTag::Statement1: {
      const auto& ess = ot.essentials();
      const int m = static_cast<int>(ess.size());
      if (n < 2 * m + cert.k) throw std::runtime_error("statement 1 needs n >= 2m+k");
      for (int v : ess) phi.add_pair(v, 2, 1);
      for (int v : ess) {
        if (ot.degree(v) == 3) psi.add_pair(v, 2, 1);
        else psi.add_pair(v, 3, 2);
      }
      CloudSystem phi_cs = cloud_system(ot, phi.edges);
      CloudSystem psi_cs = cloud_system(ot, psi.edges);
      for (const auto& arc : cert.arcs) {
        phi.add_endpoint_vertex(phi_cs, arc, true);
        psi.add_endpoint_vertex(psi_cs, arc, false);
      }
      phi.fill_to(n);
      psi.fill_to(n);
      break;
    }
    case ArcCaseTag::Case2a: {
      for (int v : cert.over3) {
        phi.add_pair(v, 2, 1);
        psi.add_pair(v, 3, 2);
      }
      const int half = static_cast<int>(cert.deg3.size()) / 2;
      for (int i = 0; i < half; ++i) phi.add_pair(cert.deg3[i], 2, 1);
      for (int i = half; i < 2 * half; ++i) psi.add_pair(cert.deg3[i], 2, 1);
      if (cert.epsilon == 1) {
        phi.add_vertex(0);
        psi.add_vertex(0);
      }
      break;
    }
    case ArcCaseTag::Case2bEven:
    case ArcCaseTag::Case2bOdd: {
      std::set<int> endpoints;
      for (const auto& arc : cert.arcs) {
        phi.add_pair(arc.path.front(), 2, 1);
        psi.add_pair(arc.path.back(), 2, 1);
        endpoints.insert(arc.path.front());
        endpoints.insert(arc.path.back());
      }
      for (int v : over3_of(ot)) {
        if (endpoints.count(v)) continue;
        phi.add_pair(v, 2, 1);
        psi.add_pair(v, 3, 2);
      }
      std::vector<int> shared;
      if (cert.tag == ArcCaseTag::Case2bEven) {
        shared = cert.V_targets;
      } else {
        shared = cert.Wp_targets;
        shared.insert(shared.end(), cert.W_targets.begin(), cert.W_targets.end());
      }
      std::sort(shared.begin(), shared.end());
      const int want = cert.q - cert.r_prime - cert.k;
      if (static_cast<int>(shared.size()) < want)
        throw std::runtime_error("certificate inconsistent with tree: target set too small");
      for (int i = 0; i < want; ++i) {
        phi.add_pair(shared[i], 2, 1);
        psi.add_pair(shared[i], 2, 1);
      }
      if (cert.tag == ArcCaseTag::Case2bOdd) {
        CloudSystem phi_cs = cloud_system(ot, phi.edges);
        CloudSystem psi_cs = cloud_system(ot, psi.edges);
        phi.add_endpoint_vertex(phi_cs, *cert.arc0, true);
        psi.add_endpoint_vertex(psi_cs, *cert.arc0, false);
      }
      break;
    }
  }
  return {phi.finish(n), psi.finish(n)};
}

void VerifyReport::pass(const std::string& what) { checks.push_back("ok: " + what); }
void VerifyReport::fail(const std::string& what) {
  ok = false;
  checks.push_back("FAIL: " + what);
}

VerifyReport verify_certificate(const OrderedTree& ot, int n, const TcCertificate& cert,
                                std::uint64_t cap) {
  VerifyReport rep;
  if (!cert.determined) {
    rep.fail("certificate is not a Determined outcome");
    return rep;
  }
  const int top = reduced_complex_dim(ot, n, cap);
  if (cert.value != 2 * top + 1) {
    rep.fail("value does not match 2*top_dim+1");
    return rep;
  }
  rep.pass("structural upper bound: top critical dimension " + std::to_string(top) +
           " gives TC <= " + std::to_string(2 * top + 1));

  if (top == 0) {
    if (cert.value == 1) rep.pass("contractible/interval case: TC = 1");
    else rep.fail("top dimension 0 but value != 1");
    return rep;
  }

  if (!cert.phi || !cert.psi) {
    rep.fail("missing witness cells");
    return rep;
  }
  const Cell& phi = *cert.phi;
  const Cell& psi = *cert.psi;
  if (!cell_valid(ot, phi) || !cell_valid(ot, psi)) {
    rep.fail("witness cells are not valid cells");
    return rep;
  }
  if (phi.n() != n || psi.n() != n) {
    rep.fail("witness cells have the wrong point count");
    return rep;
  }
  if (cell_dim(ot, phi) != top || cell_dim(ot, psi) != top) {
    rep.fail("witness cells are not top-dimensional");
    return rep;
  }
  if (classify_cell(ot, phi) != CellClass::Critical) rep.fail("phi is not critical");
  else rep.pass("phi is critical");
  if (classify_cell(ot, psi) != CellClass::Critical) rep.fail("psi is not critical");
  else rep.pass("psi is critical");
  if (!rep.ok) return rep;

  const auto phi_factors = one_cell_factors(ot, cloud_diagram(ot, phi));
  const auto psi_factors = one_cell_factors(ot, cloud_diagram(ot, psi));
  bool distinct = true;
  for (const auto& f : phi_factors) {
    for (const auto& g : psi_factors) distinct = distinct && !(f == g);
  }
  if (!distinct) {
    rep.fail("factor classes of phi and psi are not pairwise distinct");
    return rep;
  }
  rep.pass("the 2k one-cell factor classes are pairwise distinct");

  if (!cert.phi_factors.empty() && cert.phi_factors != phi_factors)
    rep.fail("recorded phi factors do not match the cell");
  if (!cert.psi_factors.empty() && cert.psi_factors != psi_factors)
    rep.fail("recorded psi factors do not match the cell");
  if (!rep.ok) return rep;

  Basis B = compute_basis(ot, n, cap);
  if (B.top_dim != top) {
    rep.fail("basis top dimension disagrees with reduced complex dimension");
    return rep;
  }
  auto phi_id = B.find(cloud_diagram(ot, phi));
  auto psi_id = B.find(cloud_diagram(ot, psi));
  if (!phi_id || !psi_id) {
    rep.fail("witness classes missing from the critical-cocycle basis");
    return rep;
  }
  std::vector<int> ids = B.factors[*phi_id];
  ids.insert(ids.end(), B.factors[*psi_id].begin(), B.factors[*psi_id].end());
  TensorElement acc = tensor_single(B.unit, B.unit);
  for (int id : ids) acc = tensor_multiply(ot, B, acc, zero_divisor(B, id));
  if (acc.zero()) {
    rep.fail("zero-divisor product of the factor classes vanishes");
    return rep;
  }
  rep.pass("nonzero product of " + std::to_string(ids.size()) +
           " zero-divisors certifies TC >= " + std::to_string(ids.size() + 1));

  if (cert.lower_bound != 2 * top) rep.fail("recorded lower bound mismatch");
  if (cert.upper_bound != 2 * top + 1) rep.fail("recorded upper bound mismatch");
  if (cert.arc_cert) {
    std::string why;
    if (!check_certificate(ot, *cert.arc_cert, &why)) rep.fail("arc certificate: " + why);
    else rep.pass("arc certificate re-verified");
  }
  return rep;
}

TcResult decide_tc(const Tree& input, int n, const TcOptions& opts) {
  if (n < 1) throw ParseError("n must be >= 1");
  input.validate();

  TcResult res;
  res.n = n;
  res.subdivided = subdivide_for(input, n);
  OrderedTree ot_in = order_vertices(input);
  OrderedTree ot = order_vertices(res.subdivided);
  const TreeStats st = tree_stats(ot_in);
  const ConnectivityReport conn = connectivity(ot, n);

  TcCertificate& cert = res.cert;
  cert.applies_unordered = true;
  cert.applies_ordered = conn.ordered_connected;
  cert.ordered_note = conn.note;

  if (n == 1) {
    cert.determined = true;
    cert.value = 1;
    cert.tc_case = TcCase::TrivialN1;
    cert.top_dim = 0;
    cert.lower_bound = 0;
    cert.upper_bound = 1;
    cert.diagnostics = "one point on a contractible space";
    return res;
  }
  if (st.m == 0) {
    cert.determined = true;
    cert.value = 1;
    cert.tc_case = TcCase::IntervalM0;
    cert.top_dim = 0;
    cert.lower_bound = 0;
    cert.upper_bound = 1;
    if (!conn.ordered_connected) cert.reason = NaReason::ConnectivityFailure;
    cert.diagnostics = "no essential vertices: unordered configuration space is contractible";
    return res;
  }

  MinAllowableResult mk;
  if (st.s > 0) mk = min_allowable_k(ot_in, opts.arc_caps);

  std::optional<ArcCertificate> arc_cert;
  if (n >= 2 * st.m + mk.k) {
    ArcCertificate c;
    c.tag = ArcCaseTag::Statement1;
    c.n = n;
    c.k = mk.k;
    c.arcs = mk.arcs;
    c.V_targets = degree3_of(ot_in);
    arc_cert = c;
    cert.tc_case = TcCase::Statement1;
    cert.value = 2 * st.m + 1;
  } else if (n < 2 * st.m) {
    if (auto c = find_case2a(ot_in, n)) {
      arc_cert = c;
      cert.tc_case = TcCase::Case2a;
      cert.value = 2 * (n / 2) + 1;
    } else if (auto c2 = find_case2b(ot_in, n, n % 2, opts.arc_caps)) {
      arc_cert = c2;
      cert.tc_case = c2->tag == ArcCaseTag::Case2bEven ? TcCase::Case2bEven : TcCase::Case2bOdd;
      cert.value = 2 * (n / 2) + 1;
    } else {
      cert.determined = false;
      cert.reason = NaReason::NoCase2Certificate;
      cert.top_dim = reduced_complex_dim(ot, n, opts.cell_cap);
      cert.upper_bound = 2 * cert.top_dim + 1;
      cert.lower_bound = zdcl_lower_bound(ot, n, opts.cell_cap);
      std::ostringstream os;
      os << "n=" << n << " < 2m=" << 2 * st.m << ", s=" << st.s << " < 2(q-r)="
         << 2 * (n / 2 - st.r) << ", and no qualifying arc collection exists";
      cert.diagnostics = os.str();
      return res;
    }
  } else {
    cert.determined = false;
    cert.reason = NaReason::BelowStatement1Threshold;
    cert.top_dim = reduced_complex_dim(ot, n, opts.cell_cap);
    cert.upper_bound = 2 * cert.top_dim + 1;
    cert.lower_bound = zdcl_lower_bound(ot, n, opts.cell_cap);
    std::ostringstream os;
    os << "2m=" << 2 * st.m << " <= n=" << n << " < 2m+k=" << 2 * st.m + mk.k
       << ": the methods cannot close this gap";
    cert.diagnostics = os.str();
    return res;
  }

  cert.determined = true;
  cert.arc_cert = map_certificate(ot_in, ot, *arc_cert);
  auto [phi, psi] = build_phi_psi(ot, n, *cert.arc_cert);
  cert.phi = phi;
  cert.psi = psi;
  cert.phi_factors = one_cell_factors(ot, cloud_diagram(ot, phi));
  cert.psi_factors = one_cell_factors(ot, cloud_diagram(ot, psi));
  cert.top_dim = (cert.value - 1) / 2;
  cert.lower_bound = cert.value - 1;
  cert.upper_bound = cert.value;

  VerifyReport rep = verify_certificate(ot, n, cert, opts.cell_cap);
  if (!rep.ok) {
    std::string lines;
    for (const auto& l : rep.checks) lines += l + "\n";
    throw std::logic_error("internal certificate verification failed:\n" + lines);
  }
  return res;
}

}  // namespace braidscape
