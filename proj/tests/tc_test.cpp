#include <doctest.h>

#include "braidscape/tc.hpp"
#include "support.hpp"

#include <algorithm>

using namespace braidscape;
using namespace braidscape::testing;

TEST_CASE("decide: one point or no essential vertices gives TC = 1") {
  {
    TcResult r = decide_tc(y_tree(), 1);
    CHECK(r.cert.determined);
    CHECK(r.cert.value == 1);
    CHECK(r.cert.applies_ordered);
  }
  {
    TcResult r = decide_tc(path_tree(2), 3);
    CHECK(r.cert.determined);
    CHECK(r.cert.value == 1);
    CHECK(r.cert.applies_unordered);
    CHECK_FALSE(r.cert.applies_ordered);  // interval: ordered space disconnected
    CHECK(r.cert.reason == NaReason::ConnectivityFailure);
  }
}

TEST_CASE("decide: star with a degree-5 center") {
  TcResult r = decide_tc(star_tree(4), 2);
  CHECK(r.cert.determined);
  CHECK(r.cert.value == 3);
  CHECK(r.cert.tc_case == TcCase::Statement1);  // s = 0, so k = 0
}

TEST_CASE("decide: Y across the gap") {
  {
    TcResult r = decide_tc(y_tree(), 3);
    CHECK(r.cert.determined);
    CHECK(r.cert.value == 3);
    CHECK(r.cert.tc_case == TcCase::Statement1);
    CHECK(r.cert.lower_bound == 2);
    CHECK(r.cert.upper_bound == 3);
  }
  {
    TcResult r = decide_tc(y_tree(), 2);
    CHECK_FALSE(r.cert.determined);
    CHECK(r.cert.reason == NaReason::BelowStatement1Threshold);
  }
}

TEST_CASE("decide: H-tree across its whole range") {
  auto value = [](int n) {
    TcResult r = decide_tc(h_tree(), n);
    return r.cert.determined ? r.cert.value : -1;
  };
  CHECK(value(2) == 3);
  CHECK(value(3) == 3);
  CHECK(value(4) == -1);
  CHECK(value(5) == 5);
  CHECK(value(6) == 5);
  CHECK(value(7) == 5);
}

TEST_CASE("decide: caterpillar-4 at n=6 through case 2b") {
  TcResult r = decide_tc(caterpillar_tree(4), 6);
  CHECK(r.cert.determined);
  CHECK(r.cert.value == 7);
  CHECK(r.cert.tc_case == TcCase::Case2bEven);
}

TEST_CASE("decide: the pinch invariant holds on every Determined outcome") {
  for (const auto& [t, n] : std::vector<std::pair<Tree, int>>{{y_tree(), 3},
                                                              {h_tree(), 2},
                                                              {h_tree(), 5},
                                                              {star_tree(3), 4},
                                                              {caterpillar_tree(4), 6}}) {
    TcResult r = decide_tc(t, n);
    REQUIRE(r.cert.determined);
    CHECK(r.cert.lower_bound + 1 == r.cert.value);
    CHECK(r.cert.upper_bound == r.cert.value);
    CHECK(2 * r.cert.top_dim + 1 == r.cert.value);
  }
}

TEST_CASE("decide: further subdivision never changes the outcome") {
  for (const auto& [t, n] : std::vector<std::pair<Tree, int>>{
           {y_tree(), 3}, {h_tree(), 4}, {h_tree(), 5}, {star_tree(4), 3}}) {
    TcResult a = decide_tc(t, n);
    TcResult b = decide_tc(subdivide_for(t, n + 3), n);
    CHECK(a.cert.determined == b.cert.determined);
    CHECK(a.cert.value == b.cert.value);
    CHECK(a.cert.reason == b.cert.reason);
  }
}

TEST_CASE("build: statement-1 style cells at n = 2m") {
  // the construction itself stays critical at the threshold, even though
  // the theorem needs n >= 2m+k to apply
  OrderedTree ot(subdivide_for(h_tree(), 4));
  ArcCertificate cert;
  cert.tag = ArcCaseTag::Statement1;
  cert.n = 4;
  cert.k = 0;
  auto [phi, psi] = build_phi_psi(ot, 4, cert);
  CHECK(cell_dim(ot, phi) == 2);
  CHECK(cell_dim(ot, psi) == 2);
  CHECK(cell_vertices(ot, phi).size() == 2);
  CHECK(classify_cell(ot, phi) == CellClass::Critical);
  CHECK(classify_cell(ot, psi) == CellClass::Critical);
}

TEST_CASE("build: Y at n=3 puts the endpoint vertices in different clouds") {
  TcResult r = decide_tc(y_tree(), 3);
  OrderedTree ot(r.subdivided);
  REQUIRE(r.cert.phi);
  REQUIRE(r.cert.psi);
  CHECK_FALSE(*r.cert.phi == *r.cert.psi);
  CHECK_FALSE(cloud_diagram(ot, *r.cert.phi) == cloud_diagram(ot, *r.cert.psi));
}

TEST_CASE("build: odd cases carry the extra blocked vertex") {
  {
    TcResult r = decide_tc(h_tree(), 3);  // case 2a with epsilon = 1 adds the base
    REQUIRE(r.cert.determined);
    OrderedTree ot(r.subdivided);
    REQUIRE(r.cert.phi);
    auto verts = cell_vertices(ot, *r.cert.phi);
    CHECK(std::find(verts.begin(), verts.end(), 0) != verts.end());
  }
  {
    TcResult r = decide_tc(caterpillar_tree(4), 7);  // case 2b odd: x and x'
    REQUIRE(r.cert.determined);
    CHECK(r.cert.tc_case == TcCase::Case2bOdd);
    CHECK(r.cert.value == 7);
    OrderedTree ot(r.subdivided);
    CHECK(r.cert.phi->n() == 7);
    CHECK(cell_dim(ot, *r.cert.phi) == 3);
  }
}

TEST_CASE("decide: statement 1 with mixed degree-3 and degree-4 vertices") {
  // the second witness cell uses the direction-3 edge at the thick vertex
  Tree t = parse_tree(R"({"vertices":["b","u","u1","u2","v","v1","t"],"base":"b",
    "rotation":{"b":["u"],"u":["b","u1","u2","v"],"u1":["u"],"u2":["u"],
                "v":["u","v1","t"],"v1":["v"],"t":["v"]}})");
  TcResult r = decide_tc(t, 5);
  REQUIRE(r.cert.determined);
  CHECK(r.cert.value == 5);
  CHECK(r.cert.tc_case == TcCase::Statement1);
  OrderedTree ot(r.subdivided);
  CHECK_FALSE(cloud_diagram(ot, *r.cert.phi) == cloud_diagram(ot, *r.cert.psi));
}

TEST_CASE("decide: NotApplicable outcomes leave no disjoint critical pair") {
  for (const auto& [t, n] : std::vector<std::pair<Tree, int>>{
           {y_tree(), 2}, {h_tree(), 4}, {caterpillar_tree(3), 6}}) {
    TcResult r = decide_tc(t, n);
    REQUIRE_FALSE(r.cert.determined);
    OrderedTree ot(r.subdivided);
    const int k = reduced_complex_dim(ot, n);
    CHECK_FALSE(search_disjoint_critical_pair(ot, n, k).has_value());
  }
}

TEST_CASE("verify: a valid certificate passes and tampering fails") {
  TcResult r = decide_tc(h_tree(), 2);
  OrderedTree ot(r.subdivided);
  {
    VerifyReport rep = verify_certificate(ot, 2, r.cert);
    CHECK(rep.ok);
  }
  {
    TcCertificate bad = r.cert;
    bad.psi = bad.phi;  // factor collections no longer disjoint
    bad.psi_factors = bad.phi_factors;
    VerifyReport rep = verify_certificate(ot, 2, bad);
    CHECK_FALSE(rep.ok);
  }
  {
    TcCertificate bad = r.cert;
    REQUIRE(!bad.phi_factors.empty());
    bad.phi_factors[0].clouds[0].second += 1;  // tampered cloud value
    VerifyReport rep = verify_certificate(ot, 2, bad);
    CHECK_FALSE(rep.ok);
  }
  {
    TcCertificate bad = r.cert;
    bad.value = 5;  // wrong pinch
    VerifyReport rep = verify_certificate(ot, 2, bad);
    CHECK_FALSE(rep.ok);
  }
}

TEST_CASE("certificate mapping: arcs survive subdivision") {
  OrderedTree in(y_tree());
  MinAllowableResult mk = min_allowable_k(in);
  REQUIRE(mk.k == 1);
  OrderedTree sub(subdivide_for(y_tree(), 5));
  ArcCertificate cert;
  cert.tag = ArcCaseTag::Statement1;
  cert.k = 1;
  cert.arcs = mk.arcs;
  for (int v : in.essentials()) {
    if (in.degree(v) == 3) cert.V_targets.push_back(v);
  }
  ArcCertificate mapped = map_certificate(in, sub, cert);
  std::string why;
  CHECK(check_certificate(sub, mapped, &why));
}
