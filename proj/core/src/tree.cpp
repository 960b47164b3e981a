#include "braidscape/tree.hpp"

#include "braidscape/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

namespace braidscape {

namespace {

bool valid_id(const std::string& id) {
  if (id.empty()) return false;
  for (char c : id) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.')) return false;
  }
  return true;
}

long long pair_key(int a, int b, int v) {
  return static_cast<long long>(a) * v + b;
}

}  // namespace

int Tree::edge_count() const {
  int twice = 0;
  for (const auto& r : rotation) twice += static_cast<int>(r.size());
  return twice / 2;
}

void Tree::validate() const {
  const int v = vertex_count();
  if (v < 2) throw ParseError("tree needs at least two vertices");
  if (base < 0 || base >= v) throw ParseError("missing base vertex");
  if (degree(base) != 1) throw ParseError("base vertex must have degree 1");

  // Rotation consistency: u lists v exactly once iff v lists u exactly once,
  // and never lists itself (no loops).
  std::set<std::pair<int, int>> seen;
  for (int u = 0; u < v; ++u) {
    std::set<int> local;
    for (int w : rotation[u]) {
      if (w == u) throw ParseError("loop edge at '" + ids[u] + "'");
      if (!local.insert(w).second)
        throw ParseError("duplicate adjacency between '" + ids[u] + "' and '" + ids[w] + "'");
      seen.insert({u, w});
    }
  }
  for (const auto& [u, w] : seen) {
    if (!seen.count({w, u}))
      throw ParseError("asymmetric adjacency between '" + ids[u] + "' and '" + ids[w] + "'");
  }

  const int e = static_cast<int>(seen.size()) / 2;
  // Connected + acyclic <=> connected with exactly V-1 edges.
  std::vector<char> visited(v, 0);
  std::vector<int> stack{base};
  visited[base] = 1;
  int reached = 0;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    ++reached;
    for (int w : rotation[u]) {
      if (!visited[w]) {
        visited[w] = 1;
        stack.push_back(w);
      }
    }
  }
  if (reached != v) throw ParseError("disconnected input");
  if (e != v - 1) throw ParseError("cycle detected");
}

Tree parse_tree(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("invalid JSON: ") + ex.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("base") ||
      !doc.contains("rotation"))
    throw ParseError("tree file needs fields: vertices, base, rotation");

  Tree t;
  for (const auto& item : doc.at("vertices")) {
    if (!item.is_string()) throw ParseError("vertex ids must be strings");
    std::string id = item.get<std::string>();
    if (!valid_id(id)) throw ParseError("invalid vertex id '" + id + "'");
    if (t.index.count(id)) throw ParseError("duplicate vertex id '" + id + "'");
    t.index[id] = static_cast<int>(t.ids.size());
    t.ids.push_back(std::move(id));
  }
  t.rotation.assign(t.ids.size(), {});

  const auto& rot = doc.at("rotation");
  if (!rot.is_object()) throw ParseError("rotation must map id -> neighbor array");
  for (const auto& [id, arr] : rot.items()) {
    auto it = t.index.find(id);
    if (it == t.index.end()) throw ParseError("rotation lists unknown vertex '" + id + "'");
    for (const auto& nb : arr) {
      std::string nid = nb.get<std::string>();
      auto jt = t.index.find(nid);
      if (jt == t.index.end()) throw ParseError("unknown neighbor id '" + nid + "'");
      t.rotation[it->second].push_back(jt->second);
    }
  }

  std::string base_id = doc.at("base").get<std::string>();
  auto bt = t.index.find(base_id);
  if (bt == t.index.end()) throw ParseError("unknown base id '" + base_id + "'");
  t.base = bt->second;

  t.validate();
  return t;
}

std::string tree_to_json(const Tree& t) {
  nlohmann::json doc;
  doc["vertices"] = t.ids;
  doc["base"] = t.ids[t.base];
  nlohmann::json rot = nlohmann::json::object();
  for (int v = 0; v < t.vertex_count(); ++v) {
    nlohmann::json arr = nlohmann::json::array();
    for (int w : t.rotation[v]) arr.push_back(t.ids[w]);
    rot[t.ids[v]] = std::move(arr);
  }
  doc["rotation"] = std::move(rot);
  return doc.dump(2);
}

namespace {

// Maximal paths between vertices of degree != 2, as edge-count plus the
// ordered vertex chain.  The chain starts at the lexicographically smaller
// endpoint id so insertion is deterministic.
struct Segment {
  std::vector<int> chain;  // handles, endpoints included
};

std::vector<Segment> segments_of(const Tree& t) {
  std::vector<Segment> out;
  std::set<std::pair<int, int>> used;
  for (int u = 0; u < t.vertex_count(); ++u) {
    if (t.degree(u) == 2) continue;
    for (int w : t.rotation[u]) {
      if (used.count({u, w})) continue;
      Segment seg;
      seg.chain.push_back(u);
      int prev = u, cur = w;
      used.insert({u, w});
      while (t.degree(cur) == 2) {
        seg.chain.push_back(cur);
        int next = t.rotation[cur][0] == prev ? t.rotation[cur][1] : t.rotation[cur][0];
        used.insert({cur, next});
        prev = cur;
        cur = next;
      }
      used.insert({cur, prev});
      seg.chain.push_back(cur);
      if (t.ids[seg.chain.back()] < t.ids[seg.chain.front()])
        std::reverse(seg.chain.begin(), seg.chain.end());
      out.push_back(std::move(seg));
    }
  }
  // Deduplicate: each segment was discovered from both ends unless an
  // endpoint has degree 2 (impossible by construction).
  std::sort(out.begin(), out.end(),
            [&](const Segment& a, const Segment& b) { return a.chain < b.chain; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Segment& a, const Segment& b) { return a.chain == b.chain; }),
            out.end());
  return out;
}

}  // namespace

bool sufficiently_subdivided(const Tree& t, int n) {
  if (n < 1) throw ParseError("n must be >= 1");
  if (t.vertex_count() < n) return false;
  for (const auto& seg : segments_of(t)) {
    if (static_cast<int>(seg.chain.size()) - 1 < n - 1) return false;
  }
  return true;
}

Tree subdivide_for(const Tree& t, int n) {
  if (n < 1) throw ParseError("n must be >= 1");
  t.validate();
  if (sufficiently_subdivided(t, n)) return t;

  Tree out = t;
  auto fresh_id = [&out](const std::string& a, const std::string& b, int k) {
    std::string id = a + "." + b + "." + std::to_string(k);
    while (out.index.count(id)) id += "x";
    return id;
  };

  for (const auto& seg : segments_of(t)) {
    const int len = static_cast<int>(seg.chain.size()) - 1;
    int extra = (n - 1) - len;
    if (extra <= 0) continue;
    const int base_add = extra / len;
    const int rem = extra % len;
    const std::string& sa = t.ids[seg.chain.front()];
    const std::string& sb = t.ids[seg.chain.back()];
    int counter = 0;
    for (int i = 0; i < len; ++i) {
      const int add = base_add + (i < rem ? 1 : 0);
      if (add == 0) continue;
      int u = seg.chain[i], w = seg.chain[i + 1];
      // Replace edge (u,w) with a chain u - m1 - ... - m_add - w.
      std::vector<int> mids;
      for (int k = 0; k < add; ++k) {
        std::string id = fresh_id(sa, sb, ++counter);
        int h = static_cast<int>(out.ids.size());
        out.index[id] = h;
        out.ids.push_back(id);
        out.rotation.emplace_back();
        mids.push_back(h);
      }
      auto& ru = out.rotation[u];
      *std::find(ru.begin(), ru.end(), w) = mids.front();
      auto& rw = out.rotation[w];
      *std::find(rw.begin(), rw.end(), u) = mids.back();
      for (int k = 0; k < add; ++k) {
        int prev = k == 0 ? u : mids[k - 1];
        int next = k + 1 == add ? w : mids[k + 1];
        out.rotation[mids[k]] = {prev, next};
      }
    }
  }

  out.validate();
  if (!sufficiently_subdivided(out, n))
    throw std::logic_error("subdivide_for postcondition failed");
  return out;
}

OrderedTree::OrderedTree(Tree t) : tree_(std::move(t)) {
  tree_.validate();
  const int v = tree_.vertex_count();
  number_.assign(v, -1);
  vertex_of_.assign(v, -1);

  // Depth-first numbering from the base.  On first arrival at a vertex the
  // incoming edge is direction 0; the remaining rotation entries, taken
  // clockwise after it, are directions 1..d-1 and are explored in that
  // order.  This is what forces iota(e) < u < tau(e) for a direction-2 edge
  // e and any vertex u in the direction-1 subtree.
  int next = 0;
  std::vector<int> parent_handle(v, -1);
  std::function<void(int, int)> dfs = [&](int h, int from) {
    number_[h] = next;
    vertex_of_[next] = h;
    ++next;
    const auto& rot = tree_.rotation[h];
    const int d = static_cast<int>(rot.size());
    int start = 0;
    if (from >= 0) {
      while (rot[start] != from) ++start;
    } else {
      start = d - 1;  // base: its single neighbor is the only child
    }
    for (int j = 1; j <= d; ++j) {
      int nb = rot[(start + j) % d];
      if (nb == from) continue;
      parent_handle[nb] = h;
      dfs(nb, h);
    }
  };
  dfs(tree_.base, -1);

  parent_.assign(v, -1);
  depth_.assign(v, 0);
  neighbors_.assign(v, {});
  dir_neighbor_.assign(v, {});
  for (int num = 0; num < v; ++num) {
    int h = vertex_of_[num];
    if (parent_handle[h] >= 0) {
      parent_[num] = number_[parent_handle[h]];
      depth_[num] = depth_[parent_[num]] + 1;
    }
    for (int nb : tree_.rotation[h]) neighbors_[num].push_back(number_[nb]);
  }
  for (int num = 0; num < v; ++num) {
    const auto& rot = neighbors_[num];
    const int d = static_cast<int>(rot.size());
    dir_neighbor_[num].resize(d);
    if (num == 0) {
      dir_neighbor_[num] = rot;
      continue;
    }
    int start = 0;
    while (rot[start] != parent_[num]) ++start;
    for (int j = 0; j < d; ++j) dir_neighbor_[num][j] = rot[(start + j) % d];
  }

  for (int num = 1; num < v; ++num) edges_.push_back({parent_[num], num});
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.iota != b.iota ? a.iota < b.iota : a.tau < b.tau;
  });
  incident_.assign(v, {});
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
    edge_ix_[pair_key(edges_[e].iota, edges_[e].tau, v)] = e;
    incident_[edges_[e].iota].push_back(e);
    incident_[edges_[e].tau].push_back(e);
  }
  for (int num = 0; num < v; ++num) {
    if (degree(num) >= 3) essentials_.push_back(num);
  }
}

std::optional<int> OrderedTree::vertex_by_id(const std::string& id) const {
  auto it = tree_.index.find(id);
  if (it == tree_.index.end()) return std::nullopt;
  return number_[it->second];
}

int OrderedTree::edge_between(int u, int v) const {
  if (u > v) std::swap(u, v);
  auto it = edge_ix_.find(pair_key(u, v, V()));
  return it == edge_ix_.end() ? -1 : it->second;
}

int OrderedTree::parent_edge(int v) const {
  if (v == 0) throw std::logic_error("base vertex has no parent edge");
  return edge_between(parent_[v], v);
}

int OrderedTree::direction(int v, int edge_id) const {
  const Edge& e = edges_[edge_id];
  int other = e.iota == v ? e.tau : (e.tau == v ? e.iota : -1);
  if (other < 0) throw std::logic_error("edge not incident to vertex");
  return direction_of_neighbor(v, other);
}

int OrderedTree::direction_of_neighbor(int v, int u) const {
  if (v == 0) throw std::logic_error("directions are undefined at the base vertex");
  const auto& dn = dir_neighbor_[v];
  for (int j = 0; j < static_cast<int>(dn.size()); ++j) {
    if (dn[j] == u) return j;
  }
  throw std::logic_error("vertices not adjacent");
}

OrderedTree order_vertices(const Tree& t) {
  return OrderedTree(t);
}

namespace {

// Walks parents from both sides to the common ancestor.
std::vector<int> vertex_path(const OrderedTree& ot, int a, int b) {
  std::vector<int> up_a, up_b;
  int x = a, y = b;
  while (ot.depth(x) > ot.depth(y)) {
    up_a.push_back(x);
    x = ot.parent(x);
  }
  while (ot.depth(y) > ot.depth(x)) {
    up_b.push_back(y);
    y = ot.parent(y);
  }
  while (x != y) {
    up_a.push_back(x);
    up_b.push_back(y);
    x = ot.parent(x);
    y = ot.parent(y);
  }
  up_a.push_back(x);
  up_a.insert(up_a.end(), up_b.rbegin(), up_b.rend());
  return up_a;
}

}  // namespace

Geodesic geodesic(const OrderedTree& ot, const Point& a, const Point& b) {
  Geodesic g;
  g.from = a;
  g.to = b;
  if (a == b) return g;

  if (!a.on_vertex && !b.on_vertex && a.edge == b.edge) {
    g.length = a.t < b.t ? b.t - a.t : a.t - b.t;
    return g;
  }

  // Anchor each point to the vertex (or vertex pair) it touches and stitch.
  auto anchors = [&](const Point& p) -> std::pair<int, int> {
    if (p.on_vertex) return {p.vertex, p.vertex};
    const auto& e = ot.edge(p.edge);
    return {e.iota, e.tau};
  };
  auto [ai, at] = anchors(a);
  auto [bi, bt] = anchors(b);

  // Choose the anchor of each endpoint that minimizes the path; for an edge
  // point the geodesic leaves through exactly one endpoint of its edge.
  std::vector<int> best;
  Rational best_len(-1);
  for (int av : {ai, at}) {
    for (int bv : {bi, bt}) {
      std::vector<int> path = vertex_path(ot, av, bv);
      // Partial first edge: from a to its chosen anchor.
      Rational len = static_cast<int>(path.size()) - 1;
      if (!a.on_vertex) {
        const auto& e = ot.edge(a.edge);
        len += av == e.iota ? a.t : Rational(1) - a.t;
        // Reject anchors that double back across a's own edge.
        if (path.size() >= 2 && ((av == e.iota && path[1] == e.tau) ||
                                 (av == e.tau && path[1] == e.iota)))
          continue;
      }
      if (!b.on_vertex) {
        const auto& e = ot.edge(b.edge);
        len += bv == e.iota ? b.t : Rational(1) - b.t;
        if (path.size() >= 2 && ((bv == e.iota && path[path.size() - 2] == e.tau) ||
                                 (bv == e.tau && path[path.size() - 2] == e.iota)))
          continue;
      }
      if (best_len < 0 || len < best_len) {
        best_len = len;
        best = std::move(path);
      }
      if (av == at && bi == bt) break;
    }
    if (ai == at) break;
  }
  g.vertices = std::move(best);
  g.length = best_len;
  return g;
}

TreeStats tree_stats(const OrderedTree& ot) {
  TreeStats st;
  for (int v : ot.essentials()) {
    st.essentials.push_back(v);
    ++st.m;
    if (ot.degree(v) > 3) ++st.r;
    else ++st.s;
  }
  return st;
}

ConnectivityReport connectivity(const OrderedTree& ot, int n) {
  ConnectivityReport rep;
  const bool interval = ot.essentials().empty();
  rep.unordered_connected = true;  // trees are connected
  if (n == 1) {
    rep.ordered_connected = true;
  } else if (interval) {
    rep.ordered_connected = false;
    rep.note = "ordered configuration space disconnected: tree is homeomorphic to a closed interval";
  } else {
    rep.ordered_connected = true;
  }
  return rep;
}

}  // namespace braidscape
