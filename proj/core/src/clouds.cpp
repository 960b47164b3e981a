#include "braidscape/clouds.hpp"

#include "braidscape/errors.hpp"
#include "braidscape/rational.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace braidscape {

CloudSystem cloud_system(const OrderedTree& ot, const std::vector<int>& edge_ids) {
  CloudSystem cs;
  cs.V = ot.V();
  cs.removed_edge = edge_ids;
  std::sort(cs.removed_edge.begin(), cs.removed_edge.end());
  cs.vertex_removed.assign(ot.V(), 0);
  std::vector<char> edge_removed(ot.E(), 0);
  for (int e : cs.removed_edge) {
    edge_removed[e] = 1;
    cs.vertex_removed[ot.edge(e).iota] = 1;
    cs.vertex_removed[ot.edge(e).tau] = 1;
  }

  cs.comp_of_vertex.assign(ot.V(), -1);
  cs.comp_of_orphan.assign(ot.E(), -1);

  // Components over surviving vertices; each is the subtree hanging from
  // the single vertex whose parent was removed (or from the base).
  std::vector<std::pair<int, int>> anchored;  // (anchor, root)
  for (int v = 0; v < ot.V(); ++v) {
    if (cs.vertex_removed[v]) continue;
    if (v != 0 && !cs.vertex_removed[ot.parent(v)]) continue;
    anchored.push_back({v, v});
  }
  // Orphan components: edges not removed whose endpoints both were.
  for (int e = 0; e < ot.E(); ++e) {
    if (edge_removed[e]) continue;
    const auto& ed = ot.edge(e);
    if (cs.vertex_removed[ed.iota] && cs.vertex_removed[ed.tau])
      anchored.push_back({ot.V() + e, -1});
  }
  std::sort(anchored.begin(), anchored.end());

  cs.comps = static_cast<int>(anchored.size());
  cs.comp_root.resize(cs.comps);
  cs.comp_anchor.resize(cs.comps);
  cs.comp_capacity.assign(cs.comps, 0);
  for (int c = 0; c < cs.comps; ++c) {
    cs.comp_anchor[c] = anchored[c].first;
    cs.comp_root[c] = anchored[c].second;
    if (anchored[c].second < 0) {
      cs.comp_of_orphan[anchored[c].first - ot.V()] = c;
      continue;
    }
    // Flood the subtree, stopping at removed vertices.
    std::vector<int> stack{anchored[c].second};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      cs.comp_of_vertex[v] = c;
      ++cs.comp_capacity[c];
      for (int w : ot.neighbors(v)) {
        if (w == ot.parent(v) || cs.vertex_removed[w]) continue;
        stack.push_back(w);
      }
    }
  }
  return cs;
}

std::vector<std::vector<int>> component_ideals(const OrderedTree& ot, const CloudSystem& cs,
                                               int comp, int size, int limit) {
  if (size == 0) return {{}};
  const int root = cs.comp_root[comp];
  if (root < 0 || size > cs.comp_capacity[comp]) return {};

  std::function<int(int)> subtree_size = [&](int v) {
    int s = 1;
    for (int w : ot.neighbors(v)) {
      if (w != ot.parent(v) && !cs.vertex_removed[w]) s += subtree_size(w);
    }
    return s;
  };

  // Ideals of the subtree at v with exactly s vertices; nonempty ideals
  // contain v, then split the rest among the children subtrees.
  std::function<std::vector<std::vector<int>>(int, int)> gen = [&](int v,
                                                                   int s) -> std::vector<std::vector<int>> {
    if (s == 0) return {{}};
    std::vector<int> kids;
    for (int w : ot.neighbors(v)) {
      if (w != ot.parent(v) && !cs.vertex_removed[w]) kids.push_back(w);
    }
    std::vector<std::vector<int>> res;
    std::function<void(std::size_t, int, const std::vector<int>&)> dist =
        [&](std::size_t i, int rest, const std::vector<int>& acc) {
          if (static_cast<int>(res.size()) >= limit) return;
          if (i == kids.size()) {
            if (rest == 0) res.push_back(acc);
            return;
          }
          const int cap = std::min(rest, subtree_size(kids[i]));
          for (int take = 0; take <= cap; ++take) {
            for (const auto& sub : gen(kids[i], take)) {
              std::vector<int> next = acc;
              next.insert(next.end(), sub.begin(), sub.end());
              dist(i + 1, rest - take, next);
              if (static_cast<int>(res.size()) >= limit) return;
            }
          }
        };
    dist(0, s - 1, {v});
    return res;
  };

  auto out = gen(root, size);
  if (static_cast<int>(out.size()) > limit) out.resize(limit);
  for (auto& ideal : out) std::sort(ideal.begin(), ideal.end());
  return out;
}

int CloudDiagram::total_value() const {
  int s = 0;
  for (const auto& [a, v] : clouds) s += v;
  return s;
}

bool CloudDiagram::operator<(const CloudDiagram& o) const {
  if (edges != o.edges) return edges < o.edges;
  return clouds < o.clouds;
}

std::size_t CloudDiagramHash::operator()(const CloudDiagram& d) const {
  std::size_t h = 1469598103934665603ULL;
  auto mix = [&h](std::size_t x) {
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  for (int e : d.edges) mix(static_cast<std::size_t>(e) + 1);
  mix(0xabcdefULL);
  for (const auto& [a, v] : d.clouds) {
    mix(static_cast<std::size_t>(a) * 31 + 7);
    mix(static_cast<std::size_t>(v) * 131 + 3);
  }
  return h;
}

CloudDiagram cloud_diagram(const OrderedTree& ot, const Cell& c) {
  CloudDiagram d;
  d.edges = cell_edges(ot, c);
  CloudSystem cs = cloud_system(ot, d.edges);
  std::vector<int> value(cs.comps, 0);
  for (int v : cell_vertices(ot, c)) ++value[cs.component_of(v)];
  for (int comp = 0; comp < cs.comps; ++comp) d.clouds.push_back({cs.comp_anchor[comp], value[comp]});
  return d;
}

bool equivalent(const OrderedTree& ot, const Cell& a, const Cell& b) {
  if (a.n() != b.n()) throw std::invalid_argument("cells must have the same point count");
  return cloud_diagram(ot, a) == cloud_diagram(ot, b);
}

namespace {

// Component of the coarser system `cs` that contains the cloud of a finer
// diagram anchored at `anchor` (vertex number or V+edge).
int map_anchor(const OrderedTree& ot, const CloudSystem& cs, int anchor) {
  if (anchor < ot.V()) {
    if (cs.vertex_removed[anchor])
      throw std::logic_error("cloud anchor removed in coarser system");
    return cs.component_of(anchor);
  }
  const auto& ed = ot.edge(anchor - ot.V());
  if (!cs.vertex_removed[ed.iota]) return cs.component_of(ed.iota);
  if (!cs.vertex_removed[ed.tau]) return cs.component_of(ed.tau);
  return cs.comp_of_orphan[anchor - ot.V()];
}

// Expected values of the coarser diagram (edge set = cs.removed_edge) from
// a finer one: edge of `fine` absorbed into a cloud counts one, cloud
// values map through.  Returns one value per cs component.
std::vector<int> coarsen_values(const OrderedTree& ot, const CloudSystem& cs,
                                const CloudDiagram& fine) {
  std::vector<int> value(cs.comps, 0);
  for (int e : fine.edges) {
    if (std::binary_search(cs.removed_edge.begin(), cs.removed_edge.end(), e)) continue;
    const auto& ed = ot.edge(e);
    if (cs.vertex_removed[ed.iota] || cs.vertex_removed[ed.tau])
      throw std::logic_error("absorbed edge touches a removed vertex");
    value[cs.component_of(ed.iota)] += 1;
  }
  for (const auto& [anchor, v] : fine.clouds) value[map_anchor(ot, cs, anchor)] += v;
  return value;
}

}  // namespace

bool leq(const OrderedTree& ot, const CloudDiagram& d, const CloudDiagram& c) {
  if (d.total_value() + d.dim() != c.total_value() + c.dim())
    throw std::invalid_argument("diagrams with different point counts are not comparable");
  if (!std::includes(c.edges.begin(), c.edges.end(), d.edges.begin(), d.edges.end()))
    return false;
  CloudSystem cs = cloud_system(ot, d.edges);
  for (int e : c.edges) {
    if (std::binary_search(cs.removed_edge.begin(), cs.removed_edge.end(), e)) continue;
    const auto& ed = ot.edge(e);
    if (cs.vertex_removed[ed.iota] || cs.vertex_removed[ed.tau]) return false;
  }
  std::vector<int> expected = coarsen_values(ot, cs, c);
  if (static_cast<int>(d.clouds.size()) != cs.comps) return false;
  for (int comp = 0; comp < cs.comps; ++comp) {
    if (d.clouds[comp].first != cs.comp_anchor[comp]) return false;
    if (d.clouds[comp].second != expected[comp]) return false;
  }
  return true;
}

std::vector<CloudDiagram> one_cell_factors(const OrderedTree& ot, const CloudDiagram& c) {
  if (c.dim() == 0) throw std::invalid_argument("a 0-cell class has no 1-cell factors");
  std::vector<CloudDiagram> factors;
  for (int e : c.edges) {
    CloudDiagram f;
    f.edges = {e};
    CloudSystem cs = cloud_system(ot, f.edges);
    std::vector<int> value = coarsen_values(ot, cs, c);
    for (int comp = 0; comp < cs.comps; ++comp) f.clouds.push_back({cs.comp_anchor[comp], value[comp]});
    factors.push_back(std::move(f));
  }
  // Edges are kept sorted by id = (iota, tau); iotas of disjoint edges are
  // distinct, so this is the iota(e_1) < iota(e_2) < ... arrangement.
  return factors;
}

std::optional<CloudDiagram> lub_of_factors(const OrderedTree& ot,
                                           const std::vector<CloudDiagram>& factors, int n) {
  std::vector<int> edges;
  for (const auto& f : factors) {
    if (f.dim() != 1) throw std::invalid_argument("factors must be 1-cell classes");
    edges.push_back(f.edges[0]);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) return std::nullopt;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& a = ot.edge(edges[i]);
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const auto& b = ot.edge(edges[j]);
      if (a.iota == b.iota || a.iota == b.tau || a.tau == b.iota || a.tau == b.tau)
        return std::nullopt;
    }
  }

  CloudSystem cs = cloud_system(ot, edges);
  // Unknowns: one value per vertex-bearing component; orphans are pinned 0.
  std::vector<int> unknown_of(cs.comps, -1);
  std::vector<int> comp_of_unknown;
  for (int comp = 0; comp < cs.comps; ++comp) {
    if (cs.comp_root[comp] >= 0) {
      unknown_of[comp] = static_cast<int>(comp_of_unknown.size());
      comp_of_unknown.push_back(comp);
    }
  }
  const int U = static_cast<int>(comp_of_unknown.size());

  // Each factor pins the totals over the branches around its edge:
  //   sum of v_C over components inside branch D  =  value_i(D) - #(other edges in D).
  std::vector<std::vector<Rational>> rows;  // U coefficients + rhs
  for (const auto& f : factors) {
    CloudSystem fs = cloud_system(ot, f.edges);
    std::vector<std::vector<Rational>> branch(fs.comps, std::vector<Rational>(U + 1, 0));
    for (int comp = 0; comp < cs.comps; ++comp) {
      int d = map_anchor(ot, fs, cs.comp_anchor[comp]);
      if (unknown_of[comp] >= 0) branch[d][unknown_of[comp]] = 1;
    }
    if (static_cast<int>(f.clouds.size()) != fs.comps)
      throw std::invalid_argument("malformed factor diagram");
    std::vector<int> rhs(fs.comps, 0);
    for (int idx = 0; idx < fs.comps; ++idx) {
      if (f.clouds[idx].first != fs.comp_anchor[idx])
        throw std::invalid_argument("malformed factor diagram");
      rhs[idx] = f.clouds[idx].second;
    }
    for (int e : edges) {
      if (e == f.edges[0]) continue;
      const auto& ed = ot.edge(e);
      rhs[fs.component_of(ed.iota)] -= 1;
    }
    for (int idx = 0; idx < fs.comps; ++idx) {
      if (rhs[idx] < 0) return std::nullopt;
      branch[idx][U] = rhs[idx];
      rows.push_back(std::move(branch[idx]));
    }
  }

  // Rational Gaussian elimination; the branch partitions separate every
  // pair of components, so a consistent system has a unique solution.
  std::vector<int> pivot_col;
  std::vector<std::vector<Rational>> reduced;
  for (auto row : rows) {
    for (std::size_t i = 0; i < reduced.size(); ++i) {
      if (row[pivot_col[i]] != 0) {
        Rational factor = row[pivot_col[i]];
        for (int j = 0; j <= U; ++j) row[j] -= factor * reduced[i][j];
      }
    }
    int pc = -1;
    for (int j = 0; j < U; ++j) {
      if (row[j] != 0) {
        pc = j;
        break;
      }
    }
    if (pc < 0) {
      if (row[U] != 0) return std::nullopt;  // inconsistent: no upper bound
      continue;
    }
    Rational inv = row[pc];
    for (int j = 0; j <= U; ++j) row[j] /= inv;
    for (std::size_t i = 0; i < reduced.size(); ++i) {
      if (reduced[i][pc] != 0) {
        Rational factor = reduced[i][pc];
        for (int j = 0; j <= U; ++j) reduced[i][j] -= factor * row[j];
      }
    }
    pivot_col.push_back(pc);
    reduced.push_back(std::move(row));
  }
  if (static_cast<int>(reduced.size()) != U)
    throw std::logic_error("underdetermined factor system");

  std::vector<int> value(cs.comps, 0);
  int total = 0;
  for (int i = 0; i < U; ++i) {
    const Rational& val = reduced[i][U];
    if (denominator(val) != 1 || val < 0) return std::nullopt;
    const int comp = comp_of_unknown[pivot_col[i]];
    const int v = static_cast<int>(numerator(val));
    if (v > cs.comp_capacity[comp]) return std::nullopt;
    value[comp] = v;
    total += v;
  }
  if (total != n - static_cast<int>(edges.size())) return std::nullopt;

  CloudDiagram out;
  out.edges = edges;
  for (int comp = 0; comp < cs.comps; ++comp) out.clouds.push_back({cs.comp_anchor[comp], value[comp]});
  for (const auto& f : factors) {
    if (!leq(ot, f, out)) throw std::logic_error("lub candidate does not dominate a factor");
  }
  return out;
}

std::optional<Cell> critical_cell_of_class(const OrderedTree& ot, const CloudDiagram& d, int n) {
  if (d.total_value() + d.dim() != n)
    throw std::invalid_argument("diagram does not describe an n-point class");
  for (int e : d.edges) {
    const auto& ed = ot.edge(e);
    if (!ot.essential(ed.iota)) return std::nullopt;
    if (ot.direction(ed.iota, e) < 2) return std::nullopt;
  }
  CloudSystem cs = cloud_system(ot, d.edges);
  if (static_cast<int>(d.clouds.size()) != cs.comps) return std::nullopt;
  std::vector<int> value(cs.comps, 0);
  for (int comp = 0; comp < cs.comps; ++comp) {
    if (d.clouds[comp].first != cs.comp_anchor[comp]) return std::nullopt;
    value[comp] = d.clouds[comp].second;
    if (value[comp] < 0 || value[comp] > cs.comp_capacity[comp]) return std::nullopt;
  }
  for (int e : d.edges) {
    const auto& ed = ot.edge(e);
    const int dir = ot.direction(ed.iota, e);
    bool witness = false;
    for (int j = 1; j < dir && !witness; ++j) {
      int w = ot.neighbor_in_direction(ed.iota, j);
      witness = !cs.vertex_removed[w] && value[cs.component_of(w)] > 0;
    }
    if (!witness) return std::nullopt;
  }

  Cell cell;
  for (int e : d.edges) cell.members.push_back(ot.V() + e);
  for (int comp = 0; comp < cs.comps; ++comp) {
    if (value[comp] == 0) continue;
    auto ideals = component_ideals(ot, cs, comp, value[comp], 2);
    if (ideals.empty()) return std::nullopt;
    if (ideals.size() > 1)
      throw std::logic_error("equivalence class with two all-blocked fillings");
    for (int v : ideals.front()) cell.members.push_back(v);
  }
  std::sort(cell.members.begin(), cell.members.end());
  if (classify_cell(ot, cell) != CellClass::Critical)
    throw std::logic_error("constructed class representative is not critical");
  return cell;
}

}  // namespace braidscape
