#include "braidscape/cells.hpp"

#include "braidscape/clouds.hpp"
#include "braidscape/errors.hpp"

#include <algorithm>
#include <cstdlib>

namespace braidscape {

std::uint64_t default_cell_cap() {
  if (const char* env = std::getenv("BRAIDSCAPE_MAX_CELLS")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 5'000'000ULL;
}

int cell_dim(const OrderedTree& ot, const Cell& c) {
  int d = 0;
  for (int e : c.members) {
    if (element_is_edge(ot, e)) ++d;
  }
  return d;
}

std::vector<int> cell_edges(const OrderedTree& ot, const Cell& c) {
  std::vector<int> out;
  for (int e : c.members) {
    if (element_is_edge(ot, e)) out.push_back(element_edge(ot, e));
  }
  return out;
}

std::vector<int> cell_vertices(const OrderedTree& ot, const Cell& c) {
  std::vector<int> out;
  for (int e : c.members) {
    if (!element_is_edge(ot, e)) out.push_back(e);
  }
  return out;
}

bool cell_valid(const OrderedTree& ot, const Cell& c) {
  std::vector<char> used(ot.V(), 0);
  for (int m : c.members) {
    if (m < 0 || m >= ot.V() + ot.E()) return false;
    if (element_is_edge(ot, m)) {
      const auto& e = ot.edge(element_edge(ot, m));
      if (used[e.iota] || used[e.tau]) return false;
      used[e.iota] = used[e.tau] = 1;
    } else {
      if (used[m]) return false;
      used[m] = 1;
    }
  }
  if (!std::is_sorted(c.members.begin(), c.members.end())) return false;
  return std::adjacent_find(c.members.begin(), c.members.end()) == c.members.end();
}

std::string element_label(const OrderedTree& ot, int elem) {
  if (element_is_edge(ot, elem)) {
    const auto& e = ot.edge(element_edge(ot, elem));
    return "e:" + ot.id_of(e.iota) + "-" + ot.id_of(e.tau);
  }
  return "v:" + ot.id_of(elem);
}

std::string cell_label(const OrderedTree& ot, const Cell& c) {
  std::string out = "{";
  for (std::size_t i = 0; i < c.members.size(); ++i) {
    if (i) out += ",";
    out += element_label(ot, c.members[i]);
  }
  return out + "}";
}

void enumerate_cells(const OrderedTree& ot, int n, const std::set<int>& dims,
                     const std::function<void(const Cell&)>& sink, std::uint64_t cap) {
  if (n < 1) throw ParseError("n must be >= 1");
  if (dims.empty()) return;
  const int V = ot.V(), E = ot.E(), total = V + E;
  const int max_dim = *dims.rbegin();

  std::vector<char> used(V, 0);
  std::vector<int> members;
  members.reserve(n);
  std::uint64_t emitted = 0;

  std::function<void(int, int)> rec = [&](int start, int edges_so_far) {
    const int need = n - static_cast<int>(members.size());
    if (need == 0) {
      if (dims.count(edges_so_far)) {
        if (++emitted > cap)
          throw CapExceeded("cell cap exceeded; raise BRAIDSCAPE_MAX_CELLS or --max-cells");
        sink(Cell{members});
      }
      return;
    }
    if (total - start < need) return;
    for (int elem = start; elem < total; ++elem) {
      if (element_is_edge(ot, elem)) {
        if (edges_so_far == max_dim) break;  // edges come last in element order
        const auto& e = ot.edge(element_edge(ot, elem));
        if (used[e.iota] || used[e.tau]) continue;
        used[e.iota] = used[e.tau] = 1;
        members.push_back(elem);
        rec(elem + 1, edges_so_far + 1);
        members.pop_back();
        used[e.iota] = used[e.tau] = 0;
      } else {
        if (used[elem]) continue;
        used[elem] = 1;
        members.push_back(elem);
        rec(elem + 1, edges_so_far);
        members.pop_back();
        used[elem] = 0;
      }
    }
  };
  rec(0, 0);
}

std::vector<Cell> collect_cells(const OrderedTree& ot, int n, const std::set<int>& dims,
                                std::uint64_t cap) {
  std::vector<Cell> out;
  enumerate_cells(ot, n, dims, [&](const Cell& c) { out.push_back(c); }, cap);
  return out;
}

namespace {

bool member_occupies(const OrderedTree& ot, int member, int vertex) {
  if (element_is_edge(ot, member)) {
    const auto& e = ot.edge(element_edge(ot, member));
    return e.iota == vertex || e.tau == vertex;
  }
  return member == vertex;
}

}  // namespace

bool is_blocked(const OrderedTree& ot, const Cell& c, int v) {
  if (!std::binary_search(c.members.begin(), c.members.end(), v) || element_is_edge(ot, v))
    throw std::invalid_argument("vertex is not a member of the cell");
  if (v == 0) return true;
  const int p = ot.parent(v);
  for (int m : c.members) {
    if (m != v && member_occupies(ot, m, p)) return true;
  }
  return false;
}

bool is_order_disrespecting(const OrderedTree& ot, const Cell& c, int edge_id) {
  if (!std::binary_search(c.members.begin(), c.members.end(), ot.V() + edge_id))
    throw std::invalid_argument("edge is not a member of the cell");
  const auto& e = ot.edge(edge_id);
  for (int m : c.members) {
    if (element_is_edge(ot, m) || m == 0) continue;
    if (ot.parent(m) == e.iota && e.iota < m && m < e.tau) return true;
  }
  return false;
}

CellClass classify_cell(const OrderedTree& ot, const Cell& c) {
  bool all_blocked = true;
  std::vector<int> unblocked;
  for (int m : c.members) {
    if (!element_is_edge(ot, m) && !is_blocked(ot, c, m)) {
      all_blocked = false;
      unblocked.push_back(m);
    }
  }
  bool all_disrespecting = true;
  std::vector<int> respecting;
  for (int m : c.members) {
    if (element_is_edge(ot, m) && !is_order_disrespecting(ot, c, element_edge(ot, m))) {
      all_disrespecting = false;
      respecting.push_back(element_edge(ot, m));
    }
  }
  if (all_blocked && all_disrespecting) return CellClass::Critical;
  for (int e : respecting) {
    const int tau = ot.edge(e).tau;
    bool ok = true;
    for (int v : unblocked) {
      if (v <= tau) {
        ok = false;
        break;
      }
    }
    if (ok) return CellClass::Collapsible;
  }
  return CellClass::Redundant;
}

namespace {

// Candidate disrespecting edges at an essential vertex: directions >= 2.
std::vector<int> candidate_edges(const OrderedTree& ot, int u) {
  std::vector<int> out;
  for (int d = 2; d < ot.degree(u); ++d) {
    out.push_back(ot.edge_between(u, ot.neighbor_in_direction(u, d)));
  }
  return out;
}

struct CriticalBuilder {
  const OrderedTree& ot;
  int n;
  std::uint64_t cap;
  std::uint64_t produced = 0;
  std::vector<Cell> out;

  void assignments(const CloudSystem& cs, const std::vector<int>& edges) {
    // Witness requirement per edge: at least one direction-(0,d) child
    // component must carry a vertex.
    std::vector<std::vector<int>> witness_comps;
    for (int e : edges) {
      const auto& ed = ot.edge(e);
      const int d = ot.direction(ed.iota, e);
      std::vector<int> comps;
      for (int j = 1; j < d; ++j) {
        int w = ot.neighbor_in_direction(ed.iota, j);
        if (!cs.vertex_removed[w]) comps.push_back(cs.component_of(w));
      }
      if (comps.empty()) return;  // no witness can exist
      witness_comps.push_back(std::move(comps));
    }

    const int k = static_cast<int>(edges.size());
    std::vector<int> value(cs.comps, 0);
    std::function<void(int, int)> rec = [&](int comp, int remaining) {
      if (comp == cs.comps) {
        if (remaining != 0) return;
        for (const auto& comps : witness_comps) {
          bool ok = false;
          for (int c : comps) ok = ok || value[c] > 0;
          if (!ok) return;
        }
        emit(cs, edges, value);
        return;
      }
      int capacity = std::min(cs.comp_capacity[comp], remaining);
      for (int take = 0; take <= capacity; ++take) {
        value[comp] = take;
        rec(comp + 1, remaining - take);
      }
      value[comp] = 0;
    };
    rec(0, n - k);
  }

  void emit(const CloudSystem& cs, const std::vector<int>& edges, const std::vector<int>& value) {
    if (++produced > cap) throw CapExceeded("critical-cell enumeration cap exceeded");
    Cell cell;
    for (int e : edges) cell.members.push_back(ot.V() + e);
    for (int comp = 0; comp < cs.comps; ++comp) {
      if (value[comp] == 0) continue;
      auto ideals = component_ideals(ot, cs, comp, value[comp], 2);
      if (ideals.empty()) return;  // no all-blocked filling of this size
      if (ideals.size() > 1)
        throw std::logic_error("equivalence class with two all-blocked fillings");
      for (int v : ideals.front()) cell.members.push_back(v);
    }
    std::sort(cell.members.begin(), cell.members.end());
    out.push_back(std::move(cell));
  }
};

}  // namespace

std::vector<Cell> critical_cells(const OrderedTree& ot, int n, int k, std::uint64_t cap) {
  if (n < 1) throw ParseError("n must be >= 1");
  const int m = static_cast<int>(ot.essentials().size());
  if (k < 0 || k > std::min(n / 2, m)) return {};

  CriticalBuilder builder{ot, n, cap};
  if (k == 0) {
    CloudSystem cs = cloud_system(ot, {});
    auto ideals = component_ideals(ot, cs, 0, n, 2);
    if (ideals.size() > 1)
      throw std::logic_error("equivalence class with two all-blocked fillings");
    for (auto& ideal : ideals) {
      std::sort(ideal.begin(), ideal.end());
      builder.out.push_back(Cell{ideal});
    }
  } else {
    const auto& ess = ot.essentials();
    std::vector<int> chosen;  // edge ids
    std::function<void(int, int)> pick = [&](int from, int left) {
      if (left == 0) {
        builder.assignments(cloud_system(ot, chosen), chosen);
        return;
      }
      for (int i = from; i <= static_cast<int>(ess.size()) - left; ++i) {
        for (int e : candidate_edges(ot, ess[i])) {
          const auto& ed = ot.edge(e);
          bool disjoint = true;
          for (int prev : chosen) {
            const auto& pd = ot.edge(prev);
            if (pd.iota == ed.iota || pd.iota == ed.tau || pd.tau == ed.iota ||
                pd.tau == ed.tau) {
              disjoint = false;
              break;
            }
          }
          if (!disjoint) continue;
          chosen.push_back(e);
          pick(i + 1, left - 1);
          chosen.pop_back();
        }
      }
    };
    pick(0, k);
  }
  std::sort(builder.out.begin(), builder.out.end());
  return builder.out;
}

int reduced_complex_dim(const OrderedTree& ot, int n, std::uint64_t cap) {
  const int m = static_cast<int>(ot.essentials().size());
  for (int k = std::min(n / 2, m); k >= 1; --k) {
    if (!critical_cells(ot, n, k, cap).empty()) return k;
  }
  return 0;
}

}  // namespace braidscape
