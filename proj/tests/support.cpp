#include "support.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace braidscape::testing {

namespace {
std::uint64_t g_seed = 0xb81d5cafeULL;
}

std::uint64_t global_seed() { return g_seed; }
void set_global_seed(std::uint64_t seed) { g_seed = seed; }

namespace {

Tree from_rotation(const std::vector<std::pair<std::string, std::vector<std::string>>>& rot,
                   const std::string& base) {
  nlohmann::json doc;
  auto verts = nlohmann::json::array();
  auto rj = nlohmann::json::object();
  for (const auto& [id, nbrs] : rot) {
    verts.push_back(id);
    rj[id] = nbrs;
  }
  doc["vertices"] = verts;
  doc["base"] = base;
  doc["rotation"] = rj;
  return parse_tree(doc.dump());
}

}  // namespace

Tree path_tree(int edges) {
  std::vector<std::pair<std::string, std::vector<std::string>>> rot;
  auto name = [](int i) { return "p" + std::to_string(i); };
  for (int i = 0; i <= edges; ++i) {
    std::vector<std::string> n;
    if (i > 0) n.push_back(name(i - 1));
    if (i < edges) n.push_back(name(i + 1));
    rot.push_back({name(i), n});
  }
  return from_rotation(rot, name(0));
}

Tree y_tree() {
  return from_rotation({{"b", {"c"}}, {"c", {"b", "x", "y"}}, {"x", {"c"}}, {"y", {"c"}}}, "b");
}

Tree h_tree() {
  return from_rotation({{"b", {"v1"}},
                        {"v1", {"b", "p1", "v2"}},
                        {"p1", {"v1"}},
                        {"v2", {"v1", "p2", "t"}},
                        {"p2", {"v2"}},
                        {"t", {"v2"}}},
                       "b");
}

Tree star_tree(int leaves) {
  std::vector<std::pair<std::string, std::vector<std::string>>> rot;
  std::vector<std::string> center{"b"};
  for (int i = 0; i < leaves; ++i) center.push_back("l" + std::to_string(i));
  rot.push_back({"b", {"c"}});
  rot.push_back({"c", center});
  for (int i = 0; i < leaves; ++i) rot.push_back({"l" + std::to_string(i), {"c"}});
  return from_rotation(rot, "b");
}

Tree caterpillar_tree(int spine) {
  std::vector<std::pair<std::string, std::vector<std::string>>> rot;
  rot.push_back({"b", {"v1"}});
  for (int i = 1; i <= spine; ++i) {
    std::string v = "v" + std::to_string(i);
    std::string prev = i == 1 ? "b" : "v" + std::to_string(i - 1);
    std::string next = i == spine ? "t" : "v" + std::to_string(i + 1);
    rot.push_back({v, {prev, "p" + std::to_string(i), next}});
    rot.push_back({"p" + std::to_string(i), {v}});
  }
  rot.push_back({"t", {"v" + std::to_string(spine)}});
  return from_rotation(rot, "b");
}

Tree double_star_tree() {
  return from_rotation({{"b", {"u"}},
                        {"u", {"b", "u1", "u2", "v"}},
                        {"u1", {"u"}},
                        {"u2", {"u"}},
                        {"v", {"u", "v1", "v2", "t"}},
                        {"v1", {"v"}},
                        {"v2", {"v"}},
                        {"t", {"v"}}},
                       "b");
}

std::vector<Cell> brute_critical_cells(const OrderedTree& ot, int n, int k) {
  std::vector<Cell> out;
  enumerate_cells(ot, n, {k}, [&](const Cell& c) {
    if (classify_cell(ot, c) == CellClass::Critical) out.push_back(c);
  });
  return out;
}

std::vector<CloudDiagram> all_class_diagrams(const OrderedTree& ot, int n) {
  std::set<int> dims;
  for (int d = 0; d <= n; ++d) dims.insert(d);
  std::set<CloudDiagram> seen;
  enumerate_cells(ot, n, dims, [&](const Cell& c) { seen.insert(cloud_diagram(ot, c)); });
  return {seen.begin(), seen.end()};
}

std::vector<CloudDiagram> all_class_diagrams(const OrderedTree& ot, int n, int dim) {
  std::set<CloudDiagram> seen;
  enumerate_cells(ot, n, {dim}, [&](const Cell& c) { seen.insert(cloud_diagram(ot, c)); });
  return {seen.begin(), seen.end()};
}

std::vector<CloudDiagram> brute_upper_bounds(const OrderedTree& ot,
                                             const std::vector<CloudDiagram>& factors,
                                             const std::vector<CloudDiagram>& classes) {
  std::vector<CloudDiagram> out;
  for (const auto& cand : classes) {
    bool ub = true;
    for (const auto& f : factors) ub = ub && leq(ot, f, cand);
    if (ub) out.push_back(cand);
  }
  return out;
}

Configuration random_configuration(const OrderedTree& ot, int n, std::mt19937_64& rng,
                                   bool ordered) {
  const int elements = ot.V() + ot.E();
  Configuration c;
  c.ordered = ordered;
  while (true) {
    c.points.clear();
    std::vector<char> used(ot.V(), 0);
    int guard = 0;
    while (static_cast<int>(c.points.size()) < n && guard < 50 * n) {
      ++guard;
      int pick = static_cast<int>(rng() % elements);
      if (pick < ot.V()) {
        if (used[pick]) continue;
        used[pick] = 1;
        c.points.push_back(Point::at_vertex(pick));
      } else {
        const auto& e = ot.edge(pick - ot.V());
        if (used[e.iota] || used[e.tau]) continue;
        used[e.iota] = used[e.tau] = 1;
        const long num = 1 + static_cast<long>(rng() % 7);
        c.points.push_back(Point::on_edge(pick - ot.V(), make_rational(num, 8)));
      }
    }
    if (static_cast<int>(c.points.size()) == n) break;
  }
  if (!ordered) canonicalize(ot, c);
  return c;
}

}  // namespace braidscape::testing
