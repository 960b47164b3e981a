#include <benchmark/benchmark.h>

#include "braidscape/cells.hpp"
#include "braidscape/cohomology.hpp"
#include "braidscape/planner.hpp"
#include "braidscape/tc.hpp"
#include "braidscape/tree.hpp"

#include <random>

namespace {

using namespace braidscape;

Tree caterpillar(int spine) {
  std::string verts = R"(["b")";
  std::string rot = R"("b":["v1"])";
  for (int i = 1; i <= spine; ++i) {
    std::string v = "v" + std::to_string(i);
    std::string prev = i == 1 ? "b" : "v" + std::to_string(i - 1);
    std::string next = i == spine ? "t" : "v" + std::to_string(i + 1);
    verts += ",\"" + v + "\",\"p" + std::to_string(i) + "\"";
    rot += ",\"" + v + "\":[\"" + prev + "\",\"p" + std::to_string(i) + "\",\"" + next + "\"]";
    rot += ",\"p" + std::to_string(i) + "\":[\"" + v + "\"]";
  }
  verts += ",\"t\"]";
  rot += ",\"t\":[\"v" + std::to_string(spine) + "\"]";
  return parse_tree(R"({"vertices":)" + verts + R"(,"base":"b","rotation":{)" + rot + "}}");
}

Tree h_tree() { return caterpillar(2); }

void BM_order_vertices(benchmark::State& state) {
  Tree t = subdivide_for(caterpillar(4), 8);
  for (auto _ : state) benchmark::DoNotOptimize(order_vertices(t));
}
BENCHMARK(BM_order_vertices);

void BM_enumerate_cells(benchmark::State& state) {
  OrderedTree ot(subdivide_for(h_tree(), 3));
  std::set<int> dims{0, 1, 2, 3};
  for (auto _ : state) {
    std::uint64_t count = 0;
    enumerate_cells(ot, 3, dims, [&](const Cell&) { ++count; });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_enumerate_cells);

void BM_critical_cells(benchmark::State& state) {
  OrderedTree ot(subdivide_for(caterpillar(4), 6));
  for (auto _ : state) benchmark::DoNotOptimize(critical_cells(ot, 6, 3));
}
BENCHMARK(BM_critical_cells);

void BM_homology_oracle(benchmark::State& state) {
  OrderedTree ot(subdivide_for(h_tree(), 3));
  for (auto _ : state) benchmark::DoNotOptimize(homology_oracle(ot, 3, 3));
}
BENCHMARK(BM_homology_oracle);

void BM_zero_divisor_product(benchmark::State& state) {
  OrderedTree ot(subdivide_for(h_tree(), 4));
  for (auto _ : state) {
    Basis B = compute_basis(ot, 4);
    auto pair = search_disjoint_critical_pair(ot, 4, 1);
    TensorElement acc = tensor_single(B.unit, B.unit);
    for (int i = 0; i < static_cast<int>(B.classes.size()); ++i) {
      if (B.degree(i) == 1) acc = tensor_multiply(ot, B, acc, zero_divisor(B, i));
    }
    benchmark::DoNotOptimize(acc);
    benchmark::DoNotOptimize(pair);
  }
}
BENCHMARK(BM_zero_divisor_product);

void BM_decide_tc(benchmark::State& state) {
  Tree t = h_tree();
  for (auto _ : state) benchmark::DoNotOptimize(decide_tc(t, 5));
}
BENCHMARK(BM_decide_tc);

void BM_plan_unordered(benchmark::State& state) {
  OrderedTree ot(subdivide_for(h_tree(), 4));
  std::mt19937_64 rng(7);
  auto random_config = [&]() {
    Configuration c;
    while (c.n() < 4) {
      int v = static_cast<int>(rng() % ot.V());
      bool taken = false;
      for (const auto& p : c.points) taken = taken || p.vertex == v;
      if (!taken) c.points.push_back(Point::at_vertex(v));
    }
    canonicalize(ot, c);
    return c;
  };
  for (auto _ : state) {
    state.PauseTiming();
    Configuration x = random_config(), y = random_config();
    state.ResumeTiming();
    benchmark::DoNotOptimize(plan_unordered(ot, x, y));
  }
}
BENCHMARK(BM_plan_unordered);

}  // namespace

BENCHMARK_MAIN();
