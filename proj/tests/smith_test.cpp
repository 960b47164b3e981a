#include <doctest.h>

#include "braidscape/smith.hpp"

using namespace braidscape;

TEST_CASE("rank: identity and dependent rows") {
  SparseIntMatrix m;
  m.cols = 3;
  m.add_row({{0, 1}});
  m.add_row({{1, 1}});
  m.add_row({{0, 1}, {1, 1}});
  CHECK(exact_rank(m) == 2);
}

TEST_CASE("rank: needs more than lucky pivots") {
  SparseIntMatrix m;
  m.cols = 3;
  m.add_row({{0, 2}, {1, 4}, {2, 6}});
  m.add_row({{0, 3}, {1, 6}, {2, 9}});
  m.add_row({{0, 1}, {2, 1}});
  CHECK(exact_rank(m) == 2);
}

TEST_CASE("rank: empty matrix") {
  SparseIntMatrix m;
  m.cols = 4;
  m.add_row({});
  CHECK(exact_rank(m) == 0);
}

TEST_CASE("smith diagonal: invariant factors divide each other") {
  std::vector<std::vector<BigInt>> a = {{2, 4}, {6, 8}};
  auto d = smith_diagonal(a);
  REQUIRE(d.size() == 2);
  CHECK(d[0] == 2);
  CHECK(d[1] == 4);
  CHECK(d[1] % d[0] == 0);
}

TEST_CASE("smith diagonal: known boundary of a triangle graph") {
  // incidence matrix of a 3-cycle: rank 2, all invariant factors 1
  std::vector<std::vector<BigInt>> a = {{-1, 1, 0}, {0, -1, 1}, {1, 0, -1}};
  auto d = smith_diagonal(a);
  REQUIRE(d.size() == 2);
  CHECK(d[0] == 1);
  CHECK(d[1] == 1);
}
