#include "braidscape/smith.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace braidscape {

namespace {

using Row = std::vector<std::pair<int, BigInt>>;

BigInt row_content(const Row& r) {
  BigInt g = 0;
  for (const auto& [c, v] : r) {
    g = gcd(g, v);
    if (g == 1) break;
  }
  return g;
}

void normalize(Row& r) {
  if (r.empty()) return;
  BigInt g = row_content(r);
  if (r.front().second < 0) g = -g;
  if (g != 1 && g != 0) {
    for (auto& [c, v] : r) v /= g;
  }
}

// r := b*r - a*pivot, eliminating the shared leading column.
Row combine(const Row& r, const Row& pivot, const BigInt& a, const BigInt& b) {
  Row out;
  out.reserve(r.size() + pivot.size());
  std::size_t i = 0, j = 0;
  while (i < r.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < r.size() && r[i].first < pivot[j].first)) {
      out.push_back({r[i].first, b * r[i].second});
      ++i;
    } else if (i == r.size() || pivot[j].first < r[i].first) {
      out.push_back({pivot[j].first, -a * pivot[j].second});
      ++j;
    } else {
      BigInt v = b * r[i].second - a * pivot[j].second;
      if (v != 0) out.push_back({r[i].first, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

std::size_t exact_rank(const SparseIntMatrix& m) {
  std::map<int, Row> pivots;  // leading column -> reduced row
  for (const auto& raw : m.rows) {
    Row row = raw;
    normalize(row);
    while (!row.empty()) {
      auto it = pivots.find(row.front().first);
      if (it == pivots.end()) break;
      const Row& p = it->second;
      const BigInt a = row.front().second;
      const BigInt b = p.front().second;
      const BigInt g = gcd(a, b);
      row = combine(row, p, a / g, b / g);
      normalize(row);
    }
    if (!row.empty()) {
      int lead = row.front().first;
      pivots.emplace(lead, std::move(row));
    }
  }
  return pivots.size();
}

std::vector<BigInt> smith_diagonal(std::vector<std::vector<BigInt>> a) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  std::vector<BigInt> diag;
  int t = 0;
  while (true) {
    int pr = -1, pc = -1;
    BigInt best = 0;
    for (int i = t; i < rows; ++i) {
      for (int j = t; j < cols; ++j) {
        if (a[i][j] == 0) continue;
        BigInt mag = abs(a[i][j]);
        if (best == 0 || mag < best) {
          best = mag;
          pr = i;
          pc = j;
        }
      }
    }
    if (pr < 0) break;
    std::swap(a[pr], a[t]);
    for (int i = 0; i < rows; ++i) std::swap(a[i][pc], a[i][t]);

    bool clean = true;
    for (int i = t + 1; i < rows; ++i) {
      if (a[i][t] != 0) {
        BigInt q = a[i][t] / a[t][t];
        for (int j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
    }
    for (int j = t + 1; j < cols; ++j) {
      if (a[t][j] != 0) {
        BigInt q = a[t][j] / a[t][t];
        for (int i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
    }
    if (!clean) continue;  // smaller remainders appeared; pick a new pivot

    // Divisibility sweep: fold any entry the pivot does not divide into
    // the pivot row and redo this step.
    bool divides_all = true;
    for (int i = t + 1; i < rows && divides_all; ++i) {
      for (int j = t + 1; j < cols && divides_all; ++j) {
        if (a[i][j] % a[t][t] != 0) {
          for (int jj = t; jj < cols; ++jj) a[t][jj] += a[i][jj];
          divides_all = false;
        }
      }
    }
    if (!divides_all) continue;

    diag.push_back(abs(a[t][t]));
    ++t;
    if (t == rows || t == cols) break;
  }
  return diag;
}

}  // namespace braidscape
