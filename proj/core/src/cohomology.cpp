#include "braidscape/cohomology.hpp"

#include "braidscape/errors.hpp"
#include "braidscape/smith.hpp"

#include <algorithm>
#include <functional>

namespace braidscape {

std::optional<int> Basis::find(const CloudDiagram& d) const {
  auto it = index.find(d);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

Basis compute_basis(const OrderedTree& ot, int n, std::uint64_t cap) {
  Basis B;
  B.n = n;
  const int m = static_cast<int>(ot.essentials().size());
  for (int k = 0; k <= std::min(n / 2, m); ++k) {
    for (const Cell& c : critical_cells(ot, n, k, cap)) {
      B.classes.push_back({cloud_diagram(ot, c), k});
    }
  }
  std::sort(B.classes.begin(), B.classes.end(), [](const BasisClass& a, const BasisClass& b) {
    return a.degree != b.degree ? a.degree < b.degree : a.diagram < b.diagram;
  });
  for (int i = 0; i < static_cast<int>(B.classes.size()); ++i) {
    B.index[B.classes[i].diagram] = i;
    B.top_dim = std::max(B.top_dim, B.classes[i].degree);
    if (B.classes[i].degree == 0) B.unit = i;
  }
  if (B.unit < 0) throw std::logic_error("no degree-0 basis class");

  B.factors.resize(B.classes.size());
  for (int i = 0; i < static_cast<int>(B.classes.size()); ++i) {
    if (B.classes[i].degree == 0) continue;
    for (const CloudDiagram& f : one_cell_factors(ot, B.classes[i].diagram)) {
      auto id = B.find(f);
      if (!id) throw std::logic_error("factor of a critical class is not critical");
      B.factors[i].push_back(*id);
    }
  }
  return B;
}

namespace {

std::vector<int> factor_iotas(const OrderedTree& ot, const Basis& B, const std::vector<int>& ids) {
  std::vector<int> out;
  for (int id : ids) out.push_back(ot.edge(B.classes[id].diagram.edges[0]).iota);
  return out;
}

}  // namespace

namespace {

BasisProduct multiply_basis_uncached(const OrderedTree& ot, const Basis& B, int a, int b);

}  // namespace

BasisProduct multiply_basis(const OrderedTree& ot, const Basis& B, int a, int b) {
  const std::uint64_t key =
      (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
      static_cast<std::uint32_t>(b);
  {
    std::lock_guard<std::mutex> lock(*B.product_mutex);
    auto it = B.product_cache.find(key);
    if (it != B.product_cache.end()) return it->second;
  }
  BasisProduct p = multiply_basis_uncached(ot, B, a, b);
  std::lock_guard<std::mutex> lock(*B.product_mutex);
  B.product_cache.emplace(key, p);
  return p;
}

namespace {

BasisProduct multiply_basis_uncached(const OrderedTree& ot, const Basis& B, int a, int b) {
  std::vector<int> combined = B.factors[a];
  combined.insert(combined.end(), B.factors[b].begin(), B.factors[b].end());
  if (combined.empty()) return {BasisProduct::Kind::Term, B.unit, 1, {}};

  {
    std::vector<int> sorted = combined;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      return {};  // repeated odd class: phi^2 = 0
  }
  if (static_cast<int>(combined.size()) > B.top_dim) return {};

  // Koszul sign of merging the two iota-sorted factor lists; the odd
  // degree-1 classes anticommute.
  const auto ia = factor_iotas(ot, B, B.factors[a]);
  const auto ib = factor_iotas(ot, B, B.factors[b]);
  long inversions = 0;
  for (int x : ia) {
    for (int y : ib) {
      if (x == y) return {};  // two distinct classes at one vertex: no upper bound
      if (x > y) ++inversions;
    }
  }

  std::vector<CloudDiagram> diagrams;
  for (int id : combined) diagrams.push_back(B.classes[id].diagram);
  auto lub = lub_of_factors(ot, diagrams, B.n);
  if (!lub) return {};
  auto hit = B.find(*lub);
  if (!hit) {
    BasisProduct p;
    p.kind = BasisProduct::Kind::Indeterminate;
    p.lub = *lub;
    return p;
  }
  return {BasisProduct::Kind::Term, *hit, inversions % 2 == 0 ? 1 : -1, {}};
}

}  // namespace

void Cochain::add(int basis, const Rational& coeff) {
  auto it = terms.find(basis);
  if (it == terms.end()) {
    if (coeff != 0) terms[basis] = coeff;
    return;
  }
  it->second += coeff;
  if (it->second == 0) terms.erase(it);
}

Cochain multiply_as_cochain(const OrderedTree& ot, const Basis& B, int a, int b) {
  Cochain out;
  BasisProduct p = multiply_basis(ot, B, a, b);
  if (p.kind == BasisProduct::Kind::Indeterminate)
    throw IndeterminateProduct("product has a least upper bound with no critical cell");
  if (p.kind == BasisProduct::Kind::Term) out.add(p.basis, p.sign);
  return out;
}

void TensorElement::add(int a, int b, const Rational& coeff) {
  auto key = std::make_pair(a, b);
  auto it = terms.find(key);
  if (it == terms.end()) {
    if (coeff != 0) terms[key] = coeff;
    return;
  }
  it->second += coeff;
  if (it->second == 0) terms.erase(it);
}

TensorElement tensor_single(int a, int b, Rational coeff) {
  TensorElement t;
  t.add(a, b, coeff);
  return t;
}

TensorElement tensor_add(const TensorElement& x, const TensorElement& y) {
  TensorElement out = x;
  for (const auto& [key, c] : y.terms) out.add(key.first, key.second, c);
  return out;
}

TensorElement tensor_multiply(const OrderedTree& ot, const Basis& B, const TensorElement& x,
                              const TensorElement& y) {
  TensorElement out;
  for (const auto& [kx, cx] : x.terms) {
    for (const auto& [ky, cy] : y.terms) {
      BasisProduct left = multiply_basis(ot, B, kx.first, ky.first);
      BasisProduct right = multiply_basis(ot, B, kx.second, ky.second);
      if (left.kind == BasisProduct::Kind::Zero || right.kind == BasisProduct::Kind::Zero)
        continue;
      if (left.kind == BasisProduct::Kind::Indeterminate)
        throw IndeterminateProduct("tensor product left component is indeterminate");
      if (right.kind == BasisProduct::Kind::Indeterminate)
        throw IndeterminateProduct("tensor product right component is indeterminate");
      // (a (x) b)(a' (x) b') = (-1)^{|a'| |b|} aa' (x) bb'
      const long swap = static_cast<long>(B.degree(ky.first)) * B.degree(kx.second);
      Rational coeff = cx * cy * left.sign * right.sign;
      if (swap % 2 != 0) coeff = -coeff;
      out.add(left.basis, right.basis, coeff);
    }
  }
  return out;
}

namespace {

std::string class_label(const OrderedTree& ot, const Basis& B, int id) {
  const CloudDiagram& d = B.classes[id].diagram;
  std::string out = "phi[";
  for (std::size_t i = 0; i < d.edges.size(); ++i) {
    if (i) out += "&";
    out += element_label(ot, ot.V() + d.edges[i]);
  }
  out += "|";
  for (std::size_t i = 0; i < d.clouds.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(d.clouds[i].second);
  }
  return out + "]";
}

std::string coeff_label(const Rational& r) {
  std::string s = r > 0 ? "+" : "-";
  Rational mag = r > 0 ? r : Rational(-r);
  if (mag != 1) s += mag.str() + "*";
  return s;
}

}  // namespace

std::string cochain_to_string(const OrderedTree& ot, const Basis& B, const Cochain& c) {
  if (c.terms.empty()) return "0";
  std::string out;
  for (const auto& [id, coeff] : c.terms) out += coeff_label(coeff) + class_label(ot, B, id);
  return out;
}

std::string tensor_to_string(const OrderedTree& ot, const Basis& B, const TensorElement& t) {
  if (t.terms.empty()) return "0";
  std::string out;
  for (const auto& [key, coeff] : t.terms) {
    out += coeff_label(coeff) + class_label(ot, B, key.first) + "(x)" +
           class_label(ot, B, key.second);
  }
  return out;
}

TensorElement zero_divisor(const Basis& B, int a) {
  if (B.degree(a) < 1) throw std::invalid_argument("zero_divisor needs a positive-degree class");
  TensorElement t;
  t.add(a, B.unit, 1);
  t.add(B.unit, a, -1);
  return t;
}

Cochain cup_evaluate(const OrderedTree& ot, const Basis& B, const TensorElement& x) {
  Cochain out;
  for (const auto& [key, c] : x.terms) {
    BasisProduct p = multiply_basis(ot, B, key.first, key.second);
    if (p.kind == BasisProduct::Kind::Indeterminate)
      throw IndeterminateProduct("cup evaluation hit an indeterminate product");
    if (p.kind == BasisProduct::Kind::Term) out.add(p.basis, c * p.sign);
  }
  return out;
}

std::optional<std::pair<Cell, Cell>> search_disjoint_critical_pair(const OrderedTree& ot, int n,
                                                                   int k, std::uint64_t cap) {
  const auto cells = critical_cells(ot, n, k, cap);
  std::vector<std::vector<CloudDiagram>> factorizations;
  factorizations.reserve(cells.size());
  for (const Cell& c : cells)
    factorizations.push_back(one_cell_factors(ot, cloud_diagram(ot, c)));

  std::uint64_t tried = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (std::size_t j = i + 1; j < cells.size(); ++j) {
      if (++tried > cap) throw CapExceeded("critical pair search cap exceeded");
      bool disjoint = true;
      for (const auto& fi : factorizations[i]) {
        for (const auto& fj : factorizations[j]) {
          if (fi == fj) {
            disjoint = false;
            break;
          }
        }
        if (!disjoint) break;
      }
      if (disjoint) return std::make_pair(cells[i], cells[j]);
    }
  }
  return std::nullopt;
}

namespace {

TensorElement zero_divisor_product(const OrderedTree& ot, const Basis& B,
                                   const std::vector<int>& factor_ids) {
  TensorElement acc = tensor_single(B.unit, B.unit);
  for (int id : factor_ids) acc = tensor_multiply(ot, B, acc, zero_divisor(B, id));
  return acc;
}

}  // namespace

int zdcl_lower_bound(const OrderedTree& ot, int n, std::uint64_t cap) {
  Basis B = compute_basis(ot, n, cap);
  if (B.top_dim == 0) return 0;

  const int k = B.top_dim;
  if (auto pair = search_disjoint_critical_pair(ot, n, k, cap)) {
    auto ids = [&](const Cell& c) {
      auto id = B.find(cloud_diagram(ot, c));
      if (!id) throw std::logic_error("critical cell missing from basis");
      return B.factors[*id];
    };
    std::vector<int> all = ids(pair->first);
    const std::vector<int> second = ids(pair->second);
    all.insert(all.end(), second.begin(), second.end());
    if (!zero_divisor_product(ot, B, all).zero()) return 2 * k;
  }

  // Fallback: longest verified product over pairs of basis classes with
  // disjoint factor collections; a single zero-divisor is always nonzero.
  // Best-effort with a fixed deterministic budget.
  int best = 1;
  std::uint64_t tried = 0;
  const std::uint64_t budget = std::min<std::uint64_t>(cap, 2000);
  for (int p = static_cast<int>(B.classes.size()) - 1; p >= 0; --p) {
    if (B.degree(p) == 0) continue;
    for (int q = p; q >= 0; --q) {
      if (B.degree(q) == 0) continue;
      const int len = B.degree(p) + B.degree(q);
      if (len <= best || len >= 2 * k) continue;
      if (++tried > budget) return best;
      std::vector<int> all = B.factors[p];
      all.insert(all.end(), B.factors[q].begin(), B.factors[q].end());
      {
        std::vector<int> sorted = all;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
      }
      try {
        if (!zero_divisor_product(ot, B, all).zero()) best = std::max(best, len);
      } catch (const IndeterminateProduct&) {
        // cannot verify this pair; skip it
      }
    }
  }
  return best;
}

namespace {

struct CellHash {
  std::size_t operator()(const Cell& c) const {
    std::size_t h = 1469598103934665603ULL;
    for (int m : c.members) h = (h ^ static_cast<std::size_t>(m + 1)) * 1099511628211ULL;
    return h;
  }
};

}  // namespace

std::vector<long long> homology_oracle(const OrderedTree& ot, int n, int max_dim,
                                       std::uint64_t cap) {
  const int need = std::min(max_dim + 1, n);
  std::set<int> dims;
  for (int k = 0; k <= need; ++k) dims.insert(k);

  std::vector<std::vector<Cell>> cells(need + 1);
  enumerate_cells(ot, n, dims,
                  [&](const Cell& c) { cells[cell_dim(ot, c)].push_back(c); }, cap);

  std::vector<std::unordered_map<Cell, int, CellHash>> ix(need + 1);
  for (int k = 0; k <= need; ++k) {
    for (int i = 0; i < static_cast<int>(cells[k].size()); ++i) ix[k][cells[k][i]] = i;
  }

  // rank of each boundary map d_k : C_k -> C_{k-1}
  std::vector<std::size_t> rank(need + 2, 0);
  for (int k = 1; k <= need; ++k) {
    if (cells[k].empty()) continue;
    SparseIntMatrix mat;
    mat.cols = static_cast<int>(cells[k - 1].size());
    for (const Cell& c : cells[k]) {
      std::vector<std::pair<int, BigInt>> row;
      int edge_pos = 0;
      for (int m : c.members) {
        if (!element_is_edge(ot, m)) continue;
        const auto& e = ot.edge(element_edge(ot, m));
        const int sgn = edge_pos % 2 == 0 ? 1 : -1;
        for (auto [vert, s] : {std::make_pair(e.tau, sgn), std::make_pair(e.iota, -sgn)}) {
          Cell face = c;
          face.members.erase(std::find(face.members.begin(), face.members.end(), m));
          face.members.insert(
              std::upper_bound(face.members.begin(), face.members.end(), vert), vert);
          auto it = ix[k - 1].find(face);
          if (it == ix[k - 1].end()) throw std::logic_error("boundary face not enumerated");
          row.push_back({it->second, s});
        }
        ++edge_pos;
      }
      std::sort(row.begin(), row.end());
      mat.add_row(std::move(row));
    }
    rank[k] = exact_rank(mat);
  }

  std::vector<long long> betti(max_dim + 1, 0);
  for (int k = 0; k <= max_dim; ++k) {
    const long long ck = k <= need ? static_cast<long long>(cells[k].size()) : 0;
    const long long rk = k <= need ? static_cast<long long>(rank[k]) : 0;
    const long long rk1 = k + 1 <= need ? static_cast<long long>(rank[k + 1]) : 0;
    betti[k] = ck - rk - rk1;
  }
  return betti;
}

}  // namespace braidscape
