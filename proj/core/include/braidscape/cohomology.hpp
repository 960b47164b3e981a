#pragma once

#include "braidscape/cells.hpp"
#include "braidscape/clouds.hpp"
#include "braidscape/rational.hpp"
#include "braidscape/tree.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace braidscape {

/// A factor collection had a least upper bound whose class carries no
/// critical cell below the top dimension; the product value is not pinned
/// by the ring relations, so it is reported instead of guessed.
struct IndeterminateProduct : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One rational-cohomology basis class: an equivalence class containing a
/// (unique) critical cell, named by its cloud diagram.
struct BasisClass {
  CloudDiagram diagram;
  int degree = 0;
};

/// phi_a . phi_b in the critical-cocycle basis: zero, +/- one basis class,
/// or indeterminate (see IndeterminateProduct).
struct BasisProduct {
  enum class Kind { Zero, Term, Indeterminate } kind = Kind::Zero;
  int basis = -1;
  int sign = 1;
  CloudDiagram lub;  // populated for Indeterminate
};

/// The critical-cocycle basis of H*(UD^n) for one subdivided tree, plus the
/// 1-cell factor decomposition of every class.
struct Basis {
  int n = 0;
  int top_dim = 0;  // largest degree with a basis class
  std::vector<BasisClass> classes;  // sorted by (degree, diagram)
  std::unordered_map<CloudDiagram, int, CloudDiagramHash> index;
  std::vector<std::vector<int>> factors;  // basis ids of the 1-cell factors
  int unit = -1;                          // the degree-0 class
  // memo for multiply_basis, guarded for concurrent readers
  mutable std::unordered_map<std::uint64_t, BasisProduct> product_cache;
  mutable std::shared_ptr<std::mutex> product_mutex = std::make_shared<std::mutex>();

  int degree(int id) const { return classes[id].degree; }
  std::optional<int> find(const CloudDiagram& d) const;
};

Basis compute_basis(const OrderedTree& ot, int n, std::uint64_t cap = default_cell_cap());

BasisProduct multiply_basis(const OrderedTree& ot, const Basis& B, int a, int b);

/// Homogeneous-or-zero rational combination of basis classes.
struct Cochain {
  std::map<int, Rational> terms;

  bool zero() const { return terms.empty(); }
  void add(int basis, const Rational& coeff);
};

Cochain multiply_as_cochain(const OrderedTree& ot, const Basis& B, int a, int b);

/// Element of H* (x) H*; scalars ride on the degree-0 unit class.
struct TensorElement {
  std::map<std::pair<int, int>, Rational> terms;

  bool zero() const { return terms.empty(); }
  void add(int a, int b, const Rational& coeff);
};

TensorElement tensor_single(int a, int b, Rational coeff = 1);
TensorElement tensor_add(const TensorElement& x, const TensorElement& y);
TensorElement tensor_multiply(const OrderedTree& ot, const Basis& B, const TensorElement& x,
                              const TensorElement& y);

/// gamma (x) 1 - 1 (x) gamma, a zero-divisor for any positive degree.
TensorElement zero_divisor(const Basis& B, int a);

/// Image of the tensor element under the cup-product evaluation map.
Cochain cup_evaluate(const OrderedTree& ot, const Basis& B, const TensorElement& x);

/// Signed sums of diagram labels, e.g. "+phi[e:c-y|0,1,0]".
std::string cochain_to_string(const OrderedTree& ot, const Basis& B, const Cochain& c);
std::string tensor_to_string(const OrderedTree& ot, const Basis& B, const TensorElement& t);

/// A pair of critical k-cells whose 1-cell factor collections are disjoint
/// as classes, or nullopt after an exhaustive pair search.
std::optional<std::pair<Cell, Cell>> search_disjoint_critical_pair(
    const OrderedTree& ot, int n, int k, std::uint64_t cap = default_cell_cap());

/// Longest verified nonzero product of zero-divisors (2k when the disjoint
/// top-dimension pair exists; a best-effort shorter product otherwise).
int zdcl_lower_bound(const OrderedTree& ot, int n, std::uint64_t cap = default_cell_cap());

/// Rational Betti numbers of UD^n by exact integer rank of the cube-complex
/// boundary maps; independent of the critical-cell machinery.
std::vector<long long> homology_oracle(const OrderedTree& ot, int n, int max_dim,
                                       std::uint64_t cap = default_cell_cap());

}  // namespace braidscape
