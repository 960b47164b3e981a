#pragma once

#include "braidscape/cells.hpp"
#include "braidscape/clouds.hpp"
#include "braidscape/planner.hpp"
#include "braidscape/tree.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace braidscape::testing {

std::uint64_t global_seed();
void set_global_seed(std::uint64_t seed);

// Corpus trees (same shapes as the files under data/).
Tree path_tree(int edges = 2);
Tree y_tree();
Tree h_tree();
Tree star_tree(int leaves);          // center degree = leaves + 1 (with the stem)
Tree caterpillar_tree(int spine);    // `spine` degree-3 vertices in a row
Tree double_star_tree();             // two degree-4 vertices

// Independent test oracles: brute force over the full complex.
std::vector<Cell> brute_critical_cells(const OrderedTree& ot, int n, int k);
std::vector<CloudDiagram> all_class_diagrams(const OrderedTree& ot, int n);
std::vector<CloudDiagram> all_class_diagrams(const OrderedTree& ot, int n, int dim);

// Upper bounds of a factor collection found by scanning every enumerated
// class; independent of the linear-system route in lub_of_factors.
std::vector<CloudDiagram> brute_upper_bounds(const OrderedTree& ot,
                                             const std::vector<CloudDiagram>& factors,
                                             const std::vector<CloudDiagram>& classes);

// Random valid configuration with n points (rejection sampling).
Configuration random_configuration(const OrderedTree& ot, int n, std::mt19937_64& rng,
                                   bool ordered = false);

}  // namespace braidscape::testing
