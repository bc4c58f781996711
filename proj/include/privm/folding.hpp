#pragma once

#include <vector>

#include "privm/metric_space.hpp"

namespace privm {

// Rooted spanning tree over a space's points. parent[i] is the parent point
// index, -1 at the root (point 0). total_length sums the edge distances.
struct SpanningTree {
  SpacePtr space;
  std::vector<int> parent;
  double total_length = 0.0;
};

// Hamiltonian path over the points together with cumulative positions along
// it: positions[0] = 0 and each step advances by the distance between
// consecutive points. Mapping position k to point order[k] is 1-Lipschitz
// from the line into the space, by the triangle inequality.
struct FoldingMap {
  SpacePtr space;
  std::vector<int> order;
  std::vector<double> positions;

  double total() const { return positions.empty() ? 0.0 : positions.back(); }
};

// Exact minimum spanning tree of the complete distance graph (Prim's
// algorithm), rooted at point 0. Ties resolve toward lower point indices.
SpanningTree minimum_spanning_tree(SpacePtr space);

// Spanning tree built level by level from nested greedy covering sets at
// dyadic radii, each new point attached to the nearest point of the previous
// level. Longer than the minimum tree in general, but its length is capped
// by the covering-integral envelope below.
SpanningTree chaining_tree(SpacePtr space);

// 8 * sum over dyadic levels e_j of (e_j - e_{j+1}) * (count(e_j) - 1),
// where count is the greedy covering-set size. An upper bound on the
// chaining tree length, hence on the minimum spanning tree length.
double chaining_envelope(const FiniteMetricSpace& space);

// Depth-first preorder walk of the tree with shortcutting: a Hamiltonian
// path of length at most twice the tree length. Children are visited
// nearest-first, ties toward lower indices.
FoldingMap tour_order(const SpanningTree& tree);

// Upper bound on the tour length of any delta-net of the space (and of the
// space itself): 16 times a dyadic upper sum of the excess covering-number
// integral, with the tail below the grid cutoff charged at the saturated
// count.
double tsp_integral_bound(const FiniteMetricSpace& space, double delta);

}  // namespace privm
