#pragma once

#include <vector>

#include "privm/measure.hpp"
#include "privm/metric_space.hpp"

namespace privm {

// Covering net over a space: every point lies within `radius` of its
// assigned center. `centers` are point indices in increasing order and
// `cell[i]` is the position (into `centers`) of point i's nearest center,
// ties broken toward the lowest center index.
struct Net {
  SpacePtr space;
  std::vector<int> centers;
  double radius = 0.0;
  std::vector<int> cell;

  int center_of(int point) const { return centers[cell[point]]; }
};

// Farthest-point traversal of a space. order is a permutation of the point
// indices starting at index 0; radii[k] is the distance from order[k] to the
// points chosen before it (radii[0] is infinity). The radii are
// non-increasing, so every prefix of the order is simultaneously a covering
// set at the next radius and a separated set at its own.
struct GreedyTraversal {
  std::vector<int> order;
  std::vector<double> radii;

  // Smallest number of leading points whose covering radius is <= r.
  int prefix_size(double r) const;
};

GreedyTraversal greedy_traversal(const FiniteMetricSpace& space);

// Net from the shortest traversal prefix that covers at the given radius.
// The chosen centers are pairwise more than `radius` apart.
Net build_net(SpacePtr space, double radius);

// Net with caller-supplied centers; validates that they cover at the given
// radius (within 1e-12 slack) and computes the cell assignment.
Net net_from_centers(SpacePtr space, std::vector<int> centers, double radius);

// Moves the mass of each proximity cell onto its center. The result is
// supported on every net center (weights may be zero), so downstream
// perturbation sees the full net. Total mass and probability status are
// preserved, and total variation never grows.
WeightedMeasure quantize(const WeightedMeasure& mu, const Net& net);

// Greedy covering-set size at the given radius: an upper bound on the true
// covering number and simultaneously a lower bound on the packing number,
// since the same prefix is pairwise separated.
int covering_number_upper(const FiniteMetricSpace& space, double radius);
int packing_number_lower(const FiniteMetricSpace& space, double radius);

// Upper Riemann sum of the covering-number integral over [delta, hi] on a
// dyadic grid: pieces [x/2, x] from hi downward, each charged the greedy
// covering count at its left endpoint.
double covering_integral_above(const GreedyTraversal& t, double delta,
                               double hi);

// Upper Riemann sum of the excess-covering integral over (0, hi]: dyadic
// pieces charged (count - 1) at the left endpoint, closed off exactly once
// the count saturates at the number of distinct points.
double excess_covering_integral(const GreedyTraversal& t, double hi);

}  // namespace privm
