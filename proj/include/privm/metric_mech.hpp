#pragma once

#include "privm/folding.hpp"
#include "privm/interval.hpp"
#include "privm/measure.hpp"
#include "privm/net.hpp"
#include "privm/rng.hpp"

namespace privm {

// Per-run bookkeeping for the metric mechanism. tour_length and mst_length
// are in the space's own units; tsp_bound is the covering-integral upper
// bound on any net tour; accuracy_bound is the theory curve
//   2*delta + (1/alpha) * ln^{3/2}(covering(delta)) * integral_delta^diam covering(x) dx
// with unit constant, recorded so benchmarks can fit the realized constant.
struct MechanismDiagnostics {
  double alpha = 0.0;
  double delta = 0.0;
  double tour_length = 0.0;
  double mst_length = 0.0;
  double tsp_bound = 0.0;
  double accuracy_bound = 0.0;
  int net_size = 0;
};

// Everything one run of the metric mechanism produces. `output` is a
// probability measure supported on the net centers (weights may be zero).
// `folding` orders the net centers along a spanning-tree walk; its point k
// is net.centers[k]. `core` is the one-dimensional run on the folded,
// rescaled positions, kept for audits and replay.
struct MetricMechanismResult {
  WeightedMeasure output;
  FoldingMap folding;
  Net net;
  MechanismDiagnostics diagnostics;
  IntervalMechanismResult core;
};

// Resolution at which the mechanism should quantize, given the privacy
// scale: intervals use the uniform grid of floor(alpha) cells; cubes use
// the closed form (ln^{3/2}(alpha)/alpha)^{1/d} capped at 1/2; matrix
// spaces minimize the accuracy bound over dyadic fractions of the
// diameter, ties toward the coarser resolution. Deterministic; requires
// alpha >= 2.
double choose_delta(const FiniteMetricSpace& space, double alpha);

// The private measure on a general space:
//   1. cover the space at resolution delta (interval/cube: midpoint grids
//      appended to the space; matrix spaces: greedy covering subset) and
//      move each atom of mu onto its nearest center,
//   2. walk the centers along a depth-first spanning-tree tour and place
//      them on a line at their cumulative tour positions, rescaled to
//      [0,1],
//   3. run the one-dimensional core (pad to a power of two, add one
//      multiscale noise draw at scale 2/alpha, project to a probability),
//   4. move any mass on padding slots to the nearest real position (ties
//      toward the lower position) and carry the result back to the
//      centers through the tour order.
// On one-dimensional interval spaces the whole pipeline is the interval
// mechanism itself (a line folds onto itself in coordinate order), run at
// its own grid of floor(alpha) midpoints, so results agree exactly with
// private_measure_interval under the same seed; alpha >= 2 is required
// there. Other spaces accept any positive alpha. Throws argument_error
// for invalid alpha/delta or non-probability input; resource_error if the
// grid would exceed 2^20 points.
MetricMechanismResult private_measure_metric(const WeightedMeasure& mu,
                                             double alpha, double delta,
                                             CounterRng& rng);

}  // namespace privm
