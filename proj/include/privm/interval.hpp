#pragma once

#include <vector>

#include "privm/haar.hpp"
#include "privm/measure.hpp"
#include "privm/net.hpp"
#include "privm/rng.hpp"

namespace privm {

// Everything one run of the interval mechanism produces. `output` is the
// released probability measure, supported on the padded grid recorded in
// `net`. `signed_intermediate` is the quantized input plus noise before the
// projection step, kept for audits, and `noise` is the exact draw that was
// added, so the run can be replayed and its density reasoned about.
struct IntervalMechanismResult {
  WeightedMeasure output;
  WeightedMeasure signed_intermediate;
  SuperregularNoise noise;
  Net net;
};

// Coordinates for growing a sorted support inside [0,1] to `target_size`
// points: repeatedly split the widest gap (boundary gaps [0, first] and
// [last, 1] included) at its midpoint, ties going to the leftmost gap. The
// returned points are distinct from the support and from each other.
// Throws argument_error if the support is unsorted, outside [0,1], or if
// no positive gap remains to split.
std::vector<double> padding_coordinates(const std::vector<double>& support,
                                        int target_size);

// Adds one draw of the multiscale noise to the weights of a measure on a
// one-dimensional coordinate support of power-of-two size, listed in
// nondecreasing coordinate order. Weight i receives scaled increment U_i.
// The result is signed; totals move by the sum of the increments.
WeightedMeasure perturb_signed(const WeightedMeasure& mu, double alpha,
                               CounterRng& rng);

// Nearest probability measure on the same support, where distance is the
// transport cost on the line: minimizes
//   sum_k (omega_{k+1} - omega_k) * |chat_k - c_k|
// over nondecreasing cumulative weights chat in [0,1] with chat_n = 1,
// c being the input's cumulative weights. Solved by pooling adjacent
// violators with weighted lower medians, then clamping to [0,1]; among
// optimal solutions the cumulative vector is the lexicographically least.
// Slots with zero gap to the next coordinate copy the previous cumulative
// value. Input weights may be signed.
WeightedMeasure project_to_probability(const WeightedMeasure& nu);

// The full mechanism on a probability measure over a one-dimensional
// coordinate space inside [0,1], at privacy scale alpha >= 2:
//   1. build the uniform net of n = floor(alpha) cell midpoints (i+0.5)/n,
//      a (1/n)-covering of the interval,
//   2. move each atom of mu onto its nearest net point,
//   3. pad the net to the next power of two with widest-gap midpoints
//      (weight zero), so the noise basis fits exactly,
//   4. add one multiscale noise draw at scale 2/alpha,
//   5. project back to a probability measure on the padded grid.
// The returned net covers at radius 1/n and lists the padded grid, in
// coordinate order, as extra points appended to mu's space; the output may
// place mass on padding points, which is fine since accuracy is measured
// in transport distance on the interval. Consumes exactly one noise draw
// from rng. Throws argument_error for non-probability input, spaces
// without 1-d coordinates, or alpha < 2; resource_error if alpha implies a
// grid beyond 2^20 points.
IntervalMechanismResult private_measure_interval(const WeightedMeasure& mu,
                                                 double alpha,
                                                 CounterRng& rng);

}  // namespace privm
