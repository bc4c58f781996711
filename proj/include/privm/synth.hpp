#pragma once

#include <optional>
#include <vector>

#include "privm/measure.hpp"
#include "privm/metric_mech.hpp"
#include "privm/rng.hpp"

namespace privm {

// A synthetic dataset: m points given as indices into a metric space,
// together with a record of how it was produced.
struct SyntheticDataset {
  SpacePtr space;           // the space the point indices refer to
  std::vector<int> points;  // exactly m entries, sorted by space index
  int m = 0;                // number of synthetic points
  double kappa = 0.0;       // rounding mass shifted onto the first atom
  double epsilon = 0.0;     // per-point privacy parameter (0 when built
                            // directly from a measure)
  MechanismDiagnostics provenance;  // parameters of the privatization run
                                    // (zeroed when built directly)
};

// The empirical probability measure of the dataset: weight 1/m on each
// point, duplicates merged.
WeightedMeasure empirical_measure(const SyntheticDataset& data);

// Rounds a probability measure to an empirical measure of exactly m points.
// Each atom with weight w contributes floor(m*w + 1e-9) copies of its index;
// the leftover count (kappa*m points) is assigned to the first atom with
// positive weight, in index order.  Zero-weight atoms contribute nothing.
// If nu has r positive atoms, the result is within (r/m)*diameter of nu in
// transport distance.  Throws argument_error for m < 1 or a non-probability
// input.
SyntheticDataset weights_to_empirical(const WeightedMeasure& nu, int m);

// Smallest dataset size m >= 1 whose rounding error bound (r/m)*diam is at
// most budget: m = ceil(r*diam/budget), clamped below by 1.  Throws
// argument_error unless r >= 0, diam >= 0, and budget > 0 (all finite), and
// resource_error if the required m exceeds 2^24 points.
int choose_m(int r, double diam, double budget);

// End-to-end private synthetic data: forms the empirical measure of the
// input points, privatizes it with private_measure_metric at alpha =
// epsilon * n, and rounds the result to an m-point dataset with m chosen so
// the rounding error stays below the net resolution.  When delta is not
// supplied it is picked by choose_delta at that alpha.  The returned points
// index into the mechanism's net space (for cube spaces, the input space
// augmented with the grid centers; the original indices keep their meaning).
SyntheticDataset dp_synthetic_data(const SpacePtr& space,
                                   const std::vector<int>& data,
                                   double epsilon,
                                   std::optional<double> delta,
                                   CounterRng& rng);

}  // namespace privm
