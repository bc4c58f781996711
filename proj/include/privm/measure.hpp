#pragma once

#include <vector>

#include "privm/metric_space.hpp"

namespace privm {

// Finitely supported signed measure on a shared space. Support indices are
// strictly increasing; weights align with them and may be negative.
struct WeightedMeasure {
  SpacePtr space;
  std::vector<int> support;
  std::vector<double> weights;

  double total() const;

  // Half the sum of absolute weights (total variation of a signed measure).
  double tv_norm() const;

  bool is_probability(double tol = 1e-9) const;
};

// Validates the structural invariants and throws argument_error on failure.
void check_measure(const WeightedMeasure& mu);

// Measure with the given support/weights after sorting by index and merging
// duplicates. Convenience constructor for callers holding unsorted atoms.
WeightedMeasure make_measure(SpacePtr space, std::vector<int> support,
                             std::vector<double> weights);

// Half the total absolute weight difference, treating missing atoms as zero.
// Both measures must live on the same space.
double tv_distance(const WeightedMeasure& mu, const WeightedMeasure& nu);

}  // namespace privm
