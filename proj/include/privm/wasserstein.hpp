#pragma once

#include "privm/measure.hpp"

namespace privm {

// Transport distance between measures on the line via the cumulative
// distribution formula: the integral of |F_mu - F_nu| over [0, 1] (extended
// to the last atom when a support point exceeds 1). Accepts signed measures.
// Both measures must live on one-dimensional coordinate spaces; they may
// reference different space objects since only coordinates enter.
double wasserstein1_line(const WeightedMeasure& mu, const WeightedMeasure& nu);

// Exact optimal transport cost between two nonnegative measures with equal
// totals (within 1e-9), solved as a min-cost flow on the bipartite support
// graph. Instances with more than 2000 combined support atoms are refused.
// Measures must share a space, or both live on coordinate spaces of equal
// dimension.
double wasserstein1_exact(const WeightedMeasure& mu, const WeightedMeasure& nu);

}  // namespace privm
