#include "privm/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "privm/errors.hpp"

namespace privm {

double WeightedMeasure::total() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

double WeightedMeasure::tv_norm() const {
  double s = 0.0;
  for (double w : weights) s += std::fabs(w);
  return 0.5 * s;
}

bool WeightedMeasure::is_probability(double tol) const {
  for (double w : weights) {
    if (w < -tol) return false;
  }
  return std::fabs(total() - 1.0) <= tol;
}

void check_measure(const WeightedMeasure& mu) {
  if (!mu.space) {
    throw argument_error("measure must reference a space");
  }
  if (mu.support.size() != mu.weights.size()) {
    throw argument_error("support and weights must have equal length");
  }
  int prev = -1;
  for (std::size_t i = 0; i < mu.support.size(); ++i) {
    const int idx = mu.support[i];
    if (idx <= prev || idx >= mu.space->size()) {
      throw argument_error("support must be strictly increasing space indices");
    }
    if (!std::isfinite(mu.weights[i])) {
      throw argument_error("weights must be finite");
    }
    prev = idx;
  }
}

WeightedMeasure make_measure(SpacePtr space, std::vector<int> support,
                             std::vector<double> weights) {
  if (support.size() != weights.size()) {
    throw argument_error("support and weights must have equal length");
  }
  std::vector<std::size_t> order(support.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return support[a] < support[b]; });
  WeightedMeasure mu;
  mu.space = std::move(space);
  for (std::size_t k : order) {
    if (!mu.support.empty() && mu.support.back() == support[k]) {
      mu.weights.back() += weights[k];
    } else {
      mu.support.push_back(support[k]);
      mu.weights.push_back(weights[k]);
    }
  }
  check_measure(mu);
  return mu;
}

double tv_distance(const WeightedMeasure& mu, const WeightedMeasure& nu) {
  if (mu.space != nu.space) {
    throw argument_error("measures must share a space");
  }
  double s = 0.0;
  std::size_t i = 0, j = 0;
  while (i < mu.support.size() || j < nu.support.size()) {
    if (j == nu.support.size() ||
        (i < mu.support.size() && mu.support[i] < nu.support[j])) {
      s += std::fabs(mu.weights[i]);
      ++i;
    } else if (i == mu.support.size() || nu.support[j] < mu.support[i]) {
      s += std::fabs(nu.weights[j]);
      ++j;
    } else {
      s += std::fabs(mu.weights[i] - nu.weights[j]);
      ++i;
      ++j;
    }
  }
  return 0.5 * s;
}

}  // namespace privm
