#include "privm/synth.hpp"

#include <cmath>
#include <cstdint>
#include <limits>

#include "privm/errors.hpp"

namespace privm {

namespace {

constexpr int kMaxSyntheticPoints = 1 << 24;

}  // namespace

WeightedMeasure empirical_measure(const SyntheticDataset& data) {
  if (!data.space) {
    throw argument_error("synthetic dataset must reference a space");
  }
  if (data.m < 1 || data.points.size() != static_cast<size_t>(data.m)) {
    throw argument_error("synthetic dataset size is inconsistent");
  }
  const double w = 1.0 / static_cast<double>(data.m);
  std::vector<double> weights(data.points.size(), w);
  return make_measure(data.space, data.points, weights);
}

SyntheticDataset weights_to_empirical(const WeightedMeasure& nu, int m) {
  check_measure(nu);
  if (m < 1) {
    throw argument_error("dataset size must be at least 1");
  }
  if (!nu.is_probability(1e-9)) {
    throw argument_error("input must be a probability measure");
  }

  const size_t n = nu.support.size();
  std::vector<std::int64_t> counts(n, 0);
  std::int64_t assigned = 0;
  for (size_t i = 0; i < n; ++i) {
    if (nu.weights[i] <= 0.0) continue;
    counts[i] = static_cast<std::int64_t>(
        std::floor(static_cast<double>(m) * nu.weights[i] + 1e-9));
    assigned += counts[i];
  }

  // Leftover (or, for adversarial weights at the tolerance edge, excess)
  // count goes to the first atom with positive weight.
  const std::int64_t deficit = static_cast<std::int64_t>(m) - assigned;
  size_t first = n;
  for (size_t i = 0; i < n; ++i) {
    if (nu.weights[i] > 0.0) {
      first = i;
      break;
    }
  }
  if (first == n) {
    throw argument_error("probability measure has no positive atom");
  }
  counts[first] += deficit;
  if (counts[first] < 0) {
    throw argument_error("weights are too inconsistent to round");
  }

  SyntheticDataset out;
  out.space = nu.space;
  out.m = m;
  out.kappa = static_cast<double>(deficit) / static_cast<double>(m);
  out.points.reserve(static_cast<size_t>(m));
  for (size_t i = 0; i < n; ++i) {
    for (std::int64_t c = 0; c < counts[i]; ++c) {
      out.points.push_back(nu.support[i]);
    }
  }
  return out;
}

int choose_m(int r, double diam, double budget) {
  if (r < 0) {
    throw argument_error("atom count must be nonnegative");
  }
  if (!std::isfinite(diam) || diam < 0.0) {
    throw argument_error("diameter must be a nonnegative finite number");
  }
  if (!std::isfinite(budget) || budget <= 0.0) {
    throw argument_error("rounding budget must be a positive finite number");
  }
  const double need = static_cast<double>(r) * diam / budget;
  if (need >= static_cast<double>(kMaxSyntheticPoints)) {
    throw resource_error("required dataset size is too large");
  }
  const double m = std::ceil(need);
  return m < 1.0 ? 1 : static_cast<int>(m);
}

SyntheticDataset dp_synthetic_data(const SpacePtr& space,
                                   const std::vector<int>& data,
                                   double epsilon,
                                   std::optional<double> delta,
                                   CounterRng& rng) {
  if (!space) {
    throw argument_error("dataset must reference a space");
  }
  if (data.empty()) {
    throw argument_error("dataset must contain at least one point");
  }
  if (!std::isfinite(epsilon) || epsilon <= 0.0) {
    throw argument_error("epsilon must be a positive finite number");
  }

  const double n = static_cast<double>(data.size());
  const double alpha = epsilon * n;

  const double w = 1.0 / n;
  std::vector<double> weights(data.size(), w);
  WeightedMeasure mu = make_measure(space, data, weights);

  const double d = delta ? *delta : choose_delta(*space, alpha);
  MetricMechanismResult res = private_measure_metric(mu, alpha, d, rng);

  int r = 0;
  for (double wt : res.output.weights) {
    if (wt > 0.0) ++r;
  }
  const double diam = res.output.space->diameter();
  const int m = choose_m(r, diam, res.diagnostics.delta);

  SyntheticDataset out = weights_to_empirical(res.output, m);
  out.epsilon = epsilon;
  out.provenance = res.diagnostics;
  return out;
}

}  // namespace privm
