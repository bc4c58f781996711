#include "privm/interval.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <iterator>
#include <queue>
#include <utility>
#include <vector>

#include "privm/errors.hpp"

namespace privm {

namespace {

// Position (into `coords`, sorted ascending) of the value nearest to x,
// ties toward the lower position. Uses the same fabs arithmetic as the
// space's distance, so it reproduces a full nearest-center scan exactly.
int nearest_sorted(const std::vector<double>& coords, double x) {
  auto it = std::lower_bound(coords.begin(), coords.end(), x);
  if (it == coords.begin()) return 0;
  if (it == coords.end()) return static_cast<int>(coords.size()) - 1;
  const int hi = static_cast<int>(it - coords.begin());
  const int lo = hi - 1;
  return std::fabs(x - coords[hi]) < std::fabs(x - coords[lo]) ? hi : lo;
}

struct PavBlock {
  std::vector<std::pair<double, double>> items;  // (target, weight) by target
  double weight = 0.0;
  int slots = 0;
  double fit = 0.0;
};

// Least target value whose cumulative weight reaches half the block's
// total. The tiny slack keeps the choice on the lower end of the median
// interval when floating-point sums land a hair short of one half; any
// value in that interval is optimal, so the slack only affects ties.
double lower_weighted_median(const std::vector<std::pair<double, double>>& items,
                             double total) {
  const double threshold = 0.5 * total - 1e-12 * std::max(1.0, total);
  double acc = 0.0;
  for (const auto& item : items) {
    acc += item.second;
    if (acc >= threshold) return item.first;
  }
  return items.back().first;
}

void merge_blocks(PavBlock& into, PavBlock& from) {
  std::vector<std::pair<double, double>> merged;
  merged.reserve(into.items.size() + from.items.size());
  std::merge(into.items.begin(), into.items.end(), from.items.begin(),
             from.items.end(), std::back_inserter(merged));
  into.items = std::move(merged);
  into.weight += from.weight;
  into.slots += from.slots;
  into.fit = lower_weighted_median(into.items, into.weight);
}

void require_line_coords(const FiniteMetricSpace& space, const char* who) {
  if (!space.has_coords() || space.dim() != 1) {
    throw argument_error(std::string(who) +
                         " needs one-dimensional coordinates");
  }
}

}  // namespace

std::vector<double> padding_coordinates(const std::vector<double>& support,
                                        int target_size) {
  const int n = static_cast<int>(support.size());
  if (n == 0) throw argument_error("padding needs a nonempty support");
  if (target_size < n) {
    throw argument_error("padding target is below the support size");
  }
  for (int i = 0; i < n; ++i) {
    if (!(support[i] >= 0.0) || !(support[i] <= 1.0)) {
      throw argument_error("support coordinates must lie in [0,1]");
    }
    if (i > 0 && support[i] < support[i - 1]) {
      throw argument_error("support must be sorted");
    }
  }
  // Max-heap of gaps keyed by (length, leftmost-first). Entries are
  // (length, -start, end) so lexicographic order does both.
  std::priority_queue<std::array<double, 3>> gaps;
  auto push_gap = [&gaps](double a, double b) {
    gaps.push({b - a, -a, b});
  };
  push_gap(0.0, support[0]);
  for (int i = 0; i + 1 < n; ++i) push_gap(support[i], support[i + 1]);
  push_gap(support[n - 1], 1.0);

  std::vector<double> out;
  out.reserve(target_size - n);
  while (static_cast<int>(out.size()) < target_size - n) {
    const std::array<double, 3> top = gaps.top();
    gaps.pop();
    const double a = -top[1];
    const double b = top[2];
    const double mid = 0.5 * (a + b);
    if (!(mid > a && mid < b)) {
      throw argument_error("no room left for distinct padding points");
    }
    out.push_back(mid);
    push_gap(a, mid);
    push_gap(mid, b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

WeightedMeasure perturb_signed(const WeightedMeasure& mu, double alpha,
                               CounterRng& rng) {
  check_measure(mu);
  require_line_coords(*mu.space, "perturbation");
  if (!std::isfinite(alpha) || !(alpha > 0.0)) {
    throw argument_error("alpha must be positive and finite");
  }
  const int n = static_cast<int>(mu.support.size());
  if (n == 0 || (n & (n - 1)) != 0) {
    throw argument_error("support size must be a power of two");
  }
  double prev = mu.space->coord(mu.support[0], 0);
  for (int i = 1; i < n; ++i) {
    const double c = mu.space->coord(mu.support[i], 0);
    if (c < prev) {
      throw argument_error("support must be listed in coordinate order");
    }
    prev = c;
  }
  const int L = std::countr_zero(static_cast<unsigned>(n));
  const SuperregularNoise noise = sample_noise(L, alpha, rng);
  const std::vector<double> inc = noise.scaled_increments();
  WeightedMeasure out = mu;
  for (int i = 0; i < n; ++i) out.weights[i] += inc[i];
  return out;
}

WeightedMeasure project_to_probability(const WeightedMeasure& nu) {
  check_measure(nu);
  require_line_coords(*nu.space, "projection");
  const FiniteMetricSpace& space = *nu.space;
  const int n = static_cast<int>(nu.support.size());
  if (n == 0) throw argument_error("projection needs a nonempty support");
  std::vector<double> omega(n);
  for (int i = 0; i < n; ++i) {
    omega[i] = space.coord(nu.support[i], 0);
    if (i > 0 && omega[i] < omega[i - 1]) {
      throw argument_error("support must be listed in coordinate order");
    }
  }
  WeightedMeasure out;
  out.space = nu.space;
  out.support = nu.support;
  out.weights.assign(n, 0.0);
  if (n == 1) {
    out.weights[0] = 1.0;
    return out;
  }

  // Isotonic fit of the cumulative weights: slot k carries target
  // c_k = w_0 + ... + w_k with weight omega_{k+1} - omega_k. Pool adjacent
  // violators, refit each pooled block at its weighted lower median, then
  // clamp into [0,1]. Zero-gap slots cost nothing and copy the previous
  // cumulative value (zero before the first fitted slot), which keeps the
  // cumulative vector the least among optimal ones.
  std::vector<PavBlock> blocks;
  double run = 0.0;
  for (int k = 0; k + 1 < n; ++k) {
    run += nu.weights[k];
    const double g = omega[k + 1] - omega[k];
    if (!(g > 0.0)) continue;
    PavBlock next;
    next.items = {{run, g}};
    next.weight = g;
    next.slots = 1;
    next.fit = run;
    blocks.push_back(std::move(next));
    while (blocks.size() >= 2 &&
           blocks[blocks.size() - 2].fit > blocks.back().fit) {
      merge_blocks(blocks[blocks.size() - 2], blocks.back());
      blocks.pop_back();
    }
  }
  std::vector<double> fitted;
  fitted.reserve(n - 1);
  for (const PavBlock& b : blocks) {
    const double f = std::min(1.0, std::max(0.0, b.fit));
    fitted.insert(fitted.end(), b.slots, f);
  }
  std::vector<double> cum(n - 1, 0.0);
  {
    std::size_t next = 0;
    double prev = 0.0;
    for (int k = 0; k + 1 < n; ++k) {
      if (omega[k + 1] - omega[k] > 0.0) prev = fitted[next++];
      cum[k] = prev;
    }
  }
  out.weights[0] = cum[0];
  for (int k = 1; k + 1 < n; ++k) out.weights[k] = cum[k] - cum[k - 1];
  out.weights[n - 1] = 1.0 - cum[n - 2];
  return out;
}

IntervalMechanismResult private_measure_interval(const WeightedMeasure& mu,
                                                 double alpha,
                                                 CounterRng& rng) {
  check_measure(mu);
  require_line_coords(*mu.space, "the interval mechanism");
  if (!mu.is_probability()) {
    throw argument_error("input must be a probability measure");
  }
  if (!std::isfinite(alpha) || !(alpha >= 2.0)) {
    throw argument_error("alpha must be at least 2");
  }
  if (alpha >= static_cast<double>(1 << 20) + 1.0) {
    throw resource_error("privacy scale implies too fine a grid");
  }
  const int n_net = static_cast<int>(std::floor(alpha));

  std::vector<double> net_coords(n_net);
  for (int i = 0; i < n_net; ++i) net_coords[i] = (i + 0.5) / n_net;

  const std::size_t p_sz = std::bit_ceil(static_cast<std::size_t>(n_net));
  const int p = static_cast<int>(p_sz);
  const int L = std::countr_zero(p_sz);
  const std::vector<double> pad = padding_coordinates(net_coords, p);

  // Merge net and padding coordinates in coordinate order, remembering
  // which slots are quantization targets. Padding midpoints are strictly
  // inside net gaps, so all p coordinates are distinct.
  std::vector<std::pair<double, bool>> slots;
  slots.reserve(p);
  for (double c : net_coords) slots.emplace_back(c, true);
  for (double c : pad) slots.emplace_back(c, false);
  std::sort(slots.begin(), slots.end());
  std::vector<double> all_coords(p);
  for (int t = 0; t < p; ++t) all_coords[t] = slots[t].first;

  SpacePtr aug = mu.space->with_extra_points(all_coords);
  const int n0 = mu.space->size();
  const int total_points = aug->size();

  // Quantization net: the uniform midpoints, cells assigned by nearest
  // coordinate with ties toward the lower center, computed by binary
  // search instead of a full scan.
  Net quant;
  quant.space = aug;
  quant.radius = 1.0 / n_net;
  for (int t = 0; t < p; ++t) {
    if (slots[t].second) quant.centers.push_back(n0 + t);
  }
  quant.cell.resize(total_points);
  for (int i = 0; i < total_points; ++i) {
    quant.cell[i] = nearest_sorted(net_coords, aug->coord(i, 0));
  }

  WeightedMeasure lifted;
  lifted.space = aug;
  lifted.support = mu.support;
  lifted.weights = mu.weights;
  const WeightedMeasure quantized = quantize(lifted, quant);

  std::vector<int> full_support(p);
  std::vector<double> weights(p, 0.0);
  for (int t = 0; t < p; ++t) full_support[t] = n0 + t;
  {
    std::size_t qi = 0;
    for (int t = 0; t < p; ++t) {
      if (slots[t].second) weights[t] = quantized.weights[qi++];
    }
  }

  IntervalMechanismResult result;
  result.noise = sample_noise(L, alpha, rng);
  const std::vector<double> inc = result.noise.scaled_increments();
  for (int t = 0; t < p; ++t) weights[t] += inc[t];

  result.signed_intermediate.space = aug;
  result.signed_intermediate.support = full_support;
  result.signed_intermediate.weights = std::move(weights);
  result.output = project_to_probability(result.signed_intermediate);

  result.net.space = aug;
  result.net.centers = std::move(full_support);
  result.net.radius = 1.0 / n_net;
  result.net.cell.resize(total_points);
  for (int i = 0; i < total_points; ++i) {
    result.net.cell[i] = nearest_sorted(all_coords, aug->coord(i, 0));
  }
  return result;
}

}  // namespace privm
