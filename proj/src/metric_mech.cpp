#include "privm/metric_mech.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

#include "privm/errors.hpp"

namespace privm {

namespace {

using Kind = FiniteMetricSpace::Kind;

// Position (into `coords`, sorted ascending) of the value nearest to x,
// ties toward the lower position; same fabs arithmetic as the coordinate
// distance, so it reproduces a full nearest-center scan exactly.
int nearest_sorted(const std::vector<double>& coords, double x) {
  auto it = std::lower_bound(coords.begin(), coords.end(), x);
  if (it == coords.begin()) return 0;
  if (it == coords.end()) return static_cast<int>(coords.size()) - 1;
  const int hi = static_cast<int>(it - coords.begin());
  const int lo = hi - 1;
  return std::fabs(x - coords[hi]) < std::fabs(x - coords[lo]) ? hi : lo;
}

// Covering count of the solid unit cube at radius x under the max metric.
double cube_covering_count(int d, double x) {
  if (x >= 0.5) return 1.0;
  const double per_axis = std::ceil(1.0 / (2.0 * x));
  return std::pow(per_axis, d);
}

// Upper dyadic sum of the covering integral over [delta, 1] for the cube.
double cube_covering_integral(int d, double delta) {
  double total = 0.0;
  double x_hi = 1.0;
  while (x_hi > delta) {
    const double x_lo = std::max(0.5 * x_hi, delta);
    total += cube_covering_count(d, x_lo) * (x_hi - x_lo);
    x_hi = x_lo;
  }
  return total;
}

// Analytic mirror of tsp_integral_bound for the cube, the count capped at
// the realized grid size so the tail below the cutoff stays finite.
double cube_tsp_bound(int d, double cap, double delta) {
  if (cap <= 1.0) return 0.0;
  double total = 0.0;
  double x_hi = 1.0;
  while (true) {
    const double x_lo = 0.5 * x_hi;
    const double count = std::min(cube_covering_count(d, x_lo), cap);
    total += (count - 1.0) * (x_hi - x_lo);
    if (count >= cap || x_lo <= 0.5 * delta) {
      total += (cap - 1.0) * x_lo;
      break;
    }
    x_hi = x_lo;
  }
  return 16.0 * total;
}

// The net centers as their own space, point k standing for centers[k].
SpacePtr center_subspace(const Net& net) {
  const FiniteMetricSpace& sp = *net.space;
  const int r = static_cast<int>(net.centers.size());
  if (sp.has_coords()) {
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(r) * sp.dim());
    for (int c : net.centers) {
      for (int k = 0; k < sp.dim(); ++k) flat.push_back(sp.coord(c, k));
    }
    return FiniteMetricSpace::from_coords(std::move(flat), sp.dim(),
                                          sp.kind());
  }
  std::vector<double> table(static_cast<std::size_t>(r) * r);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      table[static_cast<std::size_t>(i) * r + j] =
          sp.dist(net.centers[i], net.centers[j]);
    }
  }
  return FiniteMetricSpace::from_matrix(std::move(table), r);
}

// Quantize onto the net, fold the centers along a spanning-tree tour, run
// the one-dimensional core on the rescaled positions, and pull the result
// back to the centers. The diagnostics bounds are computed by the caller,
// which knows whether counts are analytic or greedy.
MetricMechanismResult run_general(const WeightedMeasure& lifted, Net&& net,
                                  double alpha, double delta,
                                  double tsp_bound, double accuracy_bound,
                                  CounterRng& rng) {
  MetricMechanismResult res;
  res.net = std::move(net);
  res.diagnostics.alpha = alpha;
  res.diagnostics.delta = delta;
  res.diagnostics.tsp_bound = tsp_bound;
  res.diagnostics.accuracy_bound = accuracy_bound;
  res.diagnostics.net_size = static_cast<int>(res.net.centers.size());

  const WeightedMeasure quantized = quantize(lifted, res.net);
  const int r = static_cast<int>(res.net.centers.size());
  SpacePtr sub = center_subspace(res.net);

  if (r == 1) {
    res.folding.space = sub;
    res.folding.order = {0};
    res.folding.positions = {0.0};
    res.output.space = res.net.space;
    res.output.support = res.net.centers;
    res.output.weights = {1.0};
    SpacePtr line =
        FiniteMetricSpace::from_coords({0.0}, 1, Kind::kInterval);
    res.core.output.space = line;
    res.core.output.support = {0};
    res.core.output.weights = {1.0};
    res.core.signed_intermediate = res.core.output;
    res.core.net.space = line;
    res.core.net.centers = {0};
    res.core.net.radius = 1.0;
    res.core.net.cell = {0};
    return res;
  }

  SpanningTree tree = minimum_spanning_tree(sub);
  res.diagnostics.mst_length = tree.total_length;
  res.folding = tour_order(tree);
  const double tour_length = res.folding.total();
  res.diagnostics.tour_length = tour_length;
  if (!(tour_length > 0.0)) {
    throw argument_error("net centers coincide; the space cannot be folded");
  }

  // Tour positions rescaled to [0,1]; strictly increasing because
  // consecutive tour stops are distinct centers.
  std::vector<double> folded(r);
  for (int k = 0; k < r; ++k) {
    folded[k] = res.folding.positions[k] / tour_length;
  }

  const std::size_t p_sz = std::bit_ceil(static_cast<unsigned>(r));
  const int p = static_cast<int>(p_sz);
  if (p > (1 << 20)) throw resource_error("net too large for the noise grid");
  const int L = std::countr_zero(p_sz);
  const std::vector<double> pad =
      p > r ? padding_coordinates(folded, p) : std::vector<double>{};

  // Merge real and padding slots in coordinate order; tour_of[t] is the
  // tour step a real slot carries, -1 for padding.
  std::vector<double> all_coords(p);
  std::vector<int> tour_of(p, -1);
  {
    int a = 0, b = 0;
    for (int t = 0; t < p; ++t) {
      if (b >= static_cast<int>(pad.size()) ||
          (a < r && folded[a] <= pad[b])) {
        all_coords[t] = folded[a];
        tour_of[t] = a;
        ++a;
      } else {
        all_coords[t] = pad[b];
        ++b;
      }
    }
  }

  SpacePtr line = FiniteMetricSpace::from_coords(all_coords, 1,
                                                 Kind::kInterval);
  std::vector<int> slot_ids(p);
  std::iota(slot_ids.begin(), slot_ids.end(), 0);
  std::vector<double> weights(p, 0.0);
  for (int t = 0; t < p; ++t) {
    if (tour_of[t] >= 0) {
      weights[t] = quantized.weights[res.folding.order[tour_of[t]]];
    }
  }

  res.core.noise = sample_noise(L, alpha, rng);
  const std::vector<double> inc = res.core.noise.scaled_increments();
  for (int t = 0; t < p; ++t) weights[t] += inc[t];
  res.core.signed_intermediate.space = line;
  res.core.signed_intermediate.support = slot_ids;
  res.core.signed_intermediate.weights = std::move(weights);
  res.core.output = project_to_probability(res.core.signed_intermediate);

  res.core.net.space = line;
  res.core.net.centers = std::move(slot_ids);
  res.core.net.cell.resize(p);
  std::iota(res.core.net.cell.begin(), res.core.net.cell.end(), 0);
  {
    double cover = std::max(all_coords[0], 1.0 - all_coords[p - 1]);
    for (int t = 0; t + 1 < p; ++t) {
      cover = std::max(cover, 0.5 * (all_coords[t + 1] - all_coords[t]));
    }
    res.core.net.radius = cover;
  }

  // Padding mass moves to the nearest real position (ties toward the
  // lower one); everything returns to the centers through the tour order.
  std::vector<double> by_center(r, 0.0);
  for (int t = 0; t < p; ++t) {
    int k = tour_of[t];
    if (k < 0) k = nearest_sorted(folded, all_coords[t]);
    by_center[res.folding.order[k]] += res.core.output.weights[t];
  }
  res.output.space = res.net.space;
  res.output.support = res.net.centers;
  res.output.weights = std::move(by_center);
  return res;
}

}  // namespace

double choose_delta(const FiniteMetricSpace& space, double alpha) {
  if (!std::isfinite(alpha) || !(alpha >= 2.0)) {
    throw argument_error("alpha must be at least 2");
  }
  switch (space.kind()) {
    case Kind::kInterval:
      return 1.0 / std::floor(alpha);
    case Kind::kCube: {
      const double raw = std::pow(std::pow(std::log(alpha), 1.5) / alpha,
                                  1.0 / space.dim());
      return std::min(0.5, raw);
    }
    case Kind::kGeneric:
    default: {
      const double diam = space.diameter();
      if (!(diam > 0.0)) {
        throw argument_error("space has zero diameter");
      }
      const GreedyTraversal t = greedy_traversal(space);
      double best_delta = diam;
      double best_bound = std::numeric_limits<double>::infinity();
      for (int j = 0; j <= 40; ++j) {
        const double d = std::ldexp(diam, -j);
        if (d < 1e-12) break;
        const double count = static_cast<double>(t.prefix_size(d));
        const double bound =
            2.0 * d + std::pow(std::log(std::max(count, 1.0)), 1.5) / alpha *
                          covering_integral_above(t, d, diam);
        if (bound < best_bound) {
          best_bound = bound;
          best_delta = d;
        }
      }
      return best_delta;
    }
  }
}

MetricMechanismResult private_measure_metric(const WeightedMeasure& mu,
                                             double alpha, double delta,
                                             CounterRng& rng) {
  check_measure(mu);
  if (!mu.is_probability()) {
    throw argument_error("input must be a probability measure");
  }
  if (!std::isfinite(alpha) || !(alpha > 0.0)) {
    throw argument_error("alpha must be positive");
  }
  if (!std::isfinite(delta) || !(delta > 0.0)) {
    throw argument_error("delta must be positive");
  }
  const FiniteMetricSpace& sp = *mu.space;
  const double diam = sp.diameter();
  if (delta > diam + 1e-12) {
    throw argument_error("delta exceeds the space diameter");
  }

  if (sp.kind() == Kind::kInterval) {
    // A line folds onto itself in coordinate order, so the mechanism IS
    // the interval mechanism, run at its own grid resolution.
    if (!(alpha >= 2.0)) {
      throw argument_error("interval spaces need alpha >= 2");
    }
    MetricMechanismResult res;
    res.core = private_measure_interval(mu, alpha, rng);
    res.net = res.core.net;
    res.output = res.core.output;
    const int r = static_cast<int>(res.net.centers.size());
    std::vector<double> flat(r);
    for (int j = 0; j < r; ++j) {
      flat[j] = res.net.space->coord(res.net.centers[j], 0);
    }
    res.folding.space =
        FiniteMetricSpace::from_coords(flat, 1, Kind::kInterval);
    res.folding.order.resize(r);
    std::iota(res.folding.order.begin(), res.folding.order.end(), 0);
    res.folding.positions.resize(r);
    for (int j = 0; j < r; ++j) res.folding.positions[j] = flat[j] - flat[0];

    const int n_net = static_cast<int>(std::floor(alpha));
    const double d_used = 1.0 / n_net;
    res.diagnostics.alpha = alpha;
    res.diagnostics.delta = d_used;
    res.diagnostics.net_size = r;
    res.diagnostics.tour_length = res.folding.total();
    res.diagnostics.mst_length = res.folding.total();
    res.diagnostics.tsp_bound =
        cube_tsp_bound(1, static_cast<double>(r), d_used);
    res.diagnostics.accuracy_bound =
        2.0 * d_used +
        std::pow(std::log(static_cast<double>(n_net)), 1.5) / alpha *
            cube_covering_integral(1, d_used);
    return res;
  }

  if (sp.kind() == Kind::kCube) {
    const int d = sp.dim();
    const int m_axis =
        std::max(1, static_cast<int>(std::ceil(1.0 / (2.0 * delta))));
    const double grid_size = std::pow(static_cast<double>(m_axis), d);
    if (grid_size > static_cast<double>(1 << 20)) {
      throw resource_error("delta implies too fine a grid");
    }
    const int r = static_cast<int>(std::llround(grid_size));
    std::vector<double> axis(m_axis);
    for (int i = 0; i < m_axis; ++i) axis[i] = (i + 0.5) / m_axis;

    // Grid centers in lexicographic order, axis 0 slowest.
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(r) * d);
    std::vector<int> idx(d, 0);
    for (int c = 0; c < r; ++c) {
      for (int a = 0; a < d; ++a) flat.push_back(axis[idx[a]]);
      for (int a = d - 1; a >= 0; --a) {
        if (++idx[a] < m_axis) break;
        idx[a] = 0;
      }
    }
    SpacePtr aug = sp.with_extra_points(flat);
    const int n0 = sp.size();

    Net net;
    net.space = aug;
    net.radius = delta;
    net.centers.resize(r);
    std::iota(net.centers.begin(), net.centers.end(), n0);
    net.cell.resize(aug->size());
    std::vector<int> stride(d, 1);
    for (int a = d - 2; a >= 0; --a) stride[a] = stride[a + 1] * m_axis;
    for (int i = 0; i < aug->size(); ++i) {
      int cell = 0;
      for (int a = 0; a < d; ++a) {
        cell += nearest_sorted(axis, aug->coord(i, a)) * stride[a];
      }
      net.cell[i] = cell;
    }

    WeightedMeasure lifted;
    lifted.space = aug;
    lifted.support = mu.support;
    lifted.weights = mu.weights;
    const double tspb =
        cube_tsp_bound(d, static_cast<double>(r), delta);
    const double accb =
        2.0 * delta + std::pow(std::log(cube_covering_count(d, delta)), 1.5) /
                          alpha * cube_covering_integral(d, delta);
    return run_general(lifted, std::move(net), alpha, delta, tspb, accb,
                       rng);
  }

  Net net = build_net(mu.space, delta);
  const GreedyTraversal t = greedy_traversal(sp);
  const double count = static_cast<double>(t.prefix_size(delta));
  const double tspb = tsp_integral_bound(sp, delta);
  const double accb =
      2.0 * delta + std::pow(std::log(std::max(count, 1.0)), 1.5) / alpha *
                        covering_integral_above(t, delta, diam);
  return run_general(mu, std::move(net), alpha, delta, tspb, accb, rng);
}

}  // namespace privm
