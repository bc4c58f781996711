#include "privm/net.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "privm/errors.hpp"

namespace privm {

int GreedyTraversal::prefix_size(double r) const {
  const int n = static_cast<int>(order.size());
  for (int k = 1; k < n; ++k) {
    if (radii[k] <= r) return k;
  }
  return n;
}

GreedyTraversal greedy_traversal(const FiniteMetricSpace& space) {
  const int n = space.size();
  if (n < 1) throw argument_error("traversal needs a nonempty space");
  GreedyTraversal t;
  t.order.reserve(n);
  t.radii.reserve(n);
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  std::vector<char> chosen(n, 0);
  int next = 0;
  double next_dist = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k) {
    t.order.push_back(next);
    t.radii.push_back(next_dist);
    chosen[next] = 1;
    const int c = next;
    next = -1;
    next_dist = -1.0;
    for (int i = 0; i < n; ++i) {
      if (chosen[i]) continue;
      nearest[i] = std::min(nearest[i], space.dist(c, i));
      if (nearest[i] > next_dist) {
        next_dist = nearest[i];
        next = i;
      }
    }
  }
  return t;
}

namespace {

// Nearest-center assignment; ties go to the lowest center index, which the
// ascending scan realizes with a strict improvement test.
std::vector<int> assign_cells(const FiniteMetricSpace& space,
                              const std::vector<int>& centers) {
  const int n = space.size();
  std::vector<int> cell(n, 0);
  for (int i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centers.size(); ++c) {
      const double d = space.dist(i, centers[c]);
      if (d < best) {
        best = d;
        cell[i] = static_cast<int>(c);
      }
    }
  }
  return cell;
}

}  // namespace

Net build_net(SpacePtr space, double radius) {
  if (!space) throw argument_error("net needs a space");
  if (!(radius > 0.0)) throw argument_error("net radius must be positive");
  if (space->size() < 1) throw argument_error("net needs a nonempty space");
  const GreedyTraversal t = greedy_traversal(*space);
  const int k = t.prefix_size(radius);
  Net net;
  net.centers.assign(t.order.begin(), t.order.begin() + k);
  std::sort(net.centers.begin(), net.centers.end());
  net.radius = radius;
  net.cell = assign_cells(*space, net.centers);
  net.space = std::move(space);
  return net;
}

Net net_from_centers(SpacePtr space, std::vector<int> centers, double radius) {
  if (!space) throw argument_error("net needs a space");
  if (!(radius > 0.0)) throw argument_error("net radius must be positive");
  if (centers.empty()) throw argument_error("net needs at least one center");
  std::sort(centers.begin(), centers.end());
  for (std::size_t c = 0; c + 1 < centers.size(); ++c) {
    if (centers[c] == centers[c + 1]) {
      throw argument_error("net centers must be distinct");
    }
  }
  if (centers.front() < 0 || centers.back() >= space->size()) {
    throw argument_error("net center index out of range");
  }
  Net net;
  net.space = std::move(space);
  net.centers = std::move(centers);
  net.radius = radius;
  net.cell = assign_cells(*net.space, net.centers);
  for (int i = 0; i < net.space->size(); ++i) {
    if (net.space->dist(i, net.center_of(i)) > radius + 1e-12) {
      throw argument_error("centers do not cover the space at this radius");
    }
  }
  return net;
}

WeightedMeasure quantize(const WeightedMeasure& mu, const Net& net) {
  check_measure(mu);
  if (mu.space != net.space) {
    throw argument_error("measure and net must share a space");
  }
  std::vector<double> acc(net.centers.size(), 0.0);
  for (std::size_t a = 0; a < mu.support.size(); ++a) {
    acc[net.cell[mu.support[a]]] += mu.weights[a];
  }
  WeightedMeasure out;
  out.space = mu.space;
  out.support = net.centers;
  out.weights = std::move(acc);
  return out;
}

int covering_number_upper(const FiniteMetricSpace& space, double radius) {
  return greedy_traversal(space).prefix_size(radius);
}

int packing_number_lower(const FiniteMetricSpace& space, double radius) {
  return greedy_traversal(space).prefix_size(radius);
}

double covering_integral_above(const GreedyTraversal& t, double delta,
                               double hi) {
  if (!(delta > 0.0)) throw argument_error("integral cutoff must be positive");
  double total = 0.0;
  double x_hi = hi;
  while (x_hi > delta) {
    const double x_lo = std::max(x_hi / 2.0, delta);
    total += t.prefix_size(x_lo) * (x_hi - x_lo);
    x_hi = x_lo;
  }
  return total;
}

double excess_covering_integral(const GreedyTraversal& t, double hi) {
  if (hi <= 0.0) return 0.0;
  // Counts stop growing once every positive insertion radius is passed;
  // below that the integrand is constant and the tail integral is exact.
  const int saturated = t.prefix_size(0.0);
  if (saturated <= 1) return 0.0;
  double total = 0.0;
  double x_hi = hi;
  while (true) {
    const double x_lo = x_hi / 2.0;
    const int count = t.prefix_size(x_lo);
    total += (count - 1) * (x_hi - x_lo);
    if (count == saturated) {
      total += (count - 1) * x_lo;
      return total;
    }
    x_hi = x_lo;
  }
}

}  // namespace privm
