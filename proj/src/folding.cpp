#include "privm/folding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "privm/errors.hpp"
#include "privm/net.hpp"

namespace privm {

namespace {

// Smallest power of two at or above x (x > 0).
double pow2_at_least(double x) {
  int e = 0;
  std::frexp(x, &e);          // x = m * 2^e with m in [0.5, 1)
  double p = std::ldexp(1.0, e);
  if (p * 0.5 >= x) p *= 0.5;  // x was an exact power of two
  return p;
}

}  // namespace

SpanningTree minimum_spanning_tree(SpacePtr space) {
  if (!space || space->size() < 1) {
    throw argument_error("spanning tree needs a nonempty space");
  }
  const int n = space->size();
  SpanningTree tree;
  tree.parent.assign(n, -1);
  std::vector<double> key(n, std::numeric_limits<double>::infinity());
  std::vector<char> inside(n, 0);
  std::vector<int> attach(n, -1);
  key[0] = 0.0;
  for (int step = 0; step < n; ++step) {
    int v = -1;
    for (int i = 0; i < n; ++i) {
      if (!inside[i] && (v == -1 || key[i] < key[v])) v = i;
    }
    inside[v] = 1;
    if (attach[v] >= 0) {
      tree.parent[v] = attach[v];
      tree.total_length += key[v];
    }
    for (int i = 0; i < n; ++i) {
      if (inside[i]) continue;
      const double d = space->dist(v, i);
      if (d < key[i]) {
        key[i] = d;
        attach[i] = v;
      }
    }
  }
  tree.space = std::move(space);
  return tree;
}

SpanningTree chaining_tree(SpacePtr space) {
  if (!space || space->size() < 1) {
    throw argument_error("spanning tree needs a nonempty space");
  }
  const int n = space->size();
  SpanningTree tree;
  tree.parent.assign(n, -1);
  if (n == 1) {
    tree.space = std::move(space);
    return tree;
  }

  const GreedyTraversal t = greedy_traversal(*space);
  const int saturated = t.prefix_size(0.0);

  // Attach the points of each level to the nearest point of the previous
  // one. Levels are prefixes of the traversal at halving radii, so they are
  // nested by construction.
  auto attach_range = [&](int from, int to) {
    for (int k = from; k < to; ++k) {
      const int p = t.order[k];
      int best = t.order[0];
      double best_d = space->dist(p, best);
      for (int m = 1; m < from; ++m) {
        const int q = t.order[m];
        const double d = space->dist(p, q);
        if (d < best_d || (d == best_d && q < best)) {
          best_d = d;
          best = q;
        }
      }
      tree.parent[p] = best;
      tree.total_length += best_d;
    }
  };

  if (t.radii[1] > 0.0) {
    double eps = pow2_at_least(t.radii[1]);
    int prev = 1;
    while (prev < saturated) {
      eps *= 0.5;
      const int count = t.prefix_size(eps);
      attach_range(prev, count);
      prev = count;
    }
  }
  // Replicas at zero distance hang off any coincident point.
  attach_range(saturated, n);
  tree.space = std::move(space);
  return tree;
}

double chaining_envelope(const FiniteMetricSpace& space) {
  if (space.size() < 1) {
    throw argument_error("envelope needs a nonempty space");
  }
  const GreedyTraversal t = greedy_traversal(space);
  if (space.size() == 1 || t.radii[1] <= 0.0) return 0.0;
  const int saturated = t.prefix_size(0.0);
  double env = 0.0;
  double eps = pow2_at_least(t.radii[1]);
  while (true) {
    eps *= 0.5;
    const int count = t.prefix_size(eps);
    if (count < saturated) {
      env += (eps * 0.5) * (count - 1);
    } else {
      env += eps * (saturated - 1);  // constant tail summed in closed form
      break;
    }
  }
  return 8.0 * env;
}

FoldingMap tour_order(const SpanningTree& tree) {
  const int n = static_cast<int>(tree.parent.size());
  if (!tree.space || n < 1 || tree.space->size() != n) {
    throw argument_error("tour needs a tree spanning its space");
  }
  const FiniteMetricSpace& space = *tree.space;

  std::vector<std::vector<int>> children(n);
  int root = -1;
  for (int i = 0; i < n; ++i) {
    if (tree.parent[i] < 0) {
      if (root >= 0) throw argument_error("tree has more than one root");
      root = i;
    } else {
      children[tree.parent[i]].push_back(i);
    }
  }
  if (root < 0) throw argument_error("tree has no root");
  for (int i = 0; i < n; ++i) {
    std::sort(children[i].begin(), children[i].end(), [&](int a, int b) {
      const double da = space.dist(i, a);
      const double db = space.dist(i, b);
      if (da != db) return da < db;
      return a < b;
    });
  }

  FoldingMap fold;
  fold.space = tree.space;
  fold.order.reserve(n);
  std::vector<int> stack = {root};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    fold.order.push_back(v);
    for (auto it = children[v].rbegin(); it != children[v].rend(); ++it) {
      stack.push_back(*it);
    }
  }
  if (static_cast<int>(fold.order.size()) != n) {
    throw argument_error("tree does not span the space");
  }

  fold.positions.resize(n);
  fold.positions[0] = 0.0;
  for (int k = 1; k < n; ++k) {
    fold.positions[k] =
        fold.positions[k - 1] + space.dist(fold.order[k - 1], fold.order[k]);
  }
  return fold;
}

double tsp_integral_bound(const FiniteMetricSpace& space, double delta) {
  if (!(delta > 0.0)) throw argument_error("net resolution must be positive");
  if (space.size() < 1) throw argument_error("bound needs a nonempty space");
  const GreedyTraversal t = greedy_traversal(space);
  const int saturated = t.prefix_size(0.0);
  if (saturated <= 1) return 0.0;
  double total = 0.0;
  double x_hi = space.diameter();
  if (x_hi <= 0.0) return 0.0;
  while (true) {
    const double x_lo = x_hi * 0.5;
    const int count = t.prefix_size(x_lo);
    total += (count - 1) * (x_hi - x_lo);
    if (count == saturated || x_lo <= delta * 0.5) {
      total += (saturated - 1) * x_lo;
      break;
    }
    x_hi = x_lo;
  }
  return 16.0 * total;
}

}  // namespace privm
