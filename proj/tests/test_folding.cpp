#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "privm/errors.hpp"
#include "privm/folding.hpp"
#include "privm/metric_space.hpp"
#include "privm/net.hpp"
#include "privm/rng.hpp"

using namespace privm;

namespace {

SpacePtr random_cube_space(CounterRng& rng, int n, int dim) {
  std::vector<double> flat;
  for (int i = 0; i < n * dim; ++i) flat.push_back(rng.next_uniform());
  return FiniteMetricSpace::from_coords(flat, dim,
                                        FiniteMetricSpace::Kind::kCube);
}

SpacePtr unit_square_corners() {
  return FiniteMetricSpace::from_coords({0.0, 0.0, 0.0, 1.0, 1.0, 0.0, 1.0, 1.0},
                                        2, FiniteMetricSpace::Kind::kCube);
}

SpacePtr chain_matrix(int n) {
  std::vector<double> flat(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      flat[static_cast<std::size_t>(i) * n + j] = std::abs(i - j);
    }
  }
  return FiniteMetricSpace::from_matrix(flat, n);
}

// Exact minimum spanning tree length by scanning all labeled trees through
// their Prufer sequences. Usable up to six points.
double brute_mst(const FiniteMetricSpace& space) {
  const int n = space.size();
  if (n == 1) return 0.0;
  if (n == 2) return space.dist(0, 1);
  std::vector<int> seq(n - 2, 0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    std::vector<int> degree(n, 1);
    for (int v : seq) ++degree[v];
    std::vector<int> deg = degree;
    double length = 0.0;
    std::vector<char> used(n, 0);
    for (int v : seq) {
      for (int leaf = 0; leaf < n; ++leaf) {
        if (!used[leaf] && deg[leaf] == 1) {
          length += space.dist(leaf, v);
          used[leaf] = 1;
          --deg[v];
          break;
        }
      }
    }
    int a = -1, b = -1;
    for (int i = 0; i < n; ++i) {
      if (!used[i] && deg[i] == 1) (a < 0 ? a : b) = i;
    }
    length += space.dist(a, b);
    best = std::min(best, length);

    int pos = n - 3;
    while (pos >= 0 && seq[pos] == n - 1) seq[pos--] = 0;
    if (pos < 0) break;
    ++seq[pos];
  }
  return best;
}

// Exact shortest Hamiltonian cycle by permutation scan (start fixed at 0).
double brute_tsp_cycle(const FiniteMetricSpace& space) {
  const int n = space.size();
  if (n <= 1) return 0.0;
  std::vector<int> perm(n - 1);
  std::iota(perm.begin(), perm.end(), 1);
  double best = std::numeric_limits<double>::infinity();
  do {
    double cost = space.dist(0, perm.front()) + space.dist(perm.back(), 0);
    for (int i = 0; i + 1 < n - 1; ++i) cost += space.dist(perm[i], perm[i + 1]);
    best = std::min(best, cost);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

TEST_CASE("minimum spanning tree of a chain is the chain") {
  auto space = chain_matrix(4);
  const auto tree = minimum_spanning_tree(space);
  CHECK(tree.total_length == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(tree.parent[0] == -1);
  CHECK(tree.parent[1] == 0);
  CHECK(tree.parent[2] == 1);
  CHECK(tree.parent[3] == 2);

  auto lonely = chain_matrix(1);
  CHECK(minimum_spanning_tree(lonely).total_length == 0.0);
}

TEST_CASE("minimum spanning tree matches brute force over all trees") {
  auto corners = unit_square_corners();
  CHECK(minimum_spanning_tree(corners).total_length ==
        doctest::Approx(3.0).epsilon(1e-15));
  CHECK(brute_mst(*corners) == doctest::Approx(3.0).epsilon(1e-15));

  CounterRng rng(91);
  for (int rep = 0; rep < 30; ++rep) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 5);
    auto space = random_cube_space(rng, n, 2);
    const auto tree = minimum_spanning_tree(space);
    CHECK(tree.total_length ==
          doctest::Approx(brute_mst(*space)).epsilon(1e-12));
  }
}

TEST_CASE("chaining tree stays under its covering envelope") {
  auto space = FiniteMetricSpace::from_coords(
      {0.0, 0.5, 1.0}, 1, FiniteMetricSpace::Kind::kInterval);
  const auto tree = chaining_tree(space);
  const double envelope = chaining_envelope(*space);
  CHECK(envelope == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(tree.total_length == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(tree.total_length <= envelope);

  auto lonely = chain_matrix(1);
  CHECK(chaining_tree(lonely).total_length == 0.0);
  CHECK(chaining_envelope(*lonely) == 0.0);

  CounterRng rng(92);
  for (int rep = 0; rep < 30; ++rep) {
    auto rnd = random_cube_space(rng, 3 + static_cast<int>(rng.next_u64() % 15),
                                 2);
    const double mst = minimum_spanning_tree(rnd).total_length;
    const double chain = chaining_tree(rnd).total_length;
    CHECK(chain >= mst - 1e-12);
    CHECK(chain <= chaining_envelope(*rnd) + 1e-12);
  }
}

TEST_CASE("depth-first tour of a chain keeps its order") {
  auto space = chain_matrix(4);
  const auto fold = tour_order(minimum_spanning_tree(space));
  REQUIRE(fold.order == std::vector<int>{0, 1, 2, 3});
  CHECK(fold.positions == std::vector<double>{0.0, 1.0, 2.0, 3.0});
  CHECK(fold.total() == 3.0);
}

TEST_CASE("tours sit between the spanning tree and its doubling") {
  auto corners = unit_square_corners();
  const auto tree = minimum_spanning_tree(corners);
  const auto fold = tour_order(tree);
  CHECK(fold.total() <= 2.0 * tree.total_length + 1e-12);
  CHECK(brute_tsp_cycle(*corners) == doctest::Approx(4.0).epsilon(1e-15));

  CounterRng rng(93);
  for (int rep = 0; rep < 30; ++rep) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 8);
    auto space = random_cube_space(rng, n, 2);
    const double mst = minimum_spanning_tree(space).total_length;
    const double cycle = brute_tsp_cycle(*space);
    const double path = tour_order(minimum_spanning_tree(space)).total();
    CHECK(mst <= cycle + 1e-12);
    CHECK(cycle <= 2.0 * mst + 1e-12);
    CHECK(path <= 2.0 * mst + 1e-12);
  }
}

TEST_CASE("folding maps are one-Lipschitz from positions to the space") {
  CounterRng rng(94);
  for (int rep = 0; rep < 25; ++rep) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 12);
    auto space = random_cube_space(rng, n, 2);
    for (const bool use_chaining : {false, true}) {
      const auto fold = tour_order(use_chaining
                                       ? chaining_tree(space)
                                       : minimum_spanning_tree(space));
      REQUIRE(static_cast<int>(fold.order.size()) == n);
      for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
          CHECK(space->dist(fold.order[j], fold.order[k]) <=
                fold.positions[k] - fold.positions[j] + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("duplicate points ride along at zero distance") {
  auto space = FiniteMetricSpace::from_coords(
      {0.2, 0.2, 0.8, 0.2, 0.8}, 1, FiniteMetricSpace::Kind::kInterval);
  for (const bool use_chaining : {false, true}) {
    const auto fold = tour_order(use_chaining ? chaining_tree(space)
                                              : minimum_spanning_tree(space));
    REQUIRE(fold.order.size() == 5);
    std::vector<int> sorted = fold.order;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<int>{0, 1, 2, 3, 4});
    for (std::size_t k = 1; k < fold.positions.size(); ++k) {
      CHECK(fold.positions[k] >= fold.positions[k - 1]);
    }
  }
}

TEST_CASE("tour bound vanishes only in degenerate spaces") {
  auto lonely = chain_matrix(1);
  CHECK(tsp_integral_bound(*lonely, 0.1) == 0.0);

  auto corners = unit_square_corners();
  CHECK(tsp_integral_bound(*corners, 0.5) ==
        doctest::Approx(48.0).epsilon(1e-12));
  const double tour = tour_order(minimum_spanning_tree(corners)).total();
  CHECK(tour <= tsp_integral_bound(*corners, 0.5));
  CHECK_THROWS_AS(tsp_integral_bound(*corners, 0.0), argument_error);
}

TEST_CASE("tour bound doubles as the net resolution halves") {
  std::vector<double> bounds;
  for (const double delta : {1.0 / 8, 1.0 / 16, 1.0 / 32}) {
    const int per_axis = static_cast<int>(std::lround(0.5 / delta));
    std::vector<double> flat;
    for (int i = 0; i < per_axis; ++i) {
      for (int j = 0; j < per_axis; ++j) {
        flat.push_back((2 * i + 1) * delta);
        flat.push_back((2 * j + 1) * delta);
      }
    }
    auto grid = FiniteMetricSpace::from_coords(
        flat, 2, FiniteMetricSpace::Kind::kCube);
    bounds.push_back(tsp_integral_bound(*grid, delta));
  }
  CHECK(bounds[1] / bounds[0] == doctest::Approx(2.0).epsilon(0.15));
  CHECK(bounds[2] / bounds[1] == doctest::Approx(2.0).epsilon(0.15));
}
