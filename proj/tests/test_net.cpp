#include <cmath>
#include <vector>

#include "doctest.h"
#include "privm/errors.hpp"
#include "privm/measure.hpp"
#include "privm/metric_space.hpp"
#include "privm/net.hpp"
#include "privm/rng.hpp"
#include "privm/wasserstein.hpp"

using namespace privm;

namespace {

SpacePtr line_space(std::vector<double> coords) {
  return FiniteMetricSpace::from_coords(std::move(coords), 1,
                                        FiniteMetricSpace::Kind::kInterval);
}

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

}  // namespace

TEST_CASE("greedy traversal starts at zero and records insertion distances") {
  auto space = line_space({0.0, 0.5, 1.0});
  const auto t = greedy_traversal(*space);
  REQUIRE(t.order == std::vector<int>{0, 2, 1});
  CHECK(std::isinf(t.radii[0]));
  CHECK(t.radii[1] == 1.0);
  CHECK(t.radii[2] == 0.5);
  CHECK(t.prefix_size(1.0) == 1);
  CHECK(t.prefix_size(0.5) == 2);
  CHECK(t.prefix_size(0.49) == 3);
  CHECK(t.prefix_size(0.0) == 3);
}

TEST_CASE("nets cover at their radius with separated centers") {
  auto space = line_space({0.0, 0.5, 1.0});
  const Net net = build_net(space, 0.5);
  REQUIRE(net.centers == std::vector<int>{0, 2});
  for (int i = 0; i < space->size(); ++i) {
    CHECK(space->dist(i, net.center_of(i)) <= 0.5);
  }
  CHECK(space->dist(net.centers[0], net.centers[1]) > 0.5);

  CHECK(build_net(space, 1.0).centers.size() == 1);  // radius >= diameter
  auto lonely = line_space({0.3});
  CHECK(build_net(lonely, 0.01).centers.size() == 1);
  CHECK_THROWS_AS(build_net(space, 0.0), argument_error);
}

TEST_CASE("separation and covering hold on random spaces") {
  CounterRng rng(31);
  for (int rep = 0; rep < 40; ++rep) {
    auto space = random_cube_space(rng, 20, 2);
    const double r = 0.05 + 0.4 * rng.next_uniform();
    const Net net = build_net(space, r);
    for (int i = 0; i < space->size(); ++i) {
      CHECK(space->dist(i, net.center_of(i)) <= r + 1e-12);
    }
    for (std::size_t a = 0; a < net.centers.size(); ++a) {
      for (std::size_t b = a + 1; b < net.centers.size(); ++b) {
        CHECK(space->dist(net.centers[a], net.centers[b]) > r);
      }
    }
  }
}

TEST_CASE("covering counts on uniform grids stay near the exact value") {
  for (double x : {0.25, 0.1}) {
    const int steps = static_cast<int>(std::lround(1.0 / x));
    std::vector<double> coords;
    for (int i = 0; i <= steps; ++i) coords.push_back(i * x);
    coords.back() = 1.0;
    auto space = line_space(coords);
    const int count = covering_number_upper(*space, x);
    CHECK(count <= steps + 1);
    CHECK(count >= 1);
    CHECK(packing_number_lower(*space, x) == count);
  }
}

TEST_CASE("greedy counts obey the packing-covering sandwich") {
  CounterRng rng(32);
  for (int rep = 0; rep < 20; ++rep) {
    auto space = random_cube_space(rng, 30, 2);
    for (double eps : {0.05, 0.1, 0.2, 0.4}) {
      CHECK(packing_number_lower(*space, 2 * eps) <=
            covering_number_upper(*space, eps));
      CHECK(covering_number_upper(*space, eps) <=
            packing_number_lower(*space, eps));
    }
  }
}

TEST_CASE("quantize moves point mass to the nearest center") {
  auto space = line_space({0.25, 0.3, 0.75});
  const Net net = net_from_centers(space, {0, 2}, 0.25);
  auto point = make_measure(space, {1}, {1.0});
  const auto q = quantize(point, net);
  REQUIRE(q.support == std::vector<int>{0, 2});
  CHECK(q.weights[0] == 1.0);
  CHECK(q.weights[1] == 0.0);
}

TEST_CASE("quantize leaves measures on centers unchanged") {
  auto space = line_space({0.0, 0.5, 1.0});
  const Net net = net_from_centers(space, {0, 1, 2}, 0.5);
  auto mu = make_measure(space, {0, 1, 2}, {0.2, 0.3, 0.5});
  const auto q = quantize(mu, net);
  REQUIRE(q.support == mu.support);
  CHECK(q.weights[0] == 0.2);
  CHECK(q.weights[1] == 0.3);
  CHECK(q.weights[2] == 0.5);
  CHECK(tv_distance(mu, q) == 0.0);
}

TEST_CASE("quantization contracts total variation") {
  CounterRng rng(33);
  for (int rep = 0; rep < 100; ++rep) {
    auto space = random_cube_space(rng, 15, 2);
    const Net net = build_net(space, 0.25);
    const int k = 1 + static_cast<int>(rng.next_u64() % 15);
    std::vector<int> sup(k);
    std::vector<double> w(k);
    for (int i = 0; i < k; ++i) {
      sup[i] = static_cast<int>(rng.next_u64() % 15);
      w[i] = 2.0 * rng.next_uniform() - 1.0;
    }
    auto nu = make_measure(space, sup, w);
    CHECK(quantize(nu, net).tv_norm() <= nu.tv_norm() + 1e-12);
    CHECK(quantize(nu, net).total() ==
          doctest::Approx(nu.total()).epsilon(1e-12));
  }
}

TEST_CASE("quantization moves mass at most the net radius") {
  CounterRng rng(34);
  for (int rep = 0; rep < 100; ++rep) {
    auto space = random_cube_space(rng, 12, 2);
    const double r = 0.1 + 0.3 * rng.next_uniform();
    const Net net = build_net(space, r);
    const int k = 1 + static_cast<int>(rng.next_u64() % 12);
    std::vector<int> sup(k);
    std::vector<double> w(k);
    double total = 0.0;
    for (int i = 0; i < k; ++i) {
      sup[i] = static_cast<int>(rng.next_u64() % 12);
      w[i] = -std::log(rng.next_uniform());
      total += w[i];
    }
    for (double& x : w) x /= total;
    auto nu = make_measure(space, sup, w);
    CHECK(wasserstein1_exact(nu, quantize(nu, net)) <= r + 1e-9);
  }
}

TEST_CASE("caller-supplied centers are validated as a cover") {
  auto space = line_space({0.0, 0.5, 1.0});
  CHECK_THROWS_AS(net_from_centers(space, {0}, 0.4), argument_error);
  CHECK_THROWS_AS(net_from_centers(space, {0, 0}, 0.6), argument_error);
  CHECK_THROWS_AS(net_from_centers(space, {0, 7}, 0.6), argument_error);
  CHECK_THROWS_AS(net_from_centers(space, {}, 0.6), argument_error);
  const Net ok = net_from_centers(space, {1}, 0.5);
  CHECK(ok.centers == std::vector<int>{1});

  auto other = line_space({0.0, 0.5, 1.0});
  auto mu = make_measure(other, {0}, {1.0});
  CHECK_THROWS_AS(quantize(mu, ok), argument_error);
}

TEST_CASE("covering integrals on the unit square corners") {
  auto space = unit_square_corners();
  const auto t = greedy_traversal(*space);
  CHECK(excess_covering_integral(t, space->diameter()) ==
        doctest::Approx(3.0).epsilon(1e-12));
  CHECK(covering_integral_above(t, 0.25, 1.0) ==
        doctest::Approx(3.0).epsilon(1e-12));
  CHECK(covering_integral_above(t, 0.5, 1.0) ==
        doctest::Approx(2.0).epsilon(1e-12));

  auto lonely = line_space({0.4});
  const auto t1 = greedy_traversal(*lonely);
  CHECK(excess_covering_integral(t1, 1.0) == 0.0);
}

TEST_CASE("dyadic upper sums dominate the exact covering integral") {
  // The exact excess integral is the sum of insertion distances beyond the
  // first point; the dyadic upper sum must sit at or above it.
  CounterRng rng(35);
  for (int rep = 0; rep < 30; ++rep) {
    auto space = random_cube_space(rng, 18, 2);
    const auto t = greedy_traversal(*space);
    double exact = 0.0;
    for (std::size_t k = 1; k < t.radii.size(); ++k) exact += t.radii[k];
    const double upper = excess_covering_integral(t, space->diameter());
    CHECK(upper >= exact - 1e-12);
  }
}
