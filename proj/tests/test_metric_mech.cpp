#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "doctest.h"
#include "privm/errors.hpp"
#include "privm/interval.hpp"
#include "privm/measure.hpp"
#include "privm/metric_mech.hpp"
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

SpacePtr cube_space(std::vector<double> flat, int dim) {
  return FiniteMetricSpace::from_coords(std::move(flat), dim,
                                        FiniteMetricSpace::Kind::kCube);
}

// Matrix space whose distances come from random planar points, so the
// triangle inequality holds exactly.
SpacePtr random_matrix_space(CounterRng& rng, int n) {
  std::vector<double> xs, ys;
  for (int i = 0; i < n; ++i) {
    xs.push_back(rng.next_uniform());
    ys.push_back(rng.next_uniform());
  }
  std::vector<double> table(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      table[static_cast<std::size_t>(i) * n + j] = std::max(
          std::fabs(xs[i] - xs[j]), std::fabs(ys[i] - ys[j]));
    }
  }
  return FiniteMetricSpace::from_matrix(std::move(table), n);
}

WeightedMeasure uniform_on(SpacePtr space) {
  WeightedMeasure mu;
  mu.space = std::move(space);
  const int n = mu.space->size();
  mu.support.resize(n);
  for (int i = 0; i < n; ++i) mu.support[i] = i;
  mu.weights.assign(n, 1.0 / n);
  return mu;
}

WeightedMeasure random_prob_on(SpacePtr space, CounterRng& rng) {
  WeightedMeasure mu = uniform_on(std::move(space));
  double total = 0.0;
  for (double& w : mu.weights) {
    w = -std::log(rng.next_uniform());
    total += w;
  }
  for (double& w : mu.weights) w /= total;
  return mu;
}

}  // namespace

TEST_CASE("resolution choice: interval grid, cube closed form, clamping") {
  auto interval = line_space({0.1, 0.9});
  CHECK(choose_delta(*interval, 7.9) == 1.0 / 7.0);
  CHECK(choose_delta(*interval, 2.0) == 0.5);

  auto square = cube_space({0.2, 0.2, 0.8, 0.8}, 2);
  const double d1024 = choose_delta(*square, 1024.0);
  const double closed =
      std::sqrt(std::pow(std::log(1024.0), 1.5) / 1024.0);
  CHECK(d1024 == doctest::Approx(closed).epsilon(1e-12));
  CHECK(d1024 == doctest::Approx(0.133496).epsilon(1e-4));
  CHECK(choose_delta(*square, 2.0) == 0.5);

  CHECK_THROWS_AS(choose_delta(*interval, 1.5), argument_error);
}

TEST_CASE("resolution choice on matrix spaces shrinks as alpha grows") {
  CounterRng rng(600);
  for (int rep = 0; rep < 10; ++rep) {
    auto space = random_matrix_space(rng, 4 + rep * 3);
    const double diam = space->diameter();
    double prev = diam * 2.0;
    for (double alpha : {2.0, 8.0, 32.0, 128.0, 512.0, 2048.0}) {
      const double d = choose_delta(*space, alpha);
      CHECK(d > 0.0);
      CHECK(d <= diam);
      CHECK(d <= prev);
      CHECK(d == choose_delta(*space, alpha));
      prev = d;
    }
  }
}

TEST_CASE("one-dimensional pipeline equals the interval mechanism exactly") {
  CounterRng data_rng(601);
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 3 + static_cast<int>(data_rng.next_u64() % 6);
    std::vector<double> coords;
    for (int i = 0; i < n; ++i) coords.push_back(data_rng.next_uniform());
    auto mu = random_prob_on(line_space(coords), data_rng);
    const double alpha = 2.0 + 40.0 * data_rng.next_uniform();

    const unsigned seed = 7000 + rep;
    CounterRng r1(seed);
    CounterRng r2(seed);
    const auto metric =
        private_measure_metric(mu, alpha, choose_delta(*mu.space, alpha), r1);
    const auto interval = private_measure_interval(mu, alpha, r2);
    CHECK(metric.output.weights == interval.output.weights);
    CHECK(metric.output.support == interval.output.support);
    CHECK(metric.net.centers == interval.net.centers);
    CHECK(metric.core.signed_intermediate.weights ==
          interval.signed_intermediate.weights);
    CHECK(metric.diagnostics.delta == 1.0 / std::floor(alpha));
  }
}

TEST_CASE("cube pipeline quantizes onto the analytic midpoint grid") {
  auto space = cube_space({0.1, 0.1, 0.6, 0.2, 0.2, 0.9, 0.9, 0.5, 0.5, 0.5},
                          2);
  auto mu = uniform_on(space);
  const double alpha = 40.0;
  const double delta = choose_delta(*space, alpha);
  CounterRng rng(602);
  const auto res = private_measure_metric(mu, alpha, delta, rng);

  REQUIRE(res.net.centers.size() == 4);  // 2x2 grid at this resolution
  const auto& aug = *res.net.space;
  const std::vector<std::vector<double>> expect = {
      {0.25, 0.25}, {0.25, 0.75}, {0.75, 0.25}, {0.75, 0.75}};
  for (int j = 0; j < 4; ++j) {
    CHECK(aug.coord(res.net.centers[j], 0) == expect[j][0]);
    CHECK(aug.coord(res.net.centers[j], 1) == expect[j][1]);
  }
  CHECK(res.output.is_probability(1e-9));
  CHECK(res.output.support == res.net.centers);
  for (double w : res.output.weights) CHECK(w >= 0.0);
  CHECK(res.diagnostics.net_size == 4);
  CHECK(res.diagnostics.tour_length > 0.0);
  CHECK(res.diagnostics.mst_length > 0.0);
  CHECK(res.diagnostics.tour_length <= 2.0 * res.diagnostics.mst_length + 1e-12);

  // Every augmented point sits within delta of its assigned center.
  for (int i = 0; i < aug.size(); ++i) {
    CHECK(aug.dist(i, res.net.center_of(i)) <= delta + 1e-12);
  }
}

TEST_CASE("cube cell assignment matches a full center scan") {
  // Boundary coordinates force exact distance ties in both axes.
  auto space = cube_space({0.5, 0.5, 0.5, 0.25, 0.25, 0.5, 0.0, 1.0, 1.0, 0.0,
                           0.37, 0.66},
                          2);
  auto mu = uniform_on(space);
  for (double delta : {0.5, 0.3, 0.2, 0.11}) {
    CounterRng rng(603);
    const auto res = private_measure_metric(mu, 10.0, delta, rng);
    const auto oracle =
        net_from_centers(res.net.space, res.net.centers, res.net.radius);
    CHECK(res.net.cell == oracle.cell);
  }
}

TEST_CASE("matrix-space pipeline outputs a probability on its net") {
  CounterRng data_rng(604);
  for (int rep = 0; rep < 15; ++rep) {
    const int n = 4 + static_cast<int>(data_rng.next_u64() % 6);
    auto space = random_matrix_space(data_rng, n);
    auto mu = random_prob_on(space, data_rng);
    const double alpha = 2.0 + 30.0 * data_rng.next_uniform();
    const double delta = choose_delta(*space, alpha);

    CounterRng r1(8000 + rep);
    CounterRng r2(8000 + rep);
    const auto res = private_measure_metric(mu, alpha, delta, r1);
    const auto res_again = private_measure_metric(mu, alpha, delta, r2);
    CHECK(res.output.weights == res_again.output.weights);

    CHECK(res.output.is_probability(1e-9));
    CHECK(res.output.support == res.net.centers);
    for (int c : res.net.centers) CHECK(c < space->size());
    for (double w : res.output.weights) CHECK(w >= 0.0);
    CHECK(res.diagnostics.tour_length <= res.diagnostics.tsp_bound + 1e-9);
    CHECK(res.diagnostics.accuracy_bound > 0.0);

    // Quantization onto the net moves mass at most delta.
    WeightedMeasure quantized;
    quantized.space = space;
    quantized.support = res.net.centers;
    quantized.weights.assign(res.net.centers.size(), 0.0);
    for (std::size_t a = 0; a < mu.support.size(); ++a) {
      quantized.weights[res.net.cell[mu.support[a]]] += mu.weights[a];
    }
    CHECK(wasserstein1_exact(quantized, mu) <= delta + 1e-9);
  }
}

TEST_CASE("matrix-space pipeline shifts noise density by at most alpha * TV") {
  CounterRng data_rng(605);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 5 + static_cast<int>(data_rng.next_u64() % 5);
    auto space = random_matrix_space(data_rng, n);
    auto mu = uniform_on(space);
    auto mu2 = mu;
    // A neighbor: one record's worth of mass moves between two points.
    const int from = static_cast<int>(data_rng.next_u64() % n);
    int to = static_cast<int>(data_rng.next_u64() % n);
    if (to == from) to = (to + 1) % n;
    mu2.weights[from] -= 1.0 / n;
    mu2.weights[to] += 1.0 / n;
    const double alpha = 2.0 + 20.0 * data_rng.next_uniform();
    const double delta = choose_delta(*space, alpha);

    CounterRng r1(9000 + rep);
    CounterRng r2(9000 + rep);
    const auto res1 = private_measure_metric(mu, alpha, delta, r1);
    const auto res2 = private_measure_metric(mu2, alpha, delta, r2);
    const auto inc = res1.core.noise.scaled_increments();
    REQUIRE(res2.core.noise.scaled_increments() == inc);
    REQUIRE(res1.core.signed_intermediate.weights.size() ==
            res2.core.signed_intermediate.weights.size());

    const int p = static_cast<int>(inc.size());
    double tv_quant = 0.0;
    std::vector<double> x(p), y(p);
    for (int t = 0; t < p; ++t) {
      const double q1 = res1.core.signed_intermediate.weights[t] - inc[t];
      const double q2 = res2.core.signed_intermediate.weights[t] - inc[t];
      tv_quant += std::fabs(q1 - q2);
      x[t] = 0.5 * alpha * inc[t];
      y[t] = 0.5 * alpha * (inc[t] + (q1 - q2));
    }
    tv_quant *= 0.5;
    CHECK(tv_quant <= tv_distance(mu, mu2) + 1e-9);

    int L = 0;
    while ((1 << L) < p) ++L;
    const auto hs = build_haar(L);
    const double gap = hs.potential_gap(x, y);
    CHECK(gap <= alpha * tv_quant + 1e-9);
    CHECK(gap >= -alpha * tv_quant - 1e-9);
  }
}

TEST_CASE("coarsest resolution collapses to a deterministic point mass") {
  CounterRng data_rng(606);
  auto space = random_matrix_space(data_rng, 6);
  auto mu = random_prob_on(space, data_rng);
  const double diam = space->diameter();
  CounterRng r1(42);
  const auto res = private_measure_metric(mu, 5.0, diam, r1);
  REQUIRE(res.net.centers.size() == 1);
  CHECK(res.net.centers[0] == 0);
  CHECK(res.output.weights == std::vector<double>{1.0});
  // No randomness is consumed on the degenerate path.
  CounterRng fresh(42);
  CHECK(r1.next_u64() == fresh.next_u64());
}

TEST_CASE("metric mechanism validates its inputs") {
  CounterRng rng(607);
  auto mu = uniform_on(line_space({0.1, 0.5, 0.9}));
  CHECK_THROWS_AS(private_measure_metric(mu, 1.5, 0.5, rng), argument_error);
  CHECK_THROWS_AS(private_measure_metric(mu, 4.0, 0.0, rng), argument_error);
  CHECK_THROWS_AS(private_measure_metric(mu, 4.0, 2.0, rng), argument_error);
  CHECK_THROWS_AS(private_measure_metric(mu, -1.0, 0.5, rng),
                  argument_error);
  auto bad = mu;
  bad.weights[0] += 0.5;
  CHECK_THROWS_AS(private_measure_metric(bad, 4.0, 0.25, rng),
                  argument_error);

  auto square = uniform_on(
      cube_space({0.1, 0.1, 0.9, 0.9}, 2));
  CHECK_THROWS_AS(private_measure_metric(square, 4.0, 1e-6, rng),
                  resource_error);
}
