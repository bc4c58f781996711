#include <cmath>
#include <vector>

#include "doctest.h"
#include "privm/errors.hpp"
#include "privm/haar.hpp"
#include "privm/rng.hpp"

using privm::build_haar;
using privm::CounterRng;
using privm::HaarSystem;
using privm::partial_sums;
using privm::sample_noise;
using privm::SuperregularNoise;

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double l1(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += std::fabs(x);
  return s;
}

std::vector<double> random_vector(int n, CounterRng& rng) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = 2.0 * rng.next_uniform() - 1.0;
  return x;
}

}  // namespace

TEST_CASE("degenerate grid holds a single constant function") {
  const HaarSystem h = build_haar(0);
  CHECK(h.size() == 1);
  CHECK(h.level_of(0) == 0);
  CHECK(h.value(0, 0) == 1.0);
  const auto coef = h.decompose({2.5});
  CHECK(coef[0] == 2.5);
  CHECK(h.synthesize(coef)[0] == 2.5);
}

TEST_CASE("level layout at eight points is (2, 2, 4)") {
  const HaarSystem h = build_haar(3);
  CHECK(h.size() == 8);
  std::vector<int> count(3, 0);
  for (int j = 0; j < 8; ++j) ++count[h.level_of(j)];
  CHECK(count[0] == 2);
  CHECK(count[1] == 2);
  CHECK(count[2] == 4);
  // Finest level occupies two-point blocks.
  CHECK(h.support_end(7) - h.support_begin(7) == 2);
  CHECK(h.support_begin(7) == 6);
}

TEST_CASE("rows are orthogonal and squared norms equal 2^level / n") {
  for (int L = 0; L <= 6; ++L) {
    const HaarSystem h = build_haar(L);
    const auto rows = h.dense();
    for (int i = 0; i < h.size(); ++i) {
      // All quantities are dyadic rationals, so the law holds exactly.
      CHECK(dot(rows[i], rows[i]) ==
            std::ldexp(1.0, h.level_of(i) - L));
      for (int j = i + 1; j < h.size(); ++j) {
        CHECK(std::fabs(dot(rows[i], rows[j])) < 1e-15);
      }
    }
  }
}

TEST_CASE("point indicator decomposes into L+1 signed unit coefficients") {
  const HaarSystem h = build_haar(3);
  std::vector<double> x(8, 0.0);
  x[5] = 1.0;
  const auto coef = h.decompose(x);
  const std::vector<double> expected = {1, -1, 0, 1, 0, 0, -1, 0};
  REQUIRE(coef.size() == expected.size());
  for (std::size_t j = 0; j < expected.size(); ++j) {
    CHECK(coef[j] == expected[j]);
  }
  int nonzero = 0;
  for (double c : coef) {
    if (c != 0.0) {
      ++nonzero;
      CHECK(std::fabs(c) == 1.0);
    }
  }
  CHECK(nonzero == h.levels() + 1);

  // Walk potential gap from the zero vector: ||coef||_1 / (L + 2).
  const std::vector<double> zero(8, 0.0);
  CHECK(h.potential_gap(zero, x) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("decompose and synthesize invert each other") {
  CounterRng rng(101);
  for (int L = 0; L <= 8; ++L) {
    const HaarSystem h = build_haar(L);
    const auto x = random_vector(h.size(), rng);
    const auto back = h.synthesize(h.decompose(x));
    for (int i = 0; i < h.size(); ++i) {
      CHECK(back[i] == doctest::Approx(x[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("transforms agree with dense inner products at small sizes") {
  CounterRng rng(202);
  for (int L = 1; L <= 6; ++L) {
    const HaarSystem h = build_haar(L);
    const auto rows = h.dense();
    const auto x = random_vector(h.size(), rng);
    const auto coef = h.decompose(x);
    for (int j = 0; j < h.size(); ++j) {
      const double w = static_cast<double>(h.size() >> h.level_of(j));
      CHECK(coef[j] == doctest::Approx(w * dot(rows[j], x)).epsilon(1e-10));
    }
    std::vector<double> direct(h.size(), 0.0);
    for (int j = 0; j < h.size(); ++j) {
      for (int t = 0; t < h.size(); ++t) direct[t] += coef[j] * rows[j][t];
    }
    const auto fast = h.synthesize(coef);
    for (int t = 0; t < h.size(); ++t) {
      CHECK(fast[t] == doctest::Approx(direct[t]).epsilon(1e-10));
    }
  }
}

TEST_CASE("coefficient l1 mass is at most (L+2) times the vector l1 mass") {
  CounterRng rng(303);
  for (int L = 1; L <= 8; ++L) {
    const HaarSystem h = build_haar(L);
    for (int rep = 0; rep < 200; ++rep) {
      const auto x = random_vector(h.size(), rng);
      CHECK(l1(h.decompose(x)) <= (L + 2.0) * l1(x) + 1e-9);
    }
  }
}

TEST_CASE("potential gap obeys the regularity bound on random pairs") {
  CounterRng rng(404);
  for (int L = 1; L <= 6; ++L) {
    const HaarSystem h = build_haar(L);
    for (int rep = 0; rep < 200; ++rep) {
      const auto x = random_vector(h.size(), rng);
      const auto y = random_vector(h.size(), rng);
      std::vector<double> diff(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - y[i];
      CHECK(std::fabs(h.potential_gap(x, y)) <= l1(diff) + 1e-9);
    }
  }
}

TEST_CASE("noise sampling replays under a fixed seed") {
  CounterRng a(55);
  CounterRng b(55);
  const SuperregularNoise na = sample_noise(6, 4.0, a);
  const SuperregularNoise nb = sample_noise(6, 4.0, b);
  REQUIRE(na.z.size() == 64);
  CHECK(na.scale == 0.5);
  for (std::size_t i = 0; i < na.z.size(); ++i) {
    CHECK(na.z[i] == nb.z[i]);
    CHECK(na.coefficients[i] == nb.coefficients[i]);
  }
}

TEST_CASE("every basis row above index zero sums to zero, so the walk ends at the constant coefficient") {
  CounterRng rng(66);
  const SuperregularNoise noise = sample_noise(7, 2.0, rng);
  double total = 0.0;
  for (double v : noise.z) total += v;
  CHECK(total == doctest::Approx(noise.coefficients[0]).epsilon(1e-9));
}

TEST_CASE("partial sums accumulate plainly, one increment per step") {
  CounterRng rng(77);
  const SuperregularNoise noise = sample_noise(5, 8.0, rng);
  const auto s = partial_sums(noise);
  const auto u = noise.scaled_increments();
  REQUIRE(s.size() == u.size());
  CHECK(s[0] == u[0]);
  for (std::size_t k = 1; k < s.size(); ++k) {
    CHECK(s[k] == s[k - 1] + u[k]);
  }
}

TEST_CASE("guards reject out-of-contract arguments") {
  CHECK_THROWS_AS(build_haar(-1), privm::argument_error);
  CHECK_THROWS_AS(build_haar(25), privm::resource_error);
  CHECK_THROWS_AS(build_haar(13).dense(), privm::resource_error);
  const HaarSystem h = build_haar(2);
  CHECK_THROWS_AS(h.decompose({1.0, 2.0}), privm::argument_error);
  CHECK_THROWS_AS(h.synthesize({1.0}), privm::argument_error);
  CHECK_THROWS_AS(h.value(4, 0), privm::argument_error);
  CounterRng rng(1);
  CHECK_THROWS_AS(sample_noise(3, 0.0, rng), privm::argument_error);
  CHECK_THROWS_AS(sample_noise(3, -1.0, rng), privm::argument_error);
}
