#include "privm/haar.hpp"

#include <bit>
#include <cmath>
#include <cstdint>

#include "privm/errors.hpp"

namespace privm {

namespace {

void check_index(int j, int n) {
  if (j < 0 || j >= n) {
    throw argument_error("basis index out of range");
  }
}

double l1_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += std::fabs(x);
  return s;
}

}  // namespace

int HaarSystem::level_of(int j) const {
  check_index(j, n_);
  if (j < 2) return 0;
  return std::bit_width(static_cast<unsigned>(j)) - 1;
}

double HaarSystem::amplitude(int j) const {
  const int l = level_of(j);
  return std::ldexp(1.0, l - L_);  // 2^l / n, exact
}

int HaarSystem::support_begin(int j) const {
  const int l = level_of(j);
  if (j < 2) return 0;
  const int width = n_ >> l;
  return (j - (1 << l)) * width;
}

int HaarSystem::support_end(int j) const {
  const int l = level_of(j);
  if (j < 2) return n_;
  return support_begin(j) + (n_ >> l);
}

double HaarSystem::value(int j, int t) const {
  check_index(j, n_);
  if (t < 0 || t >= n_) {
    throw argument_error("grid point out of range");
  }
  const int lo = support_begin(j);
  const int hi = support_end(j);
  if (t < lo || t >= hi) return 0.0;
  const double amp = amplitude(j);
  if (j == 0) return amp;
  const int mid = lo + (hi - lo) / 2;
  return t < mid ? amp : -amp;
}

std::vector<double> HaarSystem::function(int j) const {
  check_index(j, n_);
  std::vector<double> row(n_, 0.0);
  const int lo = support_begin(j);
  const int hi = support_end(j);
  const double amp = amplitude(j);
  if (j == 0) {
    for (int t = lo; t < hi; ++t) row[t] = amp;
    return row;
  }
  const int mid = lo + (hi - lo) / 2;
  for (int t = lo; t < mid; ++t) row[t] = amp;
  for (int t = mid; t < hi; ++t) row[t] = -amp;
  return row;
}

std::vector<std::vector<double>> HaarSystem::dense() const {
  if (L_ > 12) {
    throw resource_error("dense basis is limited to 2^12 points");
  }
  std::vector<std::vector<double>> rows;
  rows.reserve(n_);
  for (int j = 0; j < n_; ++j) rows.push_back(function(j));
  return rows;
}

std::vector<double> HaarSystem::decompose(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != n_) {
    throw argument_error("vector length must match the grid size");
  }
  // prefix[i] = sum of x[0..i).
  std::vector<double> prefix(n_ + 1, 0.0);
  for (int i = 0; i < n_; ++i) prefix[i + 1] = prefix[i] + x[i];

  std::vector<double> coef(n_, 0.0);
  coef[0] = prefix[n_];
  for (int j = 1; j < n_; ++j) {
    const int lo = support_begin(j);
    const int hi = support_end(j);
    const int mid = lo + (hi - lo) / 2;
    // (n / 2^l) * <psi_j, x> collapses to a first-half minus second-half sum.
    coef[j] = 2.0 * prefix[mid] - prefix[lo] - prefix[hi];
  }
  return coef;
}

std::vector<double> HaarSystem::synthesize(const std::vector<double>& coef) const {
  if (static_cast<int>(coef.size()) != n_) {
    throw argument_error("coefficient length must match the grid size");
  }
  std::vector<double> out(n_, 0.0);
  const double base = std::ldexp(1.0, -L_);  // 1/n
  for (int t = 0; t < n_; ++t) out[t] = coef[0] * base;
  for (int j = 1; j < n_; ++j) {
    const double c = coef[j];
    if (c == 0.0) continue;
    const int lo = support_begin(j);
    const int hi = support_end(j);
    const int mid = lo + (hi - lo) / 2;
    const double a = c * amplitude(j);
    for (int t = lo; t < mid; ++t) out[t] += a;
    for (int t = mid; t < hi; ++t) out[t] -= a;
  }
  return out;
}

double HaarSystem::potential_gap(const std::vector<double>& x,
                                 const std::vector<double>& y) const {
  const double lx = l1_norm(decompose(x));
  const double ly = l1_norm(decompose(y));
  return (ly - lx) / (L_ + 2.0);
}

HaarSystem build_haar(int L) {
  if (L < 0) {
    throw argument_error("level count must be nonnegative");
  }
  if (L > 24) {
    throw resource_error("grids beyond 2^24 points are refused");
  }
  HaarSystem h;
  h.L_ = L;
  h.n_ = 1 << L;
  return h;
}

std::vector<double> SuperregularNoise::scaled_increments() const {
  std::vector<double> u(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) u[i] = scale * z[i];
  return u;
}

SuperregularNoise sample_noise(int L, double alpha, CounterRng& rng) {
  if (!(alpha > 0.0)) {
    throw argument_error("alpha must be positive");
  }
  const HaarSystem h = build_haar(L);
  SuperregularNoise noise;
  noise.levels = L;
  noise.alpha = alpha;
  noise.scale = 2.0 / alpha;
  noise.coefficients.resize(h.size());
  const double sigma = L + 2.0;
  for (int j = 0; j < h.size(); ++j) {
    noise.coefficients[j] = rng.next_laplace(sigma);
  }
  noise.z = h.synthesize(noise.coefficients);
  return noise;
}

namespace {

std::vector<double> running_sums(const std::vector<double>& v, double factor) {
  std::vector<double> s(v.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    acc += factor * v[i];
    s[i] = acc;
  }
  return s;
}

}  // namespace

std::vector<double> partial_sums(const SuperregularNoise& noise) {
  return running_sums(noise.z, noise.scale);
}

std::vector<double> partial_sums_unscaled(const SuperregularNoise& noise) {
  return running_sums(noise.z, 1.0);
}

}  // namespace privm
