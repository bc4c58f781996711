#include "privm/metric_space.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "privm/errors.hpp"

namespace privm {

namespace {

void check_coords(const std::vector<double>& flat, int dim,
                  FiniteMetricSpace::Kind kind) {
  if (dim < 1) {
    throw argument_error("dimension must be at least 1");
  }
  if (kind == FiniteMetricSpace::Kind::kInterval && dim != 1) {
    throw argument_error("interval spaces are one-dimensional");
  }
  if (kind == FiniteMetricSpace::Kind::kGeneric) {
    throw argument_error("generic spaces take a distance matrix");
  }
  if (flat.size() % dim != 0) {
    throw argument_error("coordinate buffer length is not a multiple of dim");
  }
  for (std::size_t i = 0; i < flat.size(); ++i) {
    const double v = flat[i];
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
      throw argument_error("coordinate " + std::to_string(i) +
                           " lies outside [0,1]");
    }
  }
}

double max_pairwise(const FiniteMetricSpace& s) {
  double best = 0.0;
  for (int i = 0; i < s.size(); ++i) {
    for (int j = i + 1; j < s.size(); ++j) {
      best = std::max(best, s.dist(i, j));
    }
  }
  return best;
}

}  // namespace

double FiniteMetricSpace::dist(int i, int j) const {
  if (!matrix_.empty()) {
    return matrix_[static_cast<std::size_t>(i) * n_ + j];
  }
  const double* a = coords_.data() + static_cast<std::size_t>(i) * dim_;
  const double* b = coords_.data() + static_cast<std::size_t>(j) * dim_;
  double best = 0.0;
  for (int k = 0; k < dim_; ++k) {
    best = std::max(best, std::fabs(a[k] - b[k]));
  }
  return best;
}

SpacePtr FiniteMetricSpace::from_coords(std::vector<double> flat, int dim,
                                        Kind kind,
                                        std::optional<double> ambient_diameter) {
  check_coords(flat, dim, kind);
  auto s = std::shared_ptr<FiniteMetricSpace>(new FiniteMetricSpace());
  s->kind_ = kind;
  s->dim_ = dim;
  s->n_ = static_cast<int>(flat.size()) / dim;
  s->coords_ = std::move(flat);
  s->ambient_ = ambient_diameter;
  s->diameter_ = ambient_diameter ? *ambient_diameter : max_pairwise(*s);
  return s;
}

SpacePtr FiniteMetricSpace::from_matrix(std::vector<double> flat, int n) {
  if (n < 0 || flat.size() != static_cast<std::size_t>(n) * n) {
    throw argument_error("distance matrix must be n by n");
  }
  for (int i = 0; i < n; ++i) {
    const double d_ii = flat[static_cast<std::size_t>(i) * n + i];
    if (d_ii != 0.0) {
      throw argument_error("distance matrix diagonal must be zero");
    }
    for (int j = 0; j < n; ++j) {
      const double v = flat[static_cast<std::size_t>(i) * n + j];
      if (!std::isfinite(v) || v < 0.0) {
        throw argument_error("distances must be finite and nonnegative");
      }
      const double w = flat[static_cast<std::size_t>(j) * n + i];
      if (std::fabs(v - w) > 1e-12 * std::max(1.0, std::fabs(v))) {
        throw argument_error("distance matrix must be symmetric");
      }
    }
  }
  auto s = std::shared_ptr<FiniteMetricSpace>(new FiniteMetricSpace());
  s->kind_ = Kind::kGeneric;
  s->n_ = n;
  s->matrix_ = std::move(flat);
  s->diameter_ = max_pairwise(*s);
  return s;
}

SpacePtr FiniteMetricSpace::with_extra_points(
    const std::vector<double>& flat_extra) const {
  if (coords_.empty() && n_ > 0) {
    throw argument_error("matrix spaces cannot take extra points");
  }
  std::vector<double> flat = coords_;
  flat.insert(flat.end(), flat_extra.begin(), flat_extra.end());
  return from_coords(std::move(flat), dim_, kind_, ambient_);
}

}  // namespace privm
