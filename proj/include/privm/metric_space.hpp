#pragma once

#include <memory>
#include <optional>
#include <vector>

namespace privm {

class FiniteMetricSpace;
using SpacePtr = std::shared_ptr<const FiniteMetricSpace>;

// Finite point set with an explicit metric. Two storage modes:
// coordinates in [0,1]^d under the max norm (the interval role is d = 1,
// the cube role is d >= 1), or a full pairwise distance matrix (generic
// role). Immutable after construction.
class FiniteMetricSpace {
 public:
  enum class Kind { kInterval, kCube, kGeneric };

  // Coordinate space. flat holds n*dim values, point i at [i*dim, (i+1)*dim).
  // Coordinates are validated to lie in [0,1]. ambient_diameter, when given,
  // is the diameter of the surrounding domain (1 for the full cube) and is
  // returned by diameter() in place of the max pairwise distance.
  static SpacePtr from_coords(std::vector<double> flat, int dim, Kind kind,
                              std::optional<double> ambient_diameter = 1.0);

  // Matrix space. flat holds n*n entries, row-major. The matrix must be
  // symmetric with a zero diagonal and nonnegative finite entries.
  static SpacePtr from_matrix(std::vector<double> flat, int n);

  int size() const { return n_; }
  int dim() const { return dim_; }
  Kind kind() const { return kind_; }
  bool has_coords() const { return !coords_.empty() || n_ == 0; }

  // Max-norm distance for coordinate spaces, table lookup otherwise.
  double dist(int i, int j) const;

  // Ambient diameter when one was supplied, else the max pairwise distance
  // (computed once at construction).
  double diameter() const { return diameter_; }

  double coord(int i, int k) const { return coords_[static_cast<std::size_t>(i) * dim_ + k]; }
  const std::vector<double>& flat_coords() const { return coords_; }

  // New space of the same kind with extra points appended after the current
  // ones. Existing indices keep their meaning. Coordinate spaces only.
  SpacePtr with_extra_points(const std::vector<double>& flat_extra) const;

 private:
  FiniteMetricSpace() = default;

  Kind kind_ = Kind::kGeneric;
  int n_ = 0;
  int dim_ = 0;
  std::vector<double> coords_;   // coordinate mode
  std::vector<double> matrix_;   // matrix mode
  std::optional<double> ambient_;
  double diameter_ = 0.0;
};

}  // namespace privm
