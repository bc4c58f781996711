#pragma once

#include <vector>

#include "privm/rng.hpp"

namespace privm {

// Orthogonal step-function basis on the grid {0, ..., n-1} with n = 2^L.
//
// Index 0 is the constant function with value 1/n. Index 1 takes +1/n on the
// first half of the grid and -1/n on the second; both sit at level 0. For
// j >= 2 the function lives at level l = floor(log2 j) and occupies dyadic
// block j - 2^l of width n/2^l, taking +2^l/n on the block's first half and
// -2^l/n on its second. Squared norms follow the law ||psi_j||^2 = 2^l / n
// under the plain sum inner product, and distinct functions are orthogonal.
class HaarSystem {
 public:
  // Number of dyadic levels; the grid has n = 2^L points.
  int levels() const { return L_; }
  int size() const { return n_; }

  // Level of basis index j in {0, ..., max(L-1, 0)}.
  int level_of(int j) const;

  // Block magnitude 2^level / n (exactly representable, dyadic).
  double amplitude(int j) const;

  // Support [begin, end) of basis index j on the grid.
  int support_begin(int j) const;
  int support_end(int j) const;

  // Value of basis function j at grid point t.
  double value(int j, int t) const;

  // Dense row for one basis function; O(n) memory.
  std::vector<double> function(int j) const;

  // All n rows; guarded to small systems, intended for cross-checks.
  std::vector<std::vector<double>> dense() const;

  // Coefficients c with x = sum_j c_j psi_j. Computed in O(n) from prefix
  // sums: c_0 is the total sum of x, and c_j for j >= 1 is the sum of x over
  // the first half of psi_j's support minus the sum over the second half.
  std::vector<double> decompose(const std::vector<double>& x) const;

  // Evaluate sum_j coef_j psi_j on the grid in O(n log n).
  std::vector<double> synthesize(const std::vector<double>& coef) const;

  // (||decompose(y)||_1 - ||decompose(x)||_1) / (L + 2): the log-density gap
  // of the walk noise between offsets x and y. Bounded in magnitude by
  // ||x - y||_1.
  double potential_gap(const std::vector<double>& x,
                       const std::vector<double>& y) const;

 private:
  friend HaarSystem build_haar(int L);
  int L_ = 0;
  int n_ = 1;
};

// Build the basis for a grid of 2^L points. L ranges over [0, 24]; larger
// systems are refused to bound memory.
HaarSystem build_haar(int L);

// One draw of the multiscale noise vector Z: independent Laplace(L+2)
// coefficients over the basis, evaluated on the grid. The privatization
// scale 2/alpha is carried alongside; scaled increments are U_i = scale*z_i.
struct SuperregularNoise {
  int levels = 0;
  double alpha = 0.0;
  double scale = 0.0;
  std::vector<double> coefficients;  // one Laplace draw per basis index
  std::vector<double> z;             // unscaled values on the grid

  std::vector<double> scaled_increments() const;
};

// Draw the noise vector for a 2^L grid. Consumes exactly 2^L uniforms from
// rng, in index order, so runs replay under a fixed seed.
SuperregularNoise sample_noise(int L, double alpha, CounterRng& rng);

// Running sums S_k = U_1 + ... + U_k of the scaled increments, k = 1..n.
// S_k - S_{k-1} equals U_k exactly (plain left-to-right accumulation).
std::vector<double> partial_sums(const SuperregularNoise& noise);

// Running sums of the unscaled z values, for walk-growth diagnostics.
std::vector<double> partial_sums_unscaled(const SuperregularNoise& noise);

}  // namespace privm
