#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "asyncnoma/gram_schmidt.hpp"

namespace anoma {

enum class InnerProductRule {
  /// h * sum f(t_j) g(t_j) on the grid t_j = j h, window endpoints included.
  SampledSum,
  /// Composite Simpson, split at every window edge.
  Simpson,
};

/// Shifted sincs p_n(t) = sqrt(2W) sinc(2W (t - c_n)), each truncated to its
/// own window [c_n - L/2, c_n + L/2] with L = N T by default.
struct TruncatedBasisSet {
  double bandwidth = 0.5;
  std::size_t block_length = 5;
  /// Empty means c_n = (n - 1) T for n = 1..N.
  std::vector<double> centers;
  /// Zero means N T.
  double window_length = 0.0;
  InnerProductRule rule = InnerProductRule::SampledSum;
  /// Quadrature step as a fraction of T.
  double step = 0.01;

  double symbol_interval() const { return 1.0 / (2.0 * bandwidth); }
  double resolved_window() const;
  std::vector<double> resolved_centers() const;
  void validate() const;
};

/// Gram matrix of the set under its windowed inner product.
Eigen::MatrixXd gram_matrix(const TruncatedBasisSet& basis);

struct BasisExtension {
  std::vector<double> centers;
  /// Gram matrix of the n + 1 inputs.
  Eigen::MatrixXd gram;
  GramSchmidtResult orthonormal;
  /// Gram matrix of the orthonormal output; identity up to rounding.
  Eigen::MatrixXd output_gram;
  /// Windowed L2 distance between each input and its expansion in the output set.
  Eigen::VectorXd reconstruction_error;
};

/// Appends sqrt(2W) sinc(2W (t - extra_shift)) on its own window and
/// orthonormalizes. Throws DependenceError if it lies in the span of the set.
BasisExtension extend_basis(const TruncatedBasisSet& basis, double extra_shift);

/// Rows: `gram` rows, then `coefficient` rows (c_nj and the norm), columns c1..c{n}.
std::string to_csv(const BasisExtension& ext);

}  // namespace anoma
