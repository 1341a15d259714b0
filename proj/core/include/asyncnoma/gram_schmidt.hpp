#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace anoma {

using InnerProduct = std::function<double(const Eigen::VectorXd&, const Eigen::VectorXd&)>;

/// Result of orthonormalizing v_1..v_n.
///
/// With e_j the orthonormal outputs, v'_n = v_n + sum_{j<n} coefficients(n, j) e_j
/// and e_n = v'_n / norms(n). coefficients is strictly lower triangular.
struct GramSchmidtResult {
  std::vector<Eigen::VectorXd> basis;
  Eigen::MatrixXd coefficients;
  Eigen::VectorXd norms;
};

/// Classical Gram-Schmidt with one re-orthogonalization pass, under an
/// arbitrary inner product. Throws DependenceError once a residual's squared
/// norm falls below dependence_tolerance times the input's squared norm.
GramSchmidtResult gram_schmidt(const std::vector<Eigen::VectorXd>& vectors, const InnerProduct& inner,
                               double dependence_tolerance = 1e-10);

/// Gram matrix <v_i, v_j>.
Eigen::MatrixXd gram_matrix(const std::vector<Eigen::VectorXd>& vectors, const InnerProduct& inner);

}  // namespace anoma
