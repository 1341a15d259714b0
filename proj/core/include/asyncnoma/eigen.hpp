#pragma once

#include <Eigen/Dense>

namespace anoma {

/// Symmetric eigendecomposition M = U diag(values) U^T.
/// Values are sorted descending; each eigenvector's first non-negligible
/// component is positive.
struct EigenDecomposition {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

struct JacobiOptions {
  /// Converged once the off-diagonal Frobenius norm drops below
  /// tolerance * max(1, ||M||_F).
  double tolerance = 1e-12;
  int max_sweeps = 100;
};

/// Cyclic Jacobi eigensolver. Throws ShapeError for non-square or
/// non-symmetric input and NumericalError if the sweeps do not converge.
EigenDecomposition eigh(const Eigen::MatrixXd& m, JacobiOptions options = {});

/// Ascending eigenvalues of a complex Hermitian matrix, computed through its
/// real symmetric embedding [[Re, -Im], [Im, Re]].
Eigen::VectorXd eigvalsh(const Eigen::MatrixXcd& m);

}  // namespace anoma
