#include "asyncnoma/gram_schmidt.hpp"

#include <cmath>
#include <string>

#include "asyncnoma/errors.hpp"

namespace anoma {

GramSchmidtResult gram_schmidt(const std::vector<Eigen::VectorXd>& vectors, const InnerProduct& inner,
                               double dependence_tolerance) {
  const auto n = static_cast<Eigen::Index>(vectors.size());
  GramSchmidtResult out{{}, Eigen::MatrixXd::Zero(n, n), Eigen::VectorXd::Zero(n)};
  out.basis.reserve(vectors.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd& v = vectors[static_cast<std::size_t>(i)];
    Eigen::VectorXd residual = v;
    Eigen::VectorXd projection = Eigen::VectorXd::Zero(i);
    for (int pass = 0; pass < 2; ++pass) {
      Eigen::VectorXd c(i);
      for (Eigen::Index j = 0; j < i; ++j) c[j] = inner(residual, out.basis[static_cast<std::size_t>(j)]);
      for (Eigen::Index j = 0; j < i; ++j) residual -= c[j] * out.basis[static_cast<std::size_t>(j)];
      projection += c;
    }
    const double vv = inner(v, v);
    const double rr = inner(residual, residual);
    if (!(rr > dependence_tolerance * vv)) {
      throw DependenceError("vector " + std::to_string(i + 1) + " is linearly dependent on its predecessors");
    }
    const double norm = std::sqrt(rr);
    out.coefficients.row(i).head(i) = -projection.transpose();
    out.norms[i] = norm;
    out.basis.push_back(residual / norm);
  }
  return out;
}

Eigen::MatrixXd gram_matrix(const std::vector<Eigen::VectorXd>& vectors, const InnerProduct& inner) {
  const auto n = static_cast<Eigen::Index>(vectors.size());
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      g(i, j) = inner(vectors[static_cast<std::size_t>(i)], vectors[static_cast<std::size_t>(j)]);
      g(j, i) = g(i, j);
    }
  }
  return g;
}

}  // namespace anoma
