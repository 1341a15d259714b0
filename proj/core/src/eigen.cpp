#include "asyncnoma/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "asyncnoma/errors.hpp"

namespace anoma {
namespace {

double off_diagonal_norm(const Eigen::MatrixXd& a) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) s += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(s);
}

}  // namespace

EigenDecomposition eigh(const Eigen::MatrixXd& m, JacobiOptions options) {
  if (m.rows() != m.cols()) throw ShapeError("eigh needs a square matrix");
  const Eigen::Index n = m.rows();
  const double frob = m.norm();
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, frob)) {
    throw ShapeError("eigh needs a symmetric matrix");
  }

  Eigen::MatrixXd a = 0.5 * (m + m.transpose());
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double target = options.tolerance * std::max(1.0, frob);

  bool converged = off_diagonal_norm(a) < target;
  for (int sweep = 0; sweep < options.max_sweeps && !converged; ++sweep) {
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // A <- J^T A J with J the (p, q) rotation.
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    converged = off_diagonal_norm(a) < target;
  }
  if (!converged) throw NumericalError("Jacobi eigensolver did not converge");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i) > a(j, j); });

  EigenDecomposition out{Eigen::VectorXd(n), Eigen::MatrixXd(n, n)};
  for (Eigen::Index c = 0; c < n; ++c) {
    const Eigen::Index src = order[static_cast<std::size_t>(c)];
    out.values[c] = a(src, src);
    Eigen::VectorXd col = v.col(src);
    for (Eigen::Index k = 0; k < n; ++k) {
      if (std::abs(col[k]) > 1e-12) {
        if (col[k] < 0.0) col = -col;
        break;
      }
    }
    out.vectors.col(c) = col;
  }
  return out;
}

Eigen::VectorXd eigvalsh(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw ShapeError("eigvalsh needs a square matrix");
  const Eigen::Index n = m.rows();
  Eigen::MatrixXd embed(2 * n, 2 * n);
  embed.topLeftCorner(n, n) = m.real();
  embed.topRightCorner(n, n) = -m.imag();
  embed.bottomLeftCorner(n, n) = m.imag();
  embed.bottomRightCorner(n, n) = m.real();
  // Every eigenvalue of m appears twice in the embedding.
  const Eigen::VectorXd doubled = eigh(embed).values;
  Eigen::VectorXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) out[i] = doubled[2 * (n - 1 - i)];
  return out;
}

}  // namespace anoma
