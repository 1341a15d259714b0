#include "asyncnoma/corr.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "asyncnoma/csv.hpp"
#include "asyncnoma/eigen.hpp"
#include "asyncnoma/errors.hpp"

namespace anoma {

DelayProfile::DelayProfile(std::vector<double> delays) : delays_(std::move(delays)) {
  if (delays_.empty()) throw DegenerateProfileError("delay profile needs at least one stream");
  for (std::size_t i = 0; i < delays_.size(); ++i) {
    if (!std::isfinite(delays_[i]) || delays_[i] < 0.0) {
      throw DegenerateProfileError("delays must be finite and non-negative");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(delays_[i] - delays_[j]) < 1e-12) {
        throw DegenerateProfileError("duplicate delays make R rank deficient");
      }
    }
  }
}

CorrBlockMatrix::CorrBlockMatrix(Eigen::MatrixXd dense, std::size_t users, std::size_t block_length, int band,
                                 std::vector<double> delays)
    : dense_(std::move(dense)),
      users_(users),
      block_length_(block_length),
      band_(band),
      delays_(std::move(delays)) {}

Eigen::MatrixXd CorrBlockMatrix::block(std::size_t l, std::size_t k) const {
  const auto n = static_cast<Eigen::Index>(block_length_);
  return dense_.block(static_cast<Eigen::Index>(l) * n, static_cast<Eigen::Index>(k) * n, n, n);
}

CorrBlockMatrix build_R(const OverallPulse& g, const DelayProfile& delays, std::size_t block_length) {
  if (block_length < 1) throw ParameterError("block length must be positive");
  const double T = g.symbol_interval();
  for (const double d : delays.values()) {
    if (d >= T) throw DegenerateProfileError("delays must lie in [0, T)");
  }
  const std::size_t K = delays.size();
  const auto N = static_cast<Eigen::Index>(block_length);
  Eigen::MatrixXd R(static_cast<Eigen::Index>(K) * N, static_cast<Eigen::Index>(K) * N);
  for (std::size_t l = 0; l < K; ++l) {
    for (std::size_t k = 0; k < K; ++k) {
      const double offset = delays[l] - delays[k];
      // One value per lag; the block is Toeplitz by construction.
      std::vector<double> lag(static_cast<std::size_t>(2 * N - 1));
      for (Eigen::Index d = -(N - 1); d <= N - 1; ++d) {
        lag[static_cast<std::size_t>(d + N - 1)] = g(static_cast<double>(d) * T + offset);
      }
      for (Eigen::Index m = 0; m < N; ++m) {
        for (Eigen::Index n = 0; n < N; ++n) {
          R(static_cast<Eigen::Index>(l) * N + m, static_cast<Eigen::Index>(k) * N + n) =
              lag[static_cast<std::size_t>(m - n + N - 1)];
        }
      }
    }
  }
  // g is even, so the (l,k) and (k,l) blocks mirror exactly; average away rounding anyway.
  R = 0.5 * (R + R.transpose()).eval();
  return CorrBlockMatrix(std::move(R), K, block_length, g.source().isi_order(),
                         std::vector<double>(delays.values().begin(), delays.values().end()));
}

GeneratingMatrix::GeneratingMatrix(const OverallPulse& g, const DelayProfile& delays)
    : users_(delays.size()), taps_(users_ * users_) {
  const double T = g.symbol_interval();
  const double reach = g.support();
  for (std::size_t l = 0; l < users_; ++l) {
    for (std::size_t k = 0; k < users_; ++k) {
      const double offset = delays[l] - delays[k];
      const auto lo = static_cast<int>(std::floor((-reach - offset) / T)) - 1;
      const auto hi = static_cast<int>(std::ceil((reach - offset) / T)) + 1;
      auto& taps = taps_[l * users_ + k];
      for (int j = lo; j <= hi; ++j) {
        const double t = static_cast<double>(j) * T + offset;
        if (std::abs(t) <= reach) {
          const double v = g(t);
          if (v != 0.0) taps.push_back({j, v});
        }
      }
    }
  }
}

Eigen::MatrixXcd GeneratingMatrix::operator()(double w) const {
  const auto K = static_cast<Eigen::Index>(users_);
  Eigen::MatrixXcd out(K, K);
  for (Eigen::Index l = 0; l < K; ++l) {
    for (Eigen::Index k = 0; k < K; ++k) {
      std::complex<double> acc = 0.0;
      for (const auto& tap : taps_[static_cast<std::size_t>(l * K + k)]) {
        acc += tap.value * std::polar(1.0, static_cast<double>(tap.lag) * w);
      }
      out(l, k) = acc;
    }
  }
  return 0.5 * (out + out.adjoint());
}

Eigen::VectorXd GeneratingMatrix::eigenvalues(double w) const { return eigvalsh((*this)(w)); }

SzegoLimits szego_extremes(const GeneratingMatrix& gen, int grid_size) {
  if (grid_size < 16) throw ParameterError("Szego grid needs at least 16 points");
  SzegoLimits out{-INFINITY, INFINITY};
  for (int m = 0; m < grid_size; ++m) {
    const double w = 2.0 * std::numbers::pi * m / grid_size;
    const Eigen::VectorXd ev = gen.eigenvalues(w);
    out.lambda_max = std::max(out.lambda_max, ev.maxCoeff());
    out.lambda_min = std::min(out.lambda_min, ev.minCoeff());
  }
  return out;
}

double szego_trace_average(const GeneratingMatrix& gen, int grid_size) {
  if (grid_size < 16) throw ParameterError("Szego grid needs at least 16 points");
  // Periodic trapezoid rule: plain average over the uniform grid.
  double acc = 0.0;
  for (int m = 0; m < grid_size; ++m) {
    acc += gen.eigenvalues(2.0 * std::numbers::pi * m / grid_size).sum();
  }
  return acc / grid_size;
}

double transmit_power(const CorrBlockMatrix& R, const Eigen::MatrixXd& Q) {
  const auto& r = R.dense();
  if (Q.rows() != r.rows() || Q.cols() != r.cols()) {
    throw ShapeError("covariance dimension does not match R");
  }
  // trace(RQ) = sum_ij R_ij Q_ji.
  return r.cwiseProduct(Q.transpose()).sum();
}

std::string to_csv(const CorrBlockMatrix& R) {
  CsvTable table;
  table.add_meta("K", std::to_string(R.users()));
  table.add_meta("N", std::to_string(R.block_length()));
  table.add_meta("u", std::to_string(R.band()));
  std::ostringstream d;
  for (std::size_t i = 0; i < R.delays().size(); ++i) d << (i ? " " : "") << format_number(R.delays()[i]);
  table.add_meta("delays", d.str());
  const auto& m = R.dense();
  for (Eigen::Index j = 0; j < m.cols(); ++j) table.header.push_back("c" + std::to_string(j));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::vector<std::string> row;
    row.reserve(static_cast<std::size_t>(m.cols()));
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(format_number(m(i, j)));
    table.rows.push_back(std::move(row));
  }
  return write_csv(table);
}

}  // namespace anoma
