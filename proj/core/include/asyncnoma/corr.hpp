#pragma once

#include <complex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "asyncnoma/pulse.hpp"

namespace anoma {

/// Per-stream symbol offsets tau_k, distinct and non-negative.
class DelayProfile {
 public:
  explicit DelayProfile(std::vector<double> delays);

  std::size_t size() const { return delays_.size(); }
  double operator[](std::size_t k) const { return delays_[k]; }
  std::span<const double> values() const { return delays_; }

 private:
  std::vector<double> delays_;
};

/// KN x KN matrix of matched-filter cross-correlations,
/// R[(l, m), (k, n)] = g((m - n) T + tau_l - tau_k), stored densely.
class CorrBlockMatrix {
 public:
  CorrBlockMatrix(Eigen::MatrixXd dense, std::size_t users, std::size_t block_length, int band,
                  std::vector<double> delays);

  std::size_t users() const { return users_; }
  std::size_t block_length() const { return block_length_; }
  /// Band order u: every block entry with |m - n| > u is zero.
  int band() const { return band_; }
  std::span<const double> delays() const { return delays_; }

  const Eigen::MatrixXd& dense() const { return dense_; }
  /// N x N Toeplitz block R_lk.
  Eigen::MatrixXd block(std::size_t l, std::size_t k) const;

 private:
  Eigen::MatrixXd dense_;
  std::size_t users_;
  std::size_t block_length_;
  int band_;
  std::vector<double> delays_;
};

/// Builds R for the given pulse, delays and block length. Throws
/// DegenerateProfileError when a delay falls outside [0, T).
CorrBlockMatrix build_R(const OverallPulse& g, const DelayProfile& delays, std::size_t block_length);

/// Symbol R(w) of the block-Toeplitz family: f_lk(w) = sum_j g(jT + tau_l - tau_k) e^{i j w}.
class GeneratingMatrix {
 public:
  GeneratingMatrix(const OverallPulse& g, const DelayProfile& delays);

  std::size_t users() const { return users_; }
  Eigen::MatrixXcd operator()(double w) const;
  /// Ascending eigenvalues of R(w).
  Eigen::VectorXd eigenvalues(double w) const;

 private:
  struct Tap {
    int lag;
    double value;
  };
  std::size_t users_;
  std::vector<std::vector<Tap>> taps_;  // row-major K x K
};

struct SzegoLimits {
  double lambda_max;
  double lambda_min;
};

/// Extremes of the eigenvalues of R(w) over a uniform grid on [0, 2 pi).
SzegoLimits szego_extremes(const GeneratingMatrix& gen, int grid_size = 256);

/// (1 / 2 pi) * integral of sum_j lambda_j(R(w)) dw by the trapezoid rule on
/// the same uniform grid; the Szego limit of trace(R_N) / N.
double szego_trace_average(const GeneratingMatrix& gen, int grid_size = 256);

/// trace(R Q). Throws ShapeError on dimension mismatch.
double transmit_power(const CorrBlockMatrix& R, const Eigen::MatrixXd& Q);

/// CSV dump: metadata (K, N, u, delays) then one row per matrix row.
std::string to_csv(const CorrBlockMatrix& R);

}  // namespace anoma
