#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace anoma {

struct ConstellationPoint {
  std::complex<double> value;
  int label;
};

/// Finite symbol alphabet with unique labels.
class Constellation {
 public:
  explicit Constellation(std::vector<ConstellationPoint> points);

  const std::vector<ConstellationPoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  /// Mean squared magnitude under uniform symbol selection.
  double power() const;
  std::complex<double> mean() const;
  /// Index of the closest point; ties go to the lowest label.
  std::size_t nearest(std::complex<double> y) const;
  double minimum_distance() const;

 private:
  std::vector<ConstellationPoint> points_;
};

Constellation bpsk(double power);
/// Points (+-1 +- j) / sqrt(2), scaled to the given power.
Constellation psk4(double power);
/// Rectangular 4 x 2 grid, I in {-3, -1, 1, 3}, Q in {-1, 1}, scaled to the given power.
Constellation qam8(double power);

struct Superposition {
  /// Composite label = coarse index * |fine| + fine index.
  Constellation combined;
  std::vector<std::pair<int, int>> components;
  /// Number of points that share a location with another point.
  int collisions = 0;
};

Superposition superpose(const Constellation& coarse, const Constellation& fine);

struct SicDecision {
  int coarse_label;
  int fine_label;
};

/// Nearest coarse point first, then the nearest fine point to the residual.
SicDecision sic_decode(std::complex<double> received, const Constellation& coarse, const Constellation& fine);

/// 4-PSK at alpha * P over 8-QAM at (1 - alpha) * P.
Superposition example_superposition(double alpha = 0.8, double total_power = 1.0);

/// Columns label, re, im (plus coarse and fine labels when given a superposition).
std::string to_csv(const Constellation& c);
std::string to_csv(const Superposition& s);

}  // namespace anoma
