#include "asyncnoma/superposition.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "asyncnoma/csv.hpp"
#include "asyncnoma/errors.hpp"

namespace anoma {
namespace {

Constellation scaled(std::vector<std::complex<double>> raw, double power) {
  if (!(power >= 0.0) || !std::isfinite(power)) throw ParameterError("constellation power must be non-negative");
  double mean_sq = 0.0;
  for (const auto& z : raw) mean_sq += std::norm(z);
  mean_sq /= static_cast<double>(raw.size());
  const double s = std::sqrt(power / mean_sq);
  std::vector<ConstellationPoint> pts;
  for (std::size_t i = 0; i < raw.size(); ++i) pts.push_back({raw[i] * s, static_cast<int>(i)});
  return Constellation(std::move(pts));
}

}  // namespace

Constellation::Constellation(std::vector<ConstellationPoint> points) : points_(std::move(points)) {
  if (points_.empty()) throw ParameterError("constellation must not be empty");
  std::set<int> labels;
  for (const auto& p : points_) {
    if (!labels.insert(p.label).second) throw ParameterError("constellation labels must be unique");
    if (!std::isfinite(p.value.real()) || !std::isfinite(p.value.imag())) {
      throw ParameterError("constellation points must be finite");
    }
  }
}

double Constellation::power() const {
  double acc = 0.0;
  for (const auto& p : points_) acc += std::norm(p.value);
  return acc / static_cast<double>(points_.size());
}

std::complex<double> Constellation::mean() const {
  std::complex<double> acc = 0.0;
  for (const auto& p : points_) acc += p.value;
  return acc / static_cast<double>(points_.size());
}

std::size_t Constellation::nearest(std::complex<double> y) const {
  std::size_t best = 0;
  double best_d = std::norm(y - points_[0].value);
  for (std::size_t i = 1; i < points_.size(); ++i) {
    const double d = std::norm(y - points_[i].value);
    if (d < best_d || (d == best_d && points_[i].label < points_[best].label)) {
      best = i;
      best_d = d;
    }
  }
  return best;
}

double Constellation::minimum_distance() const {
  double best = INFINITY;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    for (std::size_t j = i + 1; j < points_.size(); ++j) {
      best = std::min(best, std::abs(points_[i].value - points_[j].value));
    }
  }
  return best;
}

Constellation bpsk(double power) { return scaled({{-1.0, 0.0}, {1.0, 0.0}}, power); }

Constellation psk4(double power) {
  return scaled({{1.0, 1.0}, {-1.0, 1.0}, {-1.0, -1.0}, {1.0, -1.0}}, power);
}

Constellation qam8(double power) {
  std::vector<std::complex<double>> raw;
  for (const double q : {1.0, -1.0}) {
    for (const double i : {-3.0, -1.0, 1.0, 3.0}) raw.emplace_back(i, q);
  }
  return scaled(std::move(raw), power);
}

Superposition superpose(const Constellation& coarse, const Constellation& fine) {
  std::vector<ConstellationPoint> pts;
  std::vector<std::pair<int, int>> parts;
  const auto nf = static_cast<int>(fine.size());
  for (std::size_t a = 0; a < coarse.size(); ++a) {
    for (std::size_t b = 0; b < fine.size(); ++b) {
      pts.push_back({coarse.points()[a].value + fine.points()[b].value, static_cast<int>(a) * nf + static_cast<int>(b)});
      parts.emplace_back(coarse.points()[a].label, fine.points()[b].label);
    }
  }
  double scale = 0.0;
  for (const auto& p : pts) scale = std::max(scale, std::abs(p.value));
  const double tol = 1e-12 * std::max(scale, 1.0);
  int collisions = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (i != j && std::abs(pts[i].value - pts[j].value) <= tol) {
        ++collisions;
        break;
      }
    }
  }
  return Superposition{Constellation(std::move(pts)), std::move(parts), collisions};
}

SicDecision sic_decode(std::complex<double> received, const Constellation& coarse, const Constellation& fine) {
  const auto& c = coarse.points()[coarse.nearest(received)];
  const auto& f = fine.points()[fine.nearest(received - c.value)];
  return {c.label, f.label};
}

Superposition example_superposition(double alpha, double total_power) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("alpha must lie in (0, 1)");
  return superpose(psk4(alpha * total_power), qam8((1.0 - alpha) * total_power));
}

std::string to_csv(const Constellation& c) {
  CsvTable t;
  t.add_meta("power", format_number(c.power()));
  t.header = {"label", "re", "im"};
  for (const auto& p : c.points()) {
    t.rows.push_back({std::to_string(p.label), format_number(p.value.real()), format_number(p.value.imag())});
  }
  return write_csv(t);
}

std::string to_csv(const Superposition& s) {
  CsvTable t;
  t.add_meta("power", format_number(s.combined.power()));
  t.add_meta("collisions", std::to_string(s.collisions));
  t.header = {"label", "re", "im", "coarse", "fine"};
  for (std::size_t i = 0; i < s.combined.size(); ++i) {
    const auto& p = s.combined.points()[i];
    t.rows.push_back({std::to_string(p.label), format_number(p.value.real()), format_number(p.value.imag()),
                      std::to_string(s.components[i].first), std::to_string(s.components[i].second)});
  }
  return write_csv(t);
}

}  // namespace anoma
