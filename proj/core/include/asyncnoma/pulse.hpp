#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace anoma {

enum class PulseKind { Rect, TruncatedSinc, RootRaisedCosine };

std::string_view to_string(PulseKind kind);
PulseKind pulse_kind_from_string(std::string_view name);

/// Real, even, time-limited transmit pulse with unit energy.
///
/// Rect occupies |t| <= T/2. The truncated kinds keep `side_lobes` symbol
/// intervals on each side of the main lobe (|t| <= side_lobes * T) and are
/// rescaled so that the truncated pulse has unit energy.
class Pulse {
 public:
  Pulse(PulseKind kind, double symbol_interval, double rolloff, int side_lobes);

  /// p(t); zero outside the truncation window.
  double operator()(double t) const;

  PulseKind kind() const { return kind_; }
  double symbol_interval() const { return symbol_interval_; }
  double rolloff() const { return rolloff_; }
  int side_lobes() const { return side_lobes_; }
  /// Total support length T_p; p vanishes for |t| > T_p / 2.
  double truncation_span() const;
  /// ISI order u = ceil(T_p / T).
  int isi_order() const;
  /// Factor applied to the closed-form pulse to restore unit energy.
  double energy_scale() const { return scale_; }

 private:
  double shape(double t) const;

  PulseKind kind_;
  double symbol_interval_;
  double rolloff_;
  int side_lobes_;
  double scale_ = 1.0;
};

Pulse make_pulse(PulseKind kind, double symbol_interval = 1.0, double rolloff = 0.5,
                 int side_lobes = 4);

/// Serialized form: {"kind": "rrc", "T": 1.0, "beta": 0.5, "side_lobes": 4}.
std::string to_json(const Pulse& pulse);
Pulse pulse_from_json(std::string_view text);

struct OverallPulseOptions {
  /// Quadrature and lookup step; <= 0 selects T / 1000.
  double grid_step = 0.0;
  /// Use quadrature even where a closed form exists (Rect).
  bool force_numeric = false;
};

/// g(t) = (p * p)(t), the pulse seen after matched filtering.
///
/// Rect uses the closed-form triangle. Other kinds tabulate g on a uniform
/// grid over [0, T_p] with composite Simpson quadrature and evaluate between
/// nodes by cubic Lagrange interpolation. Copies share the table.
class OverallPulse {
 public:
  explicit OverallPulse(const Pulse& pulse, OverallPulseOptions options = {});

  double operator()(double t) const;

  const Pulse& source() const { return source_; }
  double grid_step() const { return step_; }
  /// g vanishes for |t| > support().
  double support() const { return source_.truncation_span(); }
  double symbol_interval() const { return source_.symbol_interval(); }
  bool closed_form() const { return table_ == nullptr; }

 private:
  Pulse source_;
  double step_;
  std::shared_ptr<const std::vector<double>> table_;
};

double autocorrelation(const OverallPulse& g, double t);

/// Inter-user interference energy sum_i g(tau + iT)^2 over all taps in the support.
double iui(const OverallPulse& g, double tau);

/// G_rk = sum_{i=-u}^{u} g(iT + tau_r - tau_k)^2.
double interference_coefficient(const OverallPulse& g, double tau_r, double tau_k);

}  // namespace anoma
