#include "asyncnoma/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "asyncnoma/errors.hpp"
#include "quadrature.hpp"

namespace anoma {
namespace {

constexpr double kPi = std::numbers::pi;

// Unit-interval RRC impulse response (T = 1, not normalized for truncation).
double rrc_unit(double x, double beta) {
  if (std::abs(x) < 1e-12) return 1.0 - beta + 4.0 * beta / kPi;
  if (beta > 0.0 && std::abs(std::abs(x) - 1.0 / (4.0 * beta)) < 1e-10) {
    const double a = kPi / (4.0 * beta);
    return beta / std::numbers::sqrt2 *
           ((1.0 + 2.0 / kPi) * std::sin(a) + (1.0 - 2.0 / kPi) * std::cos(a));
  }
  const double num = std::sin(kPi * x * (1.0 - beta)) + 4.0 * beta * x * std::cos(kPi * x * (1.0 + beta));
  const double den = kPi * x * (1.0 - (4.0 * beta * x) * (4.0 * beta * x));
  return num / den;
}

double sinc_unit(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  return std::sin(kPi * x) / (kPi * x);
}

// Inclusive truncation test that tolerates grid nodes computed as -L + i*h.
bool inside(double t, double half_span) { return std::abs(t) <= half_span * (1.0 + 1e-12); }

}  // namespace

std::string_view to_string(PulseKind kind) {
  switch (kind) {
    case PulseKind::Rect: return "rect";
    case PulseKind::TruncatedSinc: return "sinc";
    case PulseKind::RootRaisedCosine: return "rrc";
  }
  return "unknown";
}

PulseKind pulse_kind_from_string(std::string_view name) {
  if (name == "rect") return PulseKind::Rect;
  if (name == "sinc") return PulseKind::TruncatedSinc;
  if (name == "rrc") return PulseKind::RootRaisedCosine;
  throw ParameterError("unknown pulse kind '" + std::string(name) + "' (expected rect, sinc or rrc)");
}

Pulse::Pulse(PulseKind kind, double symbol_interval, double rolloff, int side_lobes)
    : kind_(kind), symbol_interval_(symbol_interval), rolloff_(rolloff), side_lobes_(side_lobes) {
  if (!(symbol_interval > 0.0) || !std::isfinite(symbol_interval)) {
    throw ParameterError("symbol interval must be positive");
  }
  if (kind == PulseKind::Rect) {
    side_lobes_ = 0;
    rolloff_ = 0.0;
    scale_ = 1.0 / std::sqrt(symbol_interval);
    return;
  }
  if (side_lobes < 1) throw ParameterError("truncated pulses need at least one side lobe");
  if (kind == PulseKind::RootRaisedCosine) {
    if (!(rolloff >= 0.0 && rolloff <= 1.0)) throw ParameterError("rolloff must lie in [0, 1]");
  } else {
    rolloff_ = 0.0;
  }

  // Renormalize the truncated pulse with the same Simpson grid used for g.
  const double half = truncation_span() / 2.0;
  const long nodes = 2L * 1000L * side_lobes_;
  const double h = 2.0 * half / static_cast<double>(nodes);
  std::vector<double> sq(static_cast<std::size_t>(nodes) + 1);
  for (long i = 0; i <= nodes; ++i) {
    const double v = shape(-half + static_cast<double>(i) * h);
    sq[static_cast<std::size_t>(i)] = v * v;
  }
  scale_ = 1.0 / std::sqrt(detail::simpson(sq, h));
}

double Pulse::shape(double t) const {
  const double x = t / symbol_interval_;
  const double amp = 1.0 / std::sqrt(symbol_interval_);
  switch (kind_) {
    case PulseKind::Rect: return 1.0;
    case PulseKind::TruncatedSinc: return amp * sinc_unit(x);
    case PulseKind::RootRaisedCosine: return amp * rrc_unit(x, rolloff_);
  }
  return 0.0;
}

double Pulse::operator()(double t) const {
  if (!inside(t, truncation_span() / 2.0)) return 0.0;
  return scale_ * shape(t);
}

double Pulse::truncation_span() const {
  if (kind_ == PulseKind::Rect) return symbol_interval_;
  return 2.0 * side_lobes_ * symbol_interval_;
}

int Pulse::isi_order() const {
  return static_cast<int>(std::ceil(truncation_span() / symbol_interval_ - 1e-12));
}

Pulse make_pulse(PulseKind kind, double symbol_interval, double rolloff, int side_lobes) {
  return Pulse(kind, symbol_interval, rolloff, side_lobes);
}

std::string to_json(const Pulse& pulse) {
  nlohmann::ordered_json j;
  j["kind"] = std::string(to_string(pulse.kind()));
  j["T"] = pulse.symbol_interval();
  if (pulse.kind() == PulseKind::RootRaisedCosine) j["beta"] = pulse.rolloff();
  if (pulse.kind() != PulseKind::Rect) j["side_lobes"] = pulse.side_lobes();
  return j.dump();
}

Pulse pulse_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    const auto kind = pulse_kind_from_string(j.at("kind").get<std::string>());
    return make_pulse(kind, j.value("T", 1.0), j.value("beta", 0.5), j.value("side_lobes", 4));
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed pulse specification: ") + e.what());
  }
}

OverallPulse::OverallPulse(const Pulse& pulse, OverallPulseOptions options)
    : source_(pulse),
      step_(options.grid_step > 0.0 ? options.grid_step : pulse.symbol_interval() / 1000.0) {
  if (pulse.kind() == PulseKind::Rect && !options.force_numeric) return;

  // Nodes s_i = -L + i h with L = T_p / 2, snapped so the window edges are nodes.
  const double half = pulse.truncation_span() / 2.0;
  const auto m = static_cast<std::size_t>(std::max(1.0, std::round(half / step_)));
  step_ = half / static_cast<double>(m);
  const std::size_t nodes = 2 * m;
  std::vector<double> p(nodes + 1);
  for (std::size_t i = 0; i <= nodes; ++i) p[i] = pulse(-half + static_cast<double>(i) * step_);

  // g(j h) = integral over the overlap [-L + j h, L] of p(s) p(s - j h).
  auto table = std::make_shared<std::vector<double>>(nodes + 1, 0.0);
  for (std::size_t j = 0; j <= nodes; ++j) {
    const std::size_t intervals = nodes - j;
    double acc = 0.0;
    for (std::size_t i = j; i <= nodes; ++i) {
      acc += detail::simpson_weight(i - j, intervals, step_) * p[i] * p[i - j];
    }
    (*table)[j] = acc;
  }
  table_ = std::move(table);
}

double OverallPulse::operator()(double t) const {
  const double a = std::abs(t);
  if (a > support() * (1.0 + 1e-12)) return 0.0;
  if (!table_) {
    const double T = source_.symbol_interval();
    return std::max(0.0, 1.0 - a / T);
  }
  const auto& g = *table_;
  const auto last = static_cast<long>(g.size()) - 1;
  const double x = a / step_;
  const auto k = static_cast<long>(std::floor(x));
  const double f = x - static_cast<double>(k);
  auto node = [&](long idx) {
    if (idx < 0) idx = -idx;
    return idx > last ? 0.0 : g[static_cast<std::size_t>(idx)];
  };
  if (f == 0.0) return node(k);
  // Four-point Lagrange stencil on nodes k-1 .. k+2.
  const double y0 = node(k - 1), y1 = node(k), y2 = node(k + 1), y3 = node(k + 2);
  return -f * (f - 1.0) * (f - 2.0) / 6.0 * y0 + (f + 1.0) * (f - 1.0) * (f - 2.0) / 2.0 * y1 -
         (f + 1.0) * f * (f - 2.0) / 2.0 * y2 + (f + 1.0) * f * (f - 1.0) / 6.0 * y3;
}

double autocorrelation(const OverallPulse& g, double t) { return g(t); }

double iui(const OverallPulse& g, double tau) {
  const double T = g.symbol_interval();
  const double reach = g.support();
  const auto lo = static_cast<long>(std::floor((-reach - tau) / T)) - 1;
  const auto hi = static_cast<long>(std::ceil((reach - tau) / T)) + 1;
  double total = 0.0;
  for (long i = lo; i <= hi; ++i) {
    const double t = tau + static_cast<double>(i) * T;
    if (std::abs(t) <= reach) {
      const double v = g(t);
      total += v * v;
    }
  }
  return total;
}

double interference_coefficient(const OverallPulse& g, double tau_r, double tau_k) {
  const double T = g.symbol_interval();
  const int u = g.source().isi_order();
  // G depends on |tau_r - tau_k| only (g is even); summing over the
  // non-negative offset makes G_rk and G_kr bit-identical.
  const double offset = std::abs(tau_r - tau_k);
  double total = 0.0;
  for (int i = -u; i <= u; ++i) {
    const double v = g(static_cast<double>(i) * T + offset);
    total += v * v;
  }
  return total;
}

}  // namespace anoma
