#include "asyncnoma/sumrate.hpp"

#include <algorithm>
#include <cmath>

#include "asyncnoma/csv.hpp"
#include "asyncnoma/errors.hpp"

namespace anoma {
namespace {

void check_inputs(Method method, double s1, double s2, double g, double P) {
  if (!(s1 > 0.0) || !(s2 > 0.0) || !std::isfinite(s1) || !std::isfinite(s2)) {
    throw ParameterError("sigma must be positive");
  }
  if (!(P > 0.0) || !std::isfinite(P)) throw ParameterError("total power must be positive");
  if (method == Method::APNoma && !(g > 0.0 && g <= 1.0)) throw ParameterError("g must lie in (0, 1]");
}

double coefficient(Method method, double g) {
  switch (method) {
    case Method::PNoma: return 1.0;
    case Method::APNoma: return g;
    case Method::TNoma: return 0.0;
  }
  return 1.0;
}

// Sum rate with the strong user s (smaller sigma) decoded interference-free.
double ordered_sum(double gain, double ss, double sw, double ps, double pw) {
  return 0.5 * std::log2(1.0 + ps / ss) + 0.5 * std::log2(1.0 + pw / (gain * ps + sw));
}

}  // namespace

double sum_rate_2user(Method method, double sigma1, double sigma2, double g, double p1, double p2) {
  const double c = coefficient(method, g);
  if (sigma1 <= sigma2) return ordered_sum(c, sigma1, sigma2, p1, p2);
  return ordered_sum(c, sigma2, sigma1, p2, p1);
}

SumRateResult optimize_2user(Method method, double sigma1, double sigma2, double g, double total_power) {
  check_inputs(method, sigma1, sigma2, g, total_power);
  const double P = total_power;
  const bool first_strong = sigma1 <= sigma2;
  const double ss = first_strong ? sigma1 : sigma2;
  const double sw = first_strong ? sigma2 : sigma1;
  const double c = coefficient(method, g);

  SumRateResult out;
  out.method = method;
  out.total_power = P;
  out.g = c;

  double strong = P;
  if (c >= 1.0) {
    // Synchronous: the sum is fixed for equal channels, otherwise the strong user takes all.
    if (ss == sw) {
      strong = P / 2.0;
      out.any_split_optimal = true;
    }
  } else if (c <= 0.0) {
    strong = (P + sw - ss) / 2.0;
  } else {
    const double A = P * (sw - c * ss) + sw * (sw - ss);
    strong = (-sw + std::sqrt(sw * sw + c / (1.0 - c) * A)) / c;
  }
  strong = std::clamp(strong, 0.0, P);
  const double weak = P - strong;

  out.optimal_split = first_strong ? std::vector<double>{strong, weak} : std::vector<double>{weak, strong};
  out.max_sum_rate = ordered_sum(c, ss, sw, strong, weak);
  out.fairness_flag = fairness_threshold(method, sigma1, sigma2, g, P);
  return out;
}

bool fairness_threshold(Method method, double sigma1, double sigma2, double g, double total_power) {
  check_inputs(method, sigma1, sigma2, g, total_power);
  const double gap = std::abs(sigma1 - sigma2);
  switch (method) {
    case Method::PNoma: return gap == 0.0;
    case Method::APNoma: return g >= 1.0 ? gap == 0.0 : gap < (1.0 - g) * total_power;
    case Method::TNoma: return gap < total_power;
  }
  return false;
}

std::vector<SumRateResult> sweep_sumrate(Method method, double sigma1, double sigma2, double g,
                                         std::span<const double> power_grid) {
  std::vector<SumRateResult> out;
  out.reserve(power_grid.size());
  for (std::size_t i = 0; i < power_grid.size(); ++i) {
    if (i > 0 && !(power_grid[i] > power_grid[i - 1])) throw ParameterError("power grid must be ascending");
    out.push_back(optimize_2user(method, sigma1, sigma2, g, power_grid[i]));
  }
  return out;
}

SumRateResult optimize_grid(Method method, std::span<const UserChannel> users, const OverallPulse& g,
                            std::span<const double> slot_delays, double total_power, int resolution) {
  if (users.size() < 2) throw ParameterError("grid search needs at least two users");
  if (!(total_power > 0.0)) throw ParameterError("total power must be positive");
  const std::size_t K = users.size();
  const auto splits = simplex_grid(K, total_power, resolution);

  SumRateResult best;
  best.method = method;
  best.total_power = total_power;
  best.max_sum_rate = -1.0;
  std::vector<double> best_sorted;

  auto consider = [&](const std::vector<double>& p, const std::vector<double>& rates) {
    double s = 0.0;
    for (const double r : rates) s += r;
    if (s > best.max_sum_rate) {
      best.max_sum_rate = s;
      best_sorted = p;
    }
  };

  if (method == Method::APNoma) {
    for (const Assignment& psi : all_assignments(K)) {
      const std::vector<double> delays = psi.user_delays(slot_delays);
      for (const auto& p : splits) {
        consider(p, detail::apnoma_rates_with(users, p, detail::interference_matrix(g, delays, p, total_power)));
      }
    }
  } else {
    for (const auto& p : splits) {
      const auto a = PowerAllocation::per_user_powers(p, total_power);
      consider(p, method == Method::PNoma ? pnoma_rates(users, a) : tnoma_rates(users, a));
    }
  }

  best.optimal_split.assign(K, 0.0);
  for (std::size_t k = 0; k < K; ++k) {
    if (users[k].index >= K) throw ParameterError("user index out of range");
    best.optimal_split[users[k].index] = best_sorted[k];
  }
  best.fairness_flag = std::all_of(best_sorted.begin(), best_sorted.end(), [](double p) { return p > 0.0; });
  best.g = method == Method::TNoma ? 0.0 : 1.0;
  if (method == Method::APNoma && K == 2) best.g = interference_coefficient(g, slot_delays[0], slot_delays[1]);
  return best;
}

std::string to_csv(const std::vector<SumRateResult>& curve) {
  CsvTable t;
  t.header = {"P_linear", "P_dB", "method", "P1_opt", "P2_opt", "sum_rate", "fairness_flag"};
  for (const auto& r : curve) {
    if (r.optimal_split.size() < 2) throw ShapeError("sum-rate curve rows need two users");
    t.rows.push_back({format_number(r.total_power), format_number(10.0 * std::log10(r.total_power)),
                      std::string(to_string(r.method)), format_number(r.optimal_split[0]),
                      format_number(r.optimal_split[1]), format_number(r.max_sum_rate),
                      r.fairness_flag ? "1" : "0"});
  }
  return write_csv(t);
}

}  // namespace anoma
