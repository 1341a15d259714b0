#pragma once

#include <span>
#include <string>
#include <vector>

#include "asyncnoma/pulse.hpp"
#include "asyncnoma/regions.hpp"

namespace anoma {

struct SumRateResult {
  Method method = Method::PNoma;
  double total_power = 0.0;
  /// Optimal powers in the caller's user order.
  std::vector<double> optimal_split;
  double max_sum_rate = 0.0;
  /// Both (all) users receive strictly positive power.
  bool fairness_flag = false;
  /// Interference coefficient used; 1 for P-NOMA, 0 for T-NOMA.
  double g = 1.0;
  /// Set when every split on the budget face is optimal (P-NOMA, equal channels).
  bool any_split_optimal = false;
};

/// Two-user sum rate for a given split, users in caller order.
double sum_rate_2user(Method method, double sigma1, double sigma2, double g, double p1, double p2);

/// Closed-form optimum. Throws ParameterError for non-positive sigma or P and
/// for g outside (0, 1] with AP-NOMA.
SumRateResult optimize_2user(Method method, double sigma1, double sigma2, double g, double total_power);

/// True iff the optimizer powers both users: |sigma1 - sigma2| below 0 (P-NOMA),
/// (1 - g) P (AP-NOMA) or P (T-NOMA). Equal channels count as fair for P-NOMA.
bool fairness_threshold(Method method, double sigma1, double sigma2, double g, double total_power);

std::vector<SumRateResult> sweep_sumrate(Method method, double sigma1, double sigma2, double g,
                                         std::span<const double> power_grid);

/// Brute-force search over the full-budget simplex, any K >= 2. AP-NOMA also
/// searches every delay assignment.
SumRateResult optimize_grid(Method method, std::span<const UserChannel> users, const OverallPulse& g,
                            std::span<const double> slot_delays, double total_power, int resolution);

/// Columns P_linear, P_dB, method, P1_opt, P2_opt, sum_rate, fairness_flag.
std::string to_csv(const std::vector<SumRateResult>& curve);

}  // namespace anoma
