#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "asyncnoma/regions.hpp"

namespace anoma {

struct FadingConfig {
  std::size_t realizations = 10000;
  double noise_variance = 0.1;
  /// Mean of |h|^2 (Rayleigh amplitude, exponential power).
  double channel_variance = 1.0;
  std::uint64_t seed = 1;
  /// 0 picks the hardware concurrency.
  unsigned workers = 0;
  /// Keep delay slots tied to user ids instead of instantaneous strength ranks.
  bool fixed_assignment = false;

  void validate() const;
};

/// |h_k|^2 for one realization. Each realization has its own generator seeded
/// from (seed, realization), so draws do not depend on scheduling.
std::vector<double> channel_gains(const FadingConfig& config, std::size_t realization, std::size_t users);

struct ErgodicRegion {
  /// Points carry powers and mean rates in user-id order.
  RateRegion region;
  /// Standard error of each mean rate, aligned with region.points.
  std::vector<std::vector<double>> standard_errors;
  FadingConfig config;
  unsigned workers_used = 1;
};

/// Averages each method's rate vector over fading realizations for every power
/// split (and, for AP-NOMA, every delay assignment). Users are re-ranked per
/// realization; sigma values in the template are ignored, only its user count,
/// power, pulse and delays are used. Output is bit-identical for any worker count.
ErgodicRegion ergodic_region(const Scenario& scenario, Method method, const FadingConfig& config,
                             int grid_resolution);

/// Region CSV with seed, realizations and workers in the metadata.
std::string to_csv(const ErgodicRegion& region);

}  // namespace anoma
