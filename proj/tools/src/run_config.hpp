#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <asyncnoma/errors.hpp>
#include <asyncnoma/fading.hpp>
#include <asyncnoma/regions.hpp>

namespace anoma::cli {

/// Thrown for unreadable or malformed scenario files; maps to exit code 2.
class ConfigError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

/// Scenario file contents. Every field except sigma and delays has a default.
struct RunConfig {
  double total_power = 10.0;
  std::vector<double> sigma;
  std::vector<double> delays;
  Pulse pulse = make_pulse(PulseKind::Rect);
  std::size_t block_length = 16;
  std::optional<int> grid_resolution;
  std::uint64_t seed = 1;
  FadingConfig fading;
  /// Sum-rate sweep range in linear units.
  double p_min = 0.1;
  double p_max = 100.0;
  int points = 101;

  Scenario scenario() const;
  /// Region sweep resolution: the configured value or 201 (K = 2) / 61 (K = 3).
  int resolution() const;
};

RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text);

/// ASYNC_NOMA_SEED when set and numeric.
std::optional<std::uint64_t> seed_from_env();

}  // namespace anoma::cli
