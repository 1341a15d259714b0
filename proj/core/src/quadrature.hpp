#pragma once

#include <cstddef>
#include <span>

namespace anoma::detail {

/// Composite Simpson over equally spaced samples. An odd interval count
/// closes with the 3/8 rule on the last three intervals; a single interval
/// falls back to the trapezoid.
inline double simpson(std::span<const double> f, double h) {
  const std::size_t n = f.size() < 2 ? 0 : f.size() - 1;
  if (n == 0) return 0.0;
  if (n == 1) return 0.5 * h * (f[0] + f[1]);
  std::size_t even = (n % 2 == 0) ? n : n - 3;
  double sum = 0.0;
  if (even > 0) {
    double acc = f[0] + f[even];
    for (std::size_t i = 1; i < even; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * f[i];
    sum += acc * h / 3.0;
  }
  if (even != n) {
    sum += 3.0 * h / 8.0 * (f[even] + 3.0 * f[even + 1] + 3.0 * f[even + 2] + f[even + 3]);
  }
  return sum;
}

/// Simpson weight of node i in a rule over n intervals (same layout as simpson()).
inline double simpson_weight(std::size_t i, std::size_t n, double h) {
  if (n == 0) return 0.0;
  if (n == 1) return 0.5 * h;
  const std::size_t even = (n % 2 == 0) ? n : n - 3;
  double w = 0.0;
  if (even > 0 && i <= even) {
    if (i == 0 || i == even) w += h / 3.0;
    else w += (i % 2 == 1 ? 4.0 : 2.0) * h / 3.0;
  }
  if (even != n && i >= even) {
    constexpr double c[4] = {1.0, 3.0, 3.0, 1.0};
    w += 3.0 * h / 8.0 * c[i - even];
  }
  return w;
}

}  // namespace anoma::detail
