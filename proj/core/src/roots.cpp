#include "asyncnoma/roots.hpp"

#include <cmath>

#include "asyncnoma/errors.hpp"

namespace anoma {

std::vector<double> solve_quadratic(double a, double b, double c) {
  if (a == 0.0 && b == 0.0) {
    if (c == 0.0) throw ParameterError("all quadratic coefficients are zero");
    return {};
  }
  if (a == 0.0) return {-c / b};
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return {};
  if (disc == 0.0) return {-b / (2.0 * a)};
  // Cancellation-free pairing of the two roots.
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  double r1 = q / a;
  double r2 = c / q;
  if (r1 > r2) std::swap(r1, r2);
  return {r1, r2};
}

}  // namespace anoma
