#pragma once

#include <vector>

namespace anoma {

/// Real roots of a x^2 + b x + c in ascending order. Degenerates to the
/// linear case when a == 0; returns no roots when a == b == 0 or the
/// discriminant is negative. Throws ParameterError when all coefficients vanish.
std::vector<double> solve_quadratic(double a, double b, double c);

}  // namespace anoma
