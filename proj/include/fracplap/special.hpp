#pragma once

namespace fracplap {

/// Gamma function for x > 0, Lanczos approximation (g = 7, 9 terms).
/// Relative accuracy is better than 1e-13 on (0, 10] and stays
/// close to machine precision up to the double overflow threshold.
double gamma_fn(double x);

} // namespace fracplap
