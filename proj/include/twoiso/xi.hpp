#pragma once

// The family xi_n : [1, inf) -> [1, inf),
//
//   xi_n(x) = sqrt((1 + (n+1)(x^2-1)) / (1 + n(x^2-1))),
//
// is the weight sequence of every 2-isometric unilateral weighted shift with
// positive weights: such a shift has weights {xi_n(x)}_n for x = its first
// weight. All functions here are pure.

namespace twoiso {

/// Inputs in [1 - kUnitClamp, 1) are treated as exactly 1.
inline constexpr double kUnitClamp = 1e-12;

/// Validates an argument that must lie in [1, inf); clamps boundary noise.
/// Throws DomainError otherwise (including NaN).
double require_at_least_one(double x, const char* what);

/// xi_n(x), evaluated from the closed form.
double xi_eval(int n, double x);

/// One step of the recurrence xi_{n+1}(x) = sqrt((2 b^2 - 1) / b^2), b = xi_n(x).
double xi_next(double beta);

/// prod_{k<n} xi_k(x) = sqrt(1 + n(x^2-1)); the modulus of the n-th power
/// of the scalar shift S_[x] on its first basis vector.
double xi_cumulative(int n, double x);

}  // namespace twoiso
