#pragma once

namespace periodica {

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
/// Power series for x < a + 1, Lentz continued fraction otherwise;
/// absolute error below 1e-10 over the chi-square range used here.
double regularized_gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double regularized_gamma_q(double a, double x);

/// Chi-square survival function: probability that a chi-square(dof) variate
/// exceeds x. Returns 1 for x <= 0.
double chi_square_sf(double x, int dof);

/// Kolmogorov asymptotic survival function
/// Q(lambda) = 2 * sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2), clamped to [0, 1].
double kolmogorov_sf(double lambda);

}  // namespace periodica
