#pragma once

// Scalar probability kernels used by the test statistics: regularized
// incomplete gamma/beta and the tail probabilities built on them.
// Target accuracy is 1e-10 relative for p in [1e-12, 1].

namespace ardl {

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double regularized_gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double regularized_gamma_q(double a, double x);

/// Regularized incomplete beta I_x(a, b), a, b > 0, x in [0, 1].
double regularized_beta(double a, double b, double x);

/// Upper-tail probability of a chi-square(k) variate at x.
double chi_square_sf(double x, double k);

/// Upper-tail probability of an F(d1, d2) variate at x.
double f_sf(double x, double d1, double d2);

/// Two-sided p-value of a Student-t statistic with nu degrees of freedom.
double student_t_two_sided(double t, double nu);

/// Standard normal CDF.
double normal_cdf(double z);

}  // namespace ardl
