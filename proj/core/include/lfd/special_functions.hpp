#pragma once

// Distribution tails built on the regularized incomplete gamma and beta
// functions (series and Lentz continued fractions).

namespace lfd::special {

/// P(a, x) = gamma(a, x) / Gamma(a), a > 0, x >= 0.
double regularized_gamma_p(double a, double x);
/// Q(a, x) = 1 - P(a, x), evaluated directly in the upper tail.
double regularized_gamma_q(double a, double x);
/// I_x(a, b), a, b > 0, 0 <= x <= 1.
double regularized_beta(double a, double b, double x);

double student_t_cdf(double t, double df);
/// P(|T| >= |t|).
double student_t_two_sided_p(double t, double df);
/// Inverse of student_t_cdf for p in (0, 1); absolute error well below 1e-10.
double student_t_quantile(double p, double df);

/// P(X >= x) for chi-square with k degrees of freedom.
double chi_square_sf(double x, double k);
/// P(F >= f) for the F distribution with (d1, d2) degrees of freedom.
double f_sf(double f, double d1, double d2);

}  // namespace lfd::special
