#pragma once

namespace betaflow {

/// ln Gamma(x) for x > 0 by a Lanczos rational approximation (g = 7, 9 terms).
/// Relative accuracy is a few ulp across [1e-3, 1e3].
double log_gamma(double x);

/// ln B(a,b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a+b), a, b > 0.
double log_beta(double a, double b);

/// ln Gamma_n(p) = n(n-1)/4 * ln(pi) + sum_i ln Gamma(p - (i-1)/2);
/// requires p > (n-1)/2 (Muirhead's multivariate gamma).
double log_multigamma(int n, double p);

/// ln B_n(p,q) = ln Gamma_n(p) + ln Gamma_n(q) - ln Gamma_n(p+q),
/// requires p, q > (n-1)/2.
double log_matrix_beta_const(int n, double p, double q);

/// Regularized incomplete beta I_x(a,b), evaluated by the modified Lentz
/// continued fraction with the symmetry switch at x = (a+1)/(a+b+2).
double reg_inc_beta(double x, double a, double b);

/// Regularized lower/upper incomplete gamma P(a,x) and Q(a,x) = 1 - P(a,x);
/// series expansion for x < a+1, continued fraction otherwise.
double reg_inc_gamma_p(double a, double x);
double reg_inc_gamma_q(double a, double x);

/// Upper tail of a chi-square law with `dof` degrees of freedom.
double chi2_sf(double x, double dof);

}  // namespace betaflow
