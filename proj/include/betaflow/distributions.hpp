#pragma once

#include <Eigen/Core>

#include "betaflow/rng.hpp"
#include "betaflow/types.hpp"

namespace betaflow {

using ArrayX3d = Eigen::Array<double, Eigen::Dynamic, 3>;

// --- univariate building blocks ------------------------------------------

/// Gamma(shape, 1) draw; Marsaglia-Tsang squeeze for shape >= 1, the
/// U^(1/shape) boost below that.
double sample_gamma(RngStream& rng, double shape);

/// B_I(a,b) draw as a ratio of two gamma draws; boundary hits are
/// resampled so the result is strictly inside (0,1).
double sample_beta(RngStream& rng, double a, double b);

/// log density of B_I(a,b) at x in (0,1).
double beta_logpdf(double x, double a, double b);

/// CDF of B_I(a,b).
double beta_cdf(double x, double a, double b);

/// Beta distribution of the second kind on (0, inf):
/// density x^(alpha-1) / (B(alpha,beta) (1+x)^(alpha+beta)).
double beta2_logpdf(double x, double alpha, double beta);
double beta2_cdf(double x, double alpha, double beta);

/// B_II(alpha,beta) draw as U/(1-U) with U ~ B_I(alpha,beta).
double sample_beta2(RngStream& rng, double alpha, double beta);

/// Dirichlet draw with concentration (p, r, q); components are strictly
/// inside (0,1) and sum to one after renormalization.
Eigen::Vector3d sample_dirichlet3(RngStream& rng, double p, double r, double q);

// --- trivariate distribution on H ----------------------------------------

/// log density of the trivariate law on H:
///   (p-1) ln(x1x2-x3) + (q-1) ln((1-x1)(1-x2)-x3) + (r-1) ln x3 - ln C,
/// with C = B(p+r,q+r) B(p,q+r) B(r,q).
double trivariate_h_logpdf(const HPoint& x, const TriShapeParams& params);

/// Draw from the trivariate law on H: product-beta triple pulled back
/// through the inverse of the first bijection.
HPoint sample_trivariate_h(RngStream& rng, const TriShapeParams& params);

// --- 2x2 matrix laws on D2 ------------------------------------------------

/// 2x2 matrix beta draw via the triangular construction X = T'T with
/// t11^2 ~ B_I(p,q), t22^2 ~ B_I(p-1/2,q) and a symmetrized off-diagonal.
Sym2 sample_matrix_beta2(RngStream& rng, const MatrixBetaParams& params);

/// log density (det x)^(p-3/2) (det(e-x))^(q-3/2) / B_2(p,q) on D2.
double matrix_beta2_logpdf(const Sym2& x, const MatrixBetaParams& params);

/// log density of the generalized 2x2 family
///   (det x)^(a-1) (det(e-x))^(b-1) |x12|^(2c-1)
///   / (B(a,b) B(a+b,c) B(a+c,b+c))
/// on D2. x12 = 0 with c != 1/2 yields a signed infinity per the sign of
/// 2c-1 (the singularity is integrable); c = 1/2 reduces to the matrix
/// beta with shapes (a+1/2, b+1/2).
double gen_matrix_logpdf(const Sym2& x, const GenMatrixParams& params);

/// Draw from the generalized family: block triple with
/// X11 ~ B_I(a+c,b+c), Schur ~ B_I(a,b+c), V^2 ~ B_I(c,b) and fair sign,
/// inverted through the closed-form triple inverse.
Sym2 sample_gen_matrix(RngStream& rng, const GenMatrixParams& params);

// --- batch samplers (rows are draws) --------------------------------------

Eigen::ArrayXd sample_beta_batch(RngStream& rng, double a, double b, Eigen::Index n);
Eigen::ArrayXd sample_beta2_batch(RngStream& rng, double alpha, double beta,
                                  Eigen::Index n);
ArrayX3d sample_dirichlet3_batch(RngStream& rng, double p, double r, double q,
                                 Eigen::Index n);
ArrayX3d sample_trivariate_h_batch(RngStream& rng, const TriShapeParams& params,
                                   Eigen::Index n);
ArrayX3d sample_matrix_beta2_batch(RngStream& rng, const MatrixBetaParams& params,
                                   Eigen::Index n);
ArrayX3d sample_gen_matrix_batch(RngStream& rng, const GenMatrixParams& params,
                                 Eigen::Index n);

}  // namespace betaflow
